from .report import (
    REPORT_VERSION,
    EvalReport,
    entropy_stats,
    evaluate_generator,
    load_report,
    render_pgm,
    write_report,
)

__all__ = [
    "REPORT_VERSION",
    "EvalReport",
    "entropy_stats",
    "evaluate_generator",
    "load_report",
    "render_pgm",
    "write_report",
]

"""Kernel selection: compiled Cython extension when available, pure Python
otherwise. Set GROOVEGAN_PURE=1 to force the fallback (the benchmark and the
equivalence tests use this)."""

import os

from . import pyloops

if os.environ.get("GROOVEGAN_PURE") == "1":
    impl = pyloops
    IMPL_NAME = "pure"
else:
    try:
        from . import _editdist as impl  # type: ignore[no-redef]

        IMPL_NAME = "compiled"
    except ImportError:
        impl = pyloops
        IMPL_NAME = "pure"

track_distance = impl.track_distance
pack_positions = impl.pack_positions
pair_distances = impl.pair_distances

__all__ = ["IMPL_NAME", "impl", "pyloops", "track_distance", "pack_positions", "pair_distances"]

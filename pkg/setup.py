"""Build script: compiles the optional Cython edit-distance kernel.

The package works without the extension (a pure-Python fallback is selected
at import time), so any failure here downgrades to a source-only install
instead of aborting.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "groovegan._kernels._editdist",
                ["src/groovegan/_kernels/_editdist.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-env dependent
    print(f"warning: building without compiled kernel ({exc})")

setup(ext_modules=ext_modules)

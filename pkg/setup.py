"""Build script: compiles the optional Cython kernel core.

The package works without the extension (a pure-Python kernel module is
selected at import time), so a failed compile only costs speed.  Set
RATLRC_PURE=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup


def extensions():
    if os.environ.get("RATLRC_PURE"):
        return []
    if not os.path.exists("src/ratlrc/_kernels/_core.pyx"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "ratlrc._kernels._core",
        ["src/ratlrc/_kernels/_core.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions())

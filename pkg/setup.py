"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure-Python big-int backend is
selected at import time); set MSTD_SKIP_EXT=1 to skip compilation.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("MSTD_SKIP_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "mstd.kernels._fastbits",
                    ["src/mstd/kernels/_fastbits.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": 3, "embedsignature": True},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

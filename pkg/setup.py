"""Builds the optional Cython kernel; the package falls back to numpy without it."""
import os

from setuptools import setup
from setuptools.extension import Extension

ext_modules = []
if not os.environ.get("SQUIDTRANSFER_NO_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "squidtransfer._ckernels",
                    ["src/squidtransfer/_ckernels.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3"],
                    libraries=["m"],
                )
            ],
            compiler_directives={
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "language_level": 3,
            },
        )

setup(ext_modules=ext_modules)

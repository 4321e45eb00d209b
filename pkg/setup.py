"""Builds the optional int64 search kernel; the package works without it."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("MONOID_FACTOR_NO_EXT", "") in ("", "0"):
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "monoid_factor._ckernel",
                    ["src/monoid_factor/_ckernel.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

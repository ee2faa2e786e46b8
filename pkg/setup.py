"""Build hook for the optional compiled kernels.

The package works without the extension (a numpy fallback is selected at
import time); set DOCLABELER_PURE=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("DOCLABELER_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "doclabeler.kernels._kernels",
                    ["src/doclabeler/kernels/_kernels.pyx"],
                    optional=True,
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

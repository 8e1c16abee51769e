"""Build script: compiles the optional tokenizer extension.

The package works without the extension (a pure-Python tokenizer with the
same contract is selected at import time), so the build must never fail
just because Cython or a C compiler is missing.  Set COHWATCH_PURE_PYTHON=1
to skip the extension entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("COHWATCH_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "cohwatch.cpp._tokenizer_cy",
                    ["src/cohwatch/cpp/_tokenizer_cy.pyx"],
                    optional=True,
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

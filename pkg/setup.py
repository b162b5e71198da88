"""Build script: compiles the optional simplex extension.

The package works without the extension (a pure NumPy kernel is selected at
import time), so a failed compile downgrades to a source-only install instead
of aborting.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/honeyx/_simplex_cy.pyx",
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
    # -ffp-contract=off keeps the compiled kernel bit-identical to the NumPy
    # fallback (no FMA contraction).
    for ext in ext_modules:
        ext.extra_compile_args = ["-O2", "-ffp-contract=off"]
except Exception as exc:  # pragma: no cover - build-env dependent
    sys.stderr.write(f"honeyx: skipping compiled kernel ({exc})\n")
    ext_modules = []

setup(ext_modules=ext_modules)

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("FRACCHERN_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("fracchern._poly_cy", ["src/fracchern/_poly_cy.pyx"])],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
            },
        )
    except ImportError:
        # Pure-Python kernel is a complete fallback; the extension is an
        # optional accelerator.
        ext_modules = []

setup(ext_modules=ext_modules)

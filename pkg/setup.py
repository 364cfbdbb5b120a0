import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("MKT_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("mkt._zpoly", ["src/mkt/_zpoly.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # Pure-Python fallback stays usable without Cython.
        ext_modules = []

setup(ext_modules=ext_modules)

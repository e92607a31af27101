import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CHROMARANK_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("chromarank._kernels_c", ["src/chromarank/_kernels_c.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: install runs pure-Python kernels only.
        ext_modules = []

setup(ext_modules=ext_modules)

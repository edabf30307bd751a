# Builds the optional Cython kernel.  If Cython or a C compiler is missing the
# package still installs and falls back to catlike._kernels_py at import time.
import os

from setuptools import setup

ext_modules = []
if os.environ.get("CATLIKE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("catlike._kernels", ["src/catlike/_kernels.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3",
                                 "boundscheck": False,
                                 "wraparound": False},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

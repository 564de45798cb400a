"""Builds the optional compiled kernels; the package falls back to pure
Python when Cython or a compiler is missing."""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:  # pure-Python install
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("cwcount._kernels", ["src/cwcount/_kernels.pyx"], extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )

setup(ext_modules=ext_modules)

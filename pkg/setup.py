from setuptools import setup
from Cython.Build import cythonize

setup(
    ext_modules=cythonize(
        ["src/cipherbench/_fast/*.pyx"],
        language_level=3,
    ),
)

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "spheretv._tv1d",
                ["src/spheretv/_tv1d.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # No Cython: the package still works through the pure-Python kernel.
    ext_modules = []

setup(ext_modules=ext_modules)

import numpy
from setuptools import setup
from setuptools.extension import Extension

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "dipcrystal.kernels._lattice_c",
                ["src/dipcrystal/kernels/_lattice_c.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # Pure-python fallback in dipcrystal.kernels is used when the
    # extension is unavailable.
    ext_modules = []

setup(ext_modules=ext_modules)

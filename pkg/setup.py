# Builds the optional compiled kernel extension.  If Cython or a C compiler
# is unavailable the install still succeeds and the package falls back to the
# pure-numpy kernels at import time.
import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "qcoprep.kernels._fastcore",
                ["src/qcoprep/kernels/_fastcore.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)

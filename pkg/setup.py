"""Build script: compiles the optional Cython kernels when Cython is available."""
from setuptools import setup

try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("prepatlas._kernels", ["src/prepatlas/_kernels.pyx"],
                   include_dirs=[np.get_include()], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("LIAISON_NO_EXT"):
    try:
        import gmpy2
        from Cython.Build import cythonize
    except ImportError:  # no Cython: install the pure Python kernels only
        pass
    else:
        # gmpy2 ships gmpy2.h (and the GMP headers it was built with) next to its module
        ext = Extension("liaison.kernels._ckernels", ["src/liaison/kernels/_ckernels.pyx"],
                        include_dirs=[os.path.dirname(gmpy2.__file__)], libraries=["gmp"],
                        extra_compile_args=["-O2"], optional=True)
        ext_modules = cythonize([ext], compiler_directives={"language_level": "3"})

setup(ext_modules=ext_modules)

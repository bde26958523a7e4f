import os

from setuptools import Extension, setup

# F1FORGE_NO_EXT=1 installs the pure-Python kernels only.
ext_modules = []
if not os.environ.get("F1FORGE_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "f1forge._kernels",
                    ["src/f1forge/_kernels.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)

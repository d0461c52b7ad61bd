from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "schubertcells._kernels_c",
        ["src/schubertcells/_kernels_c.pyx"],
        extra_compile_args=["-O3"],
    ),
]

setup(
    ext_modules=cythonize(extensions, language_level=3),
)

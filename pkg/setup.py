from setuptools import Extension, setup
from Cython.Build import cythonize

setup(
    ext_modules=cythonize(
        [
            Extension(
                "lgscan.kernels._core",
                ["src/lgscan/kernels/_core.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        language_level=3,
    )
)

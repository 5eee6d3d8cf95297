from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "isacrom._kernels._native",
                ["src/isacrom/_kernels/_native.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # The package falls back to the pure-numpy kernels at import time.
    ext_modules = []

setup(ext_modules=ext_modules)

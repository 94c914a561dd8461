from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "shidcone._fastdet",
                ["src/shidcone/_fastdet.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # The package works without the compiled kernel (pure-Python fallback),
    # just much slower for large determinant verifications.
    extensions = []

setup(ext_modules=extensions)

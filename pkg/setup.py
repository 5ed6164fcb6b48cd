from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # fallback kernels only
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "gnl._dense_ext",
                ["src/gnl/_dense_ext.pyx"],
                libraries=["gmp"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)

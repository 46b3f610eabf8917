from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # the pure-Python kernels are used instead
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("jordangeo._core", ["src/jordangeo/_core.pyx"], optional=True)],
        language_level=3,
    )

setup(ext_modules=ext_modules)

from setuptools import Extension, setup

# The compiled core is optional: if Cython or a C compiler is missing the
# package installs anyway and falls back to the NumPy implementation.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("fraclyap._core", ["src/fraclyap/_core.pyx"], optional=True)],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)

from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("jointsot._ckernels", ["src/jointsot/_ckernels.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)

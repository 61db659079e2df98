from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; the fallback kernel is used at runtime
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [Extension("teleres._jacobi", ["src/teleres/_jacobi.pyx"])],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )
else:
    extensions = []

setup(ext_modules=extensions)

"""Build script for the optional compiled kernel.

The package is pure Python plus one optional Cython extension,
zipchow._speedups, mirroring zipchow._poly_py.  If Cython or a C
compiler is missing the build degrades silently and the pure-Python
kernels are used at import time (see zipchow.kernels).
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Never fail the install over the speedup module."""

    def run(self):
        try:
            build_ext.run(self)
        except Exception as exc:
            print("warning: compiled kernels skipped (%s); "
                  "pure-Python fallback will be used" % exc)

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception as exc:
            print("warning: %s skipped (%s); pure-Python fallback will be used"
                  % (ext.name, exc))


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not found; building without compiled kernels")
        return []
    ext = Extension("zipchow._speedups", ["src/zipchow/_speedups.pyx"])
    return cythonize([ext], language_level=3)


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)

"""Builds the compiled scan kernel when a toolchain is available.

The package works without the extension (a numpy fallback is selected
at import time), so Cython or compiler problems only cost speed.  Any
failure here downgrades to a warning instead of failing the install.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._skip(exc)

    @staticmethod
    def _skip(exc):
        print(f"warning: compiled kernel build failed ({exc}); "
              "the pure-python backend will be used")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available; the pure-python backend will be used")
        return []
    return cythonize(
        [Extension("popmatch._kernels._scan", ["src/popmatch/_kernels/_scan.pyx"])],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})

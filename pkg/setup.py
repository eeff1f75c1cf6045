"""Build hooks for the optional compiled kernel.

The extension is a speedup only; when no compiler (or Cython/.c source)
is available the install proceeds and the package falls back to the
pure-Python kernels at import time.
"""

import os
from pathlib import Path

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing toolchain: fall back silently
            print(f"skipping compiled kernels: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"skipping compiled kernel {ext.name}: {exc}")


def extensions():
    from setuptools import Extension

    if os.environ.get("HPCOLOR_NO_EXT"):
        return []
    pyx = Path("src/hpcolor/_kernels.pyx")
    c = Path("src/hpcolor/_kernels.c")
    try:
        from Cython.Build import cythonize

        if pyx.exists():
            return cythonize(
                [Extension("hpcolor._kernels", [str(pyx)])], language_level=3
            )
    except ImportError:
        pass
    if c.exists():
        return [Extension("hpcolor._kernels", [str(c)])]
    return []


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})

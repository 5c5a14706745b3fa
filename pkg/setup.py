"""Build hook for the optional compiled kernels.

The package works without a C compiler: if Cython or the toolchain is
missing, the extension is skipped and the pure-Python kernels are used.
"""
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - toolchain specific
            print(f"warning: compiled kernels not built ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - toolchain specific
            print(f"warning: skipping {ext.name} ({exc})", file=sys.stderr)


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "icregion._kernels._ckernels",
        ["src/icregion/_kernels/_ckernels.pyx"],
        extra_compile_args=["-O2"],
    )
    return cythonize([ext], language_level=3, quiet=True)


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})

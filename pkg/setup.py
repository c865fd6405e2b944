"""Build the optional compiled kernels; the package works without them."""

import logging

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    cythonize = None


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover
            logging.warning("compiled kernels not built (%s); pure Python fallback in use", exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover
            logging.warning("failed to build %s (%s)", ext.name, exc)


ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "permgen._ckernels",
                ["src/permgen/_ckernels.pyx"],
                language="c++",
                extra_compile_args=["-O3", "-std=c++17"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})

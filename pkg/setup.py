"""Build glue for the optional compiled kernel.

The package is fully functional without the extension (a pure-Python
implementation of the same kernels is selected at import time), so any
failure to compile is downgraded to a warning.
"""

import os
import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            warnings.warn(f"skipping compiled kernels ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping {ext.name} ({exc}); using pure-Python fallback")


extensions = []
if os.path.exists("src/percoh/_kernels_c.pyx"):
    try:
        from Cython.Build import cythonize

        extensions = cythonize(
            [Extension("percoh._kernels_c", ["src/percoh/_kernels_c.pyx"])],
            language_level=3,
        )
    except ImportError:
        warnings.warn("Cython not available; building without compiled kernels")

setup(ext_modules=extensions, cmdclass={"build_ext": OptionalBuildExt})

"""Build script: compiles the optional canonical-labeling kernel.

The package is pure Python; if Cython or a C compiler is missing the
extension is skipped and phylodeck falls back to the interpreted kernel.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that degrades to a warning instead of failing the install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing entirely
            print(f"WARNING: skipping compiled kernel ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"WARNING: could not build {ext.name} ({exc}); using pure-Python fallback")


ext_modules = []
_PYX = os.path.join("src", "phylodeck", "_canonkernel.pyx")
if os.path.exists(_PYX):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("phylodeck._canonkernel", [_PYX])],
            language_level=3,
        )
    except ImportError:
        print("WARNING: Cython not available; installing without the compiled kernel")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})

"""Build script for the optional compiled RK4 kernel.

The extension is best-effort: if Cython or a C compiler is unavailable the
package installs anyway and falls back to the pure-Python kernel at import.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("spinorflow._kernel", ["src/spinorflow/_kernel.pyx"])],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)

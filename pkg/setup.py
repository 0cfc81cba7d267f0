"""Build script for the optional compiled simulation kernel.

The package is fully functional without the extension (a pure-Python
kernel is selected at import time), so a missing Cython toolchain only
costs speed, never correctness.
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "kleenesim._speedups",
                ["src/kleenesim/_speedups.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)

"""Build script for the optional compiled kernel core.

The package is pure Python except for ``ohpade._kernels._core``, a Cython
translation of the numerical kernels in ``ohpade._kernels._fallback``.  The
extension is marked optional: if Cython or a C compiler is unavailable the
install still succeeds and the package transparently uses the NumPy fallback.
"""

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "ohpade._kernels._core",
                ["src/ohpade/_kernels/_core.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)

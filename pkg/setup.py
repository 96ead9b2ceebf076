import os

import numpy as np
from setuptools import Extension, setup

# The compiled kernel is optional: filtral falls back to a numpy implementation
# when the extension is missing, so a failed build must not abort installation.
try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("FILTRAL_NO_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "filtral._kernels",
                ["src/filtral/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )

setup(ext_modules=ext_modules)

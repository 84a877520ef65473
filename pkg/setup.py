"""Build hook for the optional compiled LCS kernel.

The package works without the extension: greeksum_eval.kernels falls back to
the pure-Python implementation when the compiled module is missing.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "greeksum_eval.kernels._native",
                ["src/greeksum_eval/kernels/_native.pyx"],
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)

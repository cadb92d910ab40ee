import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("HELIX_LATTICE_NO_EXT", "") != "1" and os.path.exists(
    "src/helix_lattice/_kernels.pyx"
):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "helix_lattice._kernels",
                    ["src/helix_lattice/_kernels.pyx"],
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # No Cython available: install the pure-Python fallback only.
        ext_modules = []

setup(ext_modules=ext_modules)

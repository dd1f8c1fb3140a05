"""Build hook for the optional GMP-backed kernel extension.

Everything else is declared in pyproject.toml.  When Cython or libgmp is
unavailable the extension is skipped and the package runs on the
pure-Python kernels.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - build-time fallback
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "eulergompertz._kernels",
                ["src/eulergompertz/_kernels.pyx"],
                libraries=["gmp"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)

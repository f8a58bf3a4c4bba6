from setuptools import Extension, setup
from Cython.Build import cythonize

# Compiled kernels for the combinatorial hot loops (clique search, greedy
# restarts).  The package falls back to the pure-Python implementations in
# fogcache._kernels._pure when the extension is unavailable.
ext = Extension(
    "fogcache._kernels._fast",
    ["src/fogcache/_kernels/_fast.pyx"],
    language="c++",
    extra_compile_args=["-O3"],
)

setup(ext_modules=cythonize([ext], language_level="3"))

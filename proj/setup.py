from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

core = [
    "src/gf.cpp",
    "src/matlin.cpp",
    "src/mdscheck.cpp",
    "src/decomp.cpp",
    "src/enumerate.cpp",
    "src/counting.cpp",
]

ext = Pybind11Extension(
    "mdsforge._mdsforge",
    sources=["bindings/py_mdsforge.cpp"] + core,
    include_dirs=["include", "vendor"],
    cxx_std=20,
    extra_compile_args=["-O2"],
    extra_link_args=["-pthread"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})

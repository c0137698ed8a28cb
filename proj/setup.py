from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

sources = [
    "bindings/pymodule.cpp",
    "src/expr.cpp",
    "src/interval.cpp",
    "src/grid.cpp",
    "src/fif.cpp",
    "src/oscillation.cpp",
    "src/scaling.cpp",
    "src/dimension.cpp",
    "src/config.cpp",
    "src/parallel.cpp",
]

ext = Pybind11Extension(
    "fisdim._fisdim",
    sources,
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})

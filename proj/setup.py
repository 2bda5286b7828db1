from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "noisyvoter._core",
    sources=[
        "bindings/pymodule.cpp",
        "src/graph.cpp",
        "src/patterns.cpp",
        "src/dynamics.cpp",
        "src/dual.cpp",
        "src/spectral.cpp",
        "src/mixing.cpp",
    ],
    include_dirs=["include"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})

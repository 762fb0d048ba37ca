import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "dpht._core",
    sorted(glob.glob("src/*.cpp")) + ["src/python/bindings.cpp"],
    include_dirs=["include", "vendor", "/usr/include"],
    cxx_std=20,
)

setup(
    packages=["dpht"],
    package_dir={"dpht": "python/dpht"},
    ext_modules=[ext],
    cmdclass={"build_ext": build_ext},
)

// placeholder translation unit; replaced once the core library is complete
#include <pybind11/pybind11.h>

PYBIND11_MODULE(_core, m) { m.doc() = "placeholder"; }

#include <pybind11/pybind11.h>
PYBIND11_MODULE(_ermakov, m) { m.doc() = "stub"; }

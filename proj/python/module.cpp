// Placeholder; bindings are added once the analysis modules are in place.
#include <pybind11/pybind11.h>

PYBIND11_MODULE(_g2cal, m) { m.doc() = "g2cal python bindings"; }

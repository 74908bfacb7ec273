#include <pybind11/pybind11.h>

namespace py = pybind11;

PYBIND11_MODULE(_reflekt, m) {
  m.doc() = "exact quiver representation toolkit";
}

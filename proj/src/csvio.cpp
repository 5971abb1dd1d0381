#include "creutz/csvio.hpp"

#include <cstdio>

namespace creutz {

std::string g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string g12(std::complex<double> v) { return g12(v.real()) + "," + g12(v.imag()); }

}  // namespace creutz

#pragma once

#include <complex>
#include <string>

namespace creutz {

// Fixed 12-significant-digit formatting so output files are byte-stable.
std::string g12(double v);
std::string g12(std::complex<double> v);  // "re,im" pair

}  // namespace creutz

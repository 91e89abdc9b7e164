#include "heis/format.hpp"

#include <fmt/format.h>

namespace heis {

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // fold -0
  return fmt::format("{:.17g}", v);
}

std::string format_complex(std::complex<double> v) {
  return format_real(v.real()) + " " + format_real(v.imag());
}

}  // namespace heis

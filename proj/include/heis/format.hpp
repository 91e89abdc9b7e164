#pragma once

#include <complex>
#include <string>

namespace heis {

/// Fixed 17-significant-digit rendering; byte-stable for a given double.
std::string format_real(double v);

/// "re im" with format_real on each part.
std::string format_complex(std::complex<double> v);

}  // namespace heis

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace testing {

using Complex = std::complex<double>;

inline double rel(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }
inline double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

} // namespace testing

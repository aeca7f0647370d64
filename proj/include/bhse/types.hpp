// Core scalar types and error taxonomy shared by every module.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace bhse {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr cplx iu{0.0, 1.0};

// Relative floor below which sampled data is considered decayed at a boundary.
inline constexpr double decay_floor = 1e-10;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Domain violations: wrong halfplane, x<0 evaluation, invalid grids.
struct DomainError : Error {
  using Error::Error;
};

// Compatibility corner conditions violated beyond tolerance.
struct CompatibilityError : Error {
  using Error::Error;
};

// Malformed or out-of-contract configuration (CLI exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace bhse

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pitchcatch {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Angular frequency (rad/us) from an ordinary frequency in MHz.
inline constexpr double mhz(double f) { return kTwoPi * f; }

/// Ordinary frequency in MHz from an angular frequency (rad/us).
inline constexpr double to_mhz(double omega) { return omega / kTwoPi; }

/// Malformed input: bad parameters, bad config files, schema violations.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical breakdown: trace drift, synthesis blow-up, non-convergence.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pitchcatch

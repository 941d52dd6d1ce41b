#pragma once

#include <complex>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace floqa {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error {
    using Error::Error;
};
struct PropagationFailure : Error {
    using Error::Error;
};
struct NumericalFailure : Error {
    using Error::Error;
};
struct DegenerateSpectrum : Error {
    using Error::Error;
};
struct DegenerateQuasienergies : Error {
    using Error::Error;
};

/// Fold x into the zone (-width/2, width/2]; values landing exactly on the
/// lower edge map to +width/2.
inline double fold_to_zone(double x, double width) {
    double r = x - width * std::round(x / width);
    if (r <= -0.5 * width) r += width;
    if (r > 0.5 * width) r -= width;
    return r;
}

/// Distance between a and b on the circle of circumference `width`.
inline double zone_distance(double a, double b, double width) {
    double d = std::abs(fold_to_zone(a - b, width));
    return std::min(d, width - d);
}

/// Fixed 17-significant-digit formatting used for all CSV output.
std::string format_g17(double v);

/// FNV-1a 64-bit hash; stable across platforms, used for config hashes.
std::uint64_t fnv1a(std::string_view s);

std::string hex64(std::uint64_t v);

}  // namespace floqa

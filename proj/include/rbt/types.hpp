#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace rbt {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double eps = std::numeric_limits<double>::epsilon();
inline constexpr cplx I{0.0, 1.0};

// Evaluation cap for transform kernels and closed-form wavefunctions.
inline constexpr double r_max = 0.85;
inline constexpr double min_dist_to_one = 0.2;

struct DiskPoint {
    cplx z;

    double abs2() const { return std::norm(z); }
    bool inside() const { return std::abs(z) < 1.0; }
};

inline bool is_finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// True when x is real and equal to one of 0, -1, -2, ...
inline bool is_nonpositive_int(cplx x)
{
    return x.imag() == 0.0 && x.real() <= 0.0 && x.real() == std::round(x.real());
}

}  // namespace rbt

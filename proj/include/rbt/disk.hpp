#pragma once

#include <cmath>
#include <string>

#include "errors.hpp"
#include "hypergeom.hpp"
#include "orthopoly.hpp"
#include "types.hpp"

namespace rbt {

// Weight sigma and level m; requires sigma > 1 and 2m < sigma - 1.
struct LandauIndex {
    double sigma = 2.0;
    int m = 0;

    void validate() const
    {
        if (!(sigma > 1.0)) throw DomainError("LandauIndex: sigma must exceed 1");
        if (m < 0 || !(2.0 * m < sigma - 1.0))
            throw DomainError("LandauIndex: need 0 <= m < (sigma - 1)/2, got m = " + std::to_string(m));
    }
};

inline double landau_level(const LandauIndex& idx)
{
    idx.validate();
    return 4.0 * idx.m * (idx.sigma - 1.0 - idx.m);
}

inline double bergman_distance(cplx z, cplx w)
{
    if (!(std::abs(z) < 1.0) || !(std::abs(w) < 1.0)) throw DomainError("bergman_distance: point outside the disk");
    // sinh^2 d = cosh^2 d - 1 = |z - w|^2 / ((1-|z|^2)(1-|w|^2))
    return std::asinh(std::abs(z - w) / std::sqrt((1.0 - std::norm(z)) * (1.0 - std::norm(w))));
}

namespace detail {

inline void check_disk(cplx z, const char* what)
{
    if (!(std::abs(z) < 1.0)) throw DomainError(std::string(what) + ": point outside the unit disk");
}

}  // namespace detail

// Orthonormal basis Phi_k^{sigma,m} of the level-m eigenspace:
//   C_k (-1)^k zbar^{m-k} (1-r)^{-m} P_k^{(m-k, sigma-2m-1)}(1-2r),  r = |z|^2.
// For k > m the Jacobi factor is rewritten as (-r)^{k-m} times a degree-m polynomial.
inline cplx basis_phi(int k, const LandauIndex& idx, cplx z)
{
    idx.validate();
    detail::check_disk(z, "basis_phi");
    if (k < 0) throw DomainError("basis_phi: negative index");
    const double s = idx.sigma;
    const int m = idx.m;
    const double b = s - 2.0 * m - 1.0;
    const double r = std::norm(z);
    const double x = 1.0 - 2.0 * r;
    double ln_ck = 0.5 * (std::log(b) + ln_gamma(s - m) + ln_gamma(k + 1.0) - std::log(pi) - ln_gamma(m + 1.0) -
                          ln_gamma(s - 2.0 * m + k));
    const double damp = std::pow(1.0 - r, -double(m));
    if (k <= m) {
        double sign = (k % 2) ? -1.0 : 1.0;
        return sign * std::exp(ln_ck) * ipow(std::conj(z), m - k) * damp * jacobi_p(k, double(m - k), b, x);
    }
    double ln_ratio = ln_gamma(k + b + 1.0) + ln_gamma(m + 1.0) - ln_gamma(m + b + 1.0) - ln_gamma(k + 1.0);
    double sign = (m % 2) ? -1.0 : 1.0;
    return sign * std::exp(ln_ck + ln_ratio) * ipow(z, k - m) * damp * jacobi_p(m, double(k - m), b, x);
}

// Delta_sigma psi = -4(1-r)((1-r) d_z d_zbar psi - sigma zbar d_zbar psi) from a 3x3 stencil.
template <class F>
cplx maass_apply_fd(const LandauIndex& idx, F&& psi, cplx z, double h = 1e-4)
{
    if (!(1.0 - std::abs(z) > 2.0 * h)) throw DomainError("maass_apply_fd: point too close to the boundary");
    auto f = [&](int i, int j) { return cplx(psi(z + cplx(i * h, j * h))); };
    cplx c = f(0, 0);
    cplx e = f(1, 0), w = f(-1, 0), n = f(0, 1), s = f(0, -1);
    cplx ne = f(1, 1), nw = f(-1, 1), se = f(1, -1), sw = f(-1, -1);
    cplx lap = (4.0 * (e + w + n + s) + (ne + nw + se + sw) - 20.0 * c) / (6.0 * h * h);
    cplx dx = (e - w) / (2.0 * h), dy = (n - s) / (2.0 * h);
    cplx dzbar = 0.5 * (dx + I * dy);
    double r = std::norm(z);
    return -4.0 * (1.0 - r) * ((1.0 - r) * 0.25 * lap - idx.sigma * std::conj(z) * dzbar);
}

// Density of d mu_{sigma,m} with respect to Lebesgue measure.
inline double measure_density(const LandauIndex& idx, cplx z)
{
    idx.validate();
    detail::check_disk(z, "measure_density");
    double r = std::norm(z);
    return (idx.sigma - 2.0 * idx.m - 1.0) / (pi * (1.0 - r) * (1.0 - r));
}

}  // namespace rbt

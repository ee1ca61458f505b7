#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "disk.hpp"
#include "errors.hpp"
#include "hypergeom.hpp"
#include "oscillator.hpp"
#include "quadrature.hpp"
#include "types.hpp"

namespace rbt {

struct CoherentLabel {
    cplx z;
    ModelParams params;
};

inline double normalization(const LandauIndex& idx, cplx z)
{
    idx.validate();
    detail::check_disk(z, "normalization");
    return (idx.sigma - 2.0 * idx.m - 1.0) / (pi * std::pow(1.0 - std::norm(z), idx.sigma));
}

// <w|z> in closed form:
//   Gamma(sigma-m) / (m! (-1)^m Gamma(sigma-2m)) ((1-|z|^2)(1-|w|^2))^{sigma/2-m} |1 - z wbar|^{2m}
//   (1 - z wbar)^{-sigma} 2F1(-m, sigma-m; sigma-2m; (1-|z|^2)(1-|w|^2)/|1 - z wbar|^2)
inline cplx overlap(const LandauIndex& idx, cplx z, cplx w)
{
    idx.validate();
    detail::check_disk(z, "overlap");
    detail::check_disk(w, "overlap");
    const double s = idx.sigma;
    const int m = idx.m;
    const double pz = 1.0 - std::norm(z), pw = 1.0 - std::norm(w);
    const cplx u = 1.0 - z * std::conj(w);
    const double q = std::norm(u);
    double ln_pre = ln_gamma(s - m) - ln_gamma(m + 1.0) - ln_gamma(s - 2.0 * m);
    double sign = (m % 2) ? -1.0 : 1.0;
    cplx f = gauss_2f1(double(-m), s - m, s - 2.0 * m, pz * pw / q);
    return sign * std::exp(ln_pre + (0.5 * s - m) * std::log(pz * pw) + m * std::log(q)) * std::pow(u, -s) * f;
}

inline double cs_distance(const LandauIndex& idx, cplx z, cplx w)
{
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - overlap(idx, z, w).real())));
}

namespace detail {

inline void check_kernel_domain(cplx z, const char* what)
{
    if (!(std::abs(z) <= r_max + 1e-12))
        throw DomainError(std::string(what) + ": |z| exceeds the evaluation cap r_max = 0.85");
    if (!(std::abs(1.0 - z) >= min_dist_to_one))
        throw DomainError(std::string(what) + ": |1 - z| is below the cap 0.2");
}

}  // namespace detail

// Closed-form wavefunction of the coherent state |z> at xi:
//   sqrt(Gamma(2g+m)/m!) G(xi) / (Gamma(2g) Gamma(g+1/2)) (1-|z|^2)^g (1-zbar)^{-2g} ((z-1)/(1-zbar))^m
//   * F5(g+i xi, g-i xi; g+1/2; 2g+m; 2g | tau, nu),  tau = (1-|z|^2)/((1-z)(zbar-1)),  nu = 1/(1-z)
// where G(xi) is eigen_prefactor.
inline cplx cs_wavefunction(const CoherentLabel& label, double xi, const F5Options& o = {})
{
    const cplx z = label.z;
    detail::check_kernel_domain(z, "cs_wavefunction");
    if (!(xi >= 0.0)) throw DomainError("cs_wavefunction: xi must be non-negative");
    if (xi == 0.0) return 0.0;
    const double g = label.params.gamma();
    const int m = label.params.m;
    const double r = std::norm(z);
    const cplx zb = std::conj(z);
    F5Args a{cplx(g, xi), cplx(g, -xi), g + 0.5, 2.0 * g + m, 2.0 * g, (1.0 - r) / ((1.0 - z) * (zb - 1.0)),
             1.0 / (1.0 - z)};
    cplx f5 = kdf_f5(a, o);
    double ln_pre = 0.5 * (ln_gamma(2.0 * g + m) - ln_gamma(m + 1.0)) - ln_gamma(2.0 * g) - ln_gamma(g + 0.5) +
                    g * std::log(1.0 - r);
    cplx zpart = std::pow(1.0 - zb, -2.0 * g) * ipow((z - 1.0) / (1.0 - zb), m);
    return std::exp(ln_pre) * eigen_prefactor(label.params.osc, xi) * zpart * f5;
}

struct OracleResult {
    cplx value;
    double tail = 0.0;  // sum of |terms| for k = K+1 .. K+10
};

// N^{-1/2} sum_{k<=K} conj(Phi_k(z)) phi_k(xi).
inline OracleResult cs_wavefunction_oracle(const CoherentLabel& label, double xi, int K = 160, double tol = 1e-10)
{
    if (K < 0) throw DomainError("cs_wavefunction_oracle: K must be non-negative");
    const LandauIndex idx = label.params.landau();
    const double scale = 1.0 / std::sqrt(normalization(idx, label.z));
    auto phi = eigenfunctions(K + 10, label.params.osc, xi);
    OracleResult res;
    for (int k = 0; k <= K + 10; ++k) {
        cplx term = std::conj(basis_phi(k, idx, label.z)) * phi[k] * scale;
        if (k <= K)
            res.value += term;
        else
            res.tail += std::abs(term);
    }
    if (res.tail > tol)
        throw NonConvergence("cs_wavefunction_oracle: truncation tail exceeds tolerance at K = " + std::to_string(K));
    return res;
}

struct ResolutionReport {
    cplx value;           // int_{|w|<=R} <z'|w><w|z> d mu(w)
    cplx expected;        // <z'|z>
    double tail_bound;    // bound on the omitted |w| > R part
    double quad_error;
    double error() const { return std::abs(value - expected); }
};

// Reproducing property of the overlap kernel under d mu_{sigma,m}, disk cut at radius R.
inline ResolutionReport resolution_check(const LandauIndex& idx, cplx z, cplx zp, double R = 0.995, double tol = 1e-10)
{
    idx.validate();
    const double s = idx.sigma;
    const int m = idx.m;
    const double half = 0.5 * s - m;
    // The overlaps carry (1-|w|^2)^{s/2-m} each; move them into the weight with the measure's (1-|w|^2)^{-2}.
    auto g = [&](cplx w) {
        double pw = 1.0 - std::norm(w);
        double strip = std::pow(pw, -2.0 * half);
        return overlap(idx, w, z) * overlap(idx, zp, w) * strip * (s - 2.0 * m - 1.0) / pi;
    };
    DiskOptions o;
    o.radius = R;
    o.tol = tol;
    o.n_r = 32;
    o.n_phi = 32;
    QuadResult q = integrate_disk(g, 2.0 * half - 2.0, o);

    auto amp = [&](cplx p) {
        double coef = 0.0, t = 1.0;
        for (int j = 0; j <= m; ++j) {
            coef += std::abs(t);
            t *= (j - m) * (s - m + j) / ((s - 2.0 * m + j) * (j + 1.0));
        }
        double ln_pre = ln_gamma(s - m) - ln_gamma(m + 1.0) - ln_gamma(s - 2.0 * m);
        return std::exp(ln_pre) * std::pow(1.0 - std::norm(p), half) * std::pow(1.0 - std::abs(p), 2.0 * m - s) * coef;
    };
    ResolutionReport rep;
    rep.value = q.value;
    rep.quad_error = q.error;
    rep.expected = overlap(idx, zp, z);
    rep.tail_bound = amp(z) * amp(zp) * std::pow(1.0 - R * R, s - 2.0 * m - 1.0);
    return rep;
}

}  // namespace rbt

#pragma once

#include <cmath>
#include <vector>

#include "disk.hpp"
#include "errors.hpp"
#include "hypergeom.hpp"
#include "orthopoly.hpp"
#include "types.hpp"

namespace rbt {

inline double gamma_of_c(double c)
{
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("gamma_of_c: c must be positive");
    return 0.5 * (1.0 + std::sqrt(1.0 + 2.0 * c * c * c * c));
}

struct OscParams {
    double c = 1.0;

    OscParams() = default;
    explicit OscParams(double c_) : c(c_) { gamma_of_c(c); }

    double gamma() const { return gamma_of_c(c); }
};

struct ModelParams {
    OscParams osc;
    int m = 0;

    ModelParams() = default;
    ModelParams(OscParams o, int m_) : osc(o), m(m_)
    {
        if (m < 0) throw DomainError("ModelParams: m must be non-negative");
    }

    double gamma() const { return osc.gamma(); }
    double sigma() const { return 2.0 * (osc.gamma() + m); }
    LandauIndex landau() const { return {sigma(), m}; }
};

inline double energy(int k, const OscParams& osc) { return 2.0 * k + 2.0 * osc.gamma(); }

// xi-dependent factor shared by all eigenfunctions:
//   sqrt(2) i^gamma (c^{-4})^{i xi} Gamma(gamma + i xi)^2 / Gamma(i xi)
inline cplx eigen_prefactor(const OscParams& osc, double xi)
{
    const double g = osc.gamma();
    cplx phase = std::exp(I * (0.5 * pi * g - 4.0 * xi * std::log(osc.c)));
    return std::sqrt(2.0) * phase * std::exp(2.0 * ln_gamma(cplx(g, xi))) * rgamma(cplx(0.0, xi));
}

// phi_0 .. phi_K at xi.
inline std::vector<cplx> eigenfunctions(int K, const OscParams& osc, double xi)
{
    if (!(xi >= 0.0)) throw DomainError("eigenfunction: xi must be non-negative");
    std::vector<cplx> out(K + 1, cplx(0.0));
    if (xi == 0.0) return out;
    const double g = osc.gamma();
    cplx pre = eigen_prefactor(osc, xi);
    auto q = cdhahn_normalized(K, xi, g, g, 0.5);
    for (int k = 0; k <= K; ++k) out[k] = pre * q[k];
    return out;
}

inline cplx eigenfunction(int k, const OscParams& osc, double xi)
{
    if (k < 0) throw DomainError("eigenfunction: negative index");
    return eigenfunctions(k, osc, xi).back();
}

}  // namespace rbt

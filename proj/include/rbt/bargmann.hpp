#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "coherent.hpp"
#include "detail/parallel.hpp"
#include "disk.hpp"
#include "errors.hpp"
#include "hypergeom.hpp"
#include "oscillator.hpp"
#include "orthopoly.hpp"
#include "quadrature.hpp"
#include "types.hpp"

namespace rbt {

// Samples of f on a strictly increasing grid in [0, inf); cubic spline in between,
// zero outside the sampled range.
class SampledFunction {
public:
    SampledFunction(std::vector<double> grid, std::vector<cplx> values) : x_(std::move(grid)), y_(std::move(values))
    {
        if (x_.size() != y_.size()) throw DomainError("SampledFunction: grid and values differ in length");
        if (x_.size() < 2) throw DomainError("SampledFunction: need at least two samples");
        if (!(x_.front() >= 0.0)) throw DomainError("SampledFunction: grid must start at or above 0");
        for (std::size_t i = 1; i < x_.size(); ++i)
            if (!(x_[i] > x_[i - 1])) throw DomainError("SampledFunction: grid must be strictly increasing");
        for (auto v : y_)
            if (!is_finite(v)) throw DomainError("SampledFunction: non-finite value");
        build();
    }

    const std::vector<double>& grid() const { return x_; }
    const std::vector<cplx>& values() const { return y_; }

    cplx operator()(double t) const
    {
        if (t < x_.front() || t > x_.back()) return 0.0;
        std::size_t i = std::upper_bound(x_.begin(), x_.end(), t) - x_.begin();
        i = std::clamp<std::size_t>(i, 1, x_.size() - 1) - 1;
        double h = x_[i + 1] - x_[i];
        double a = (x_[i + 1] - t) / h, b = (t - x_[i]) / h;
        return a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * (h * h / 6.0);
    }

private:
    // Not-a-knot ends (third derivative continuous at x_1 and x_{n-2}); natural ends for n = 3.
    void build()
    {
        const std::size_t n = x_.size();
        m_.assign(n, 0.0);
        if (n < 3) return;
        std::vector<double> diag(n, 1.0), upper(n, 0.0), lower(n, 0.0);
        std::vector<cplx> rhs(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
            lower[i] = h0 / 6.0;
            diag[i] = (h0 + h1) / 3.0;
            upper[i] = h1 / 6.0;
            rhs[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
        }
        double r0 = 0.0, r1 = 0.0;
        if (n >= 4) {
            // m_0 = (1 + r0) m_1 - r0 m_2, and symmetrically at the right end
            r0 = (x_[1] - x_[0]) / (x_[2] - x_[1]);
            r1 = (x_[n - 1] - x_[n - 2]) / (x_[n - 2] - x_[n - 3]);
            diag[1] += lower[1] * (1.0 + r0);
            upper[1] -= lower[1] * r0;
            diag[n - 2] += upper[n - 2] * (1.0 + r1);
            lower[n - 2] -= upper[n - 2] * r1;
        }
        for (std::size_t i = 2; i + 1 < n; ++i) {
            double w = lower[i] / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        m_[n - 2] = rhs[n - 2] / diag[n - 2];
        for (std::size_t i = n - 2; i-- > 1;) m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
        if (n >= 4) {
            m_[0] = (1.0 + r0) * m_[1] - r0 * m_[2];
            m_[n - 1] = (1.0 + r1) * m_[n - 2] - r1 * m_[n - 3];
        }
    }

    std::vector<double> x_;
    std::vector<cplx> y_;
    std::vector<cplx> m_;
};

struct TransformPoint {
    cplx value;
    double error = 0.0;
};

struct TransformResult {
    std::vector<cplx> points;
    std::vector<cplx> values;
    std::vector<double> errors;  // per point
    ModelParams params;
    double quadrature_error = 0.0;  // max over points
};

// sqrt((sigma-1)/(pi Gamma(sigma))) (1-z)^{-sigma} int_0^inf exp(-(x/2)(1+z)/(1-z)) f(x) x^{(sigma-1)/2} dx
template <class F>
TransformPoint classical_bargmann(double sigma, F&& f, cplx z, HalflineOptions o = {})
{
    if (!(sigma > 1.0)) throw DomainError("classical_bargmann: sigma must exceed 1");
    if (!(std::abs(z) <= r_max + 1e-12)) throw DomainError("classical_bargmann: |z| exceeds the evaluation cap r_max = 0.85");
    const cplx s = 0.5 * (1.0 + z) / (1.0 - z);
    const double p = 0.5 * (sigma - 1.0);
    auto integrand = [&](double x) -> cplx {
        cplx v = f(x);
        if (v == 0.0 || x == 0.0) return 0.0;
        return std::exp(-s * x + p * std::log(x)) * v;
    };
    QuadResult q = integrate_halfline(integrand, o);
    double pre = std::sqrt((sigma - 1.0) / pi * std::exp(-ln_gamma(sigma)));
    cplx scale = pre * std::pow(1.0 - z, -sigma);
    return {scale * q.value, std::abs(scale) * q.error};
}

inline double default_xi_max(const OscParams& osc)
{
    double l = std::log(std::exp(1.0) * osc.c);
    return l > 0.0 ? std::max(40.0, 40.0 / std::min(1.0, l)) : 40.0;
}

// xi -> kernel of B_{c,m}[f](z) = int_0^inf K(xi) f(xi) d xi, i.e. N^{1/2} conj(phi_z(xi)):
//   pre(z) Gamma(g-i xi)^2 (c^{-4})^{-i xi} / Gamma(-i xi) F5(g-i xi, g+i xi; g+1/2; 2g+m; 2g | conj tau, conj nu)
//   pre(z) = sqrt(2g-1) sqrt(2 Gamma(m+2g)) (-i)^g / (sqrt(pi m!) (1-z)^{2g} Gamma(2g) Gamma(g+1/2))
//            ((zbar-1)/((1-z)(1-|z|^2)))^m
class TransformKernel {
public:
    TransformKernel(const ModelParams& p, cplx z) : p_(p), z_(z)
    {
        detail::check_kernel_domain(z, "relativistic_transform");
        const double g = p.gamma();
        const int m = p.m;
        const double r = std::norm(z);
        const cplx zb = std::conj(z);
        tau_bar_ = (1.0 - r) / ((1.0 - zb) * (z - 1.0));
        nu_bar_ = 1.0 / (1.0 - zb);
        double ln_pre = 0.5 * (std::log(2.0 * g - 1.0) + std::log(2.0) + ln_gamma(m + 2.0 * g) - std::log(pi) -
                               ln_gamma(m + 1.0)) -
                        ln_gamma(2.0 * g) - ln_gamma(g + 0.5);
        pre_ = std::exp(ln_pre) * std::exp(-0.5 * I * pi * g) * std::pow(1.0 - z, -2.0 * g) *
               ipow((zb - 1.0) / ((1.0 - z) * (1.0 - r)), m);
    }

    cplx operator()(double xi) const
    {
        if (xi == 0.0) return 0.0;
        const double g = p_.gamma();
        F5Args a{cplx(g, -xi), cplx(g, xi), g + 0.5, 2.0 * g + p_.m, 2.0 * g, tau_bar_, nu_bar_};
        cplx phase = std::exp(I * (4.0 * xi * std::log(p_.osc.c)));
        return pre_ * phase * std::exp(2.0 * ln_gamma(cplx(g, -xi))) * rgamma(cplx(0.0, -xi)) * kdf_f5_reduced(a);
    }

private:
    ModelParams p_;
    cplx z_;
    cplx tau_bar_, nu_bar_, pre_;
};

// m = 0 kernel:
//   sqrt((2g-1)/pi) (-i)^g sqrt(2) / ((1-z)^g Gamma(g+1/2) sqrt(Gamma(2g)))
//   (c^{-4})^{-i xi} Gamma(g-i xi)^2 / ((1-z)^{i xi} Gamma(-i xi)) 2F1(g-i xi, 1/2-i xi; g+1/2; z)
class TransformKernelM0 {
public:
    TransformKernelM0(const OscParams& osc, cplx z) : osc_(osc), z_(z)
    {
        detail::check_kernel_domain(z, "relativistic_transform_m0");
        const double g = osc.gamma();
        double ln_pre = 0.5 * (std::log(2.0 * g - 1.0) - std::log(pi) + std::log(2.0) - ln_gamma(2.0 * g)) -
                        ln_gamma(g + 0.5);
        pre_ = std::exp(ln_pre) * std::exp(-0.5 * I * pi * g) * std::pow(1.0 - z, -g);
        log1mz_ = std::log(1.0 - z);
    }

    cplx operator()(double xi) const
    {
        if (xi == 0.0) return 0.0;
        const double g = osc_.gamma();
        cplx phase = std::exp(I * xi * (4.0 * std::log(osc_.c)) - I * xi * log1mz_);
        return pre_ * phase * std::exp(2.0 * ln_gamma(cplx(g, -xi))) * rgamma(cplx(0.0, -xi)) *
               gauss_2f1(cplx(g, -xi), cplx(0.5, -xi), g + 0.5, z_);
    }

private:
    OscParams osc_;
    cplx z_;
    cplx pre_, log1mz_;
};

inline cplx transform_kernel(const ModelParams& p, cplx z, double xi) { return TransformKernel(p, z)(xi); }

struct TransformOptions {
    double tol = 1e-10;
    double decay_scale = 0.0;  // 0 means gamma / pi
    double xi_max = 0.0;       // 0 means default_xi_max(c)
    int order = 15;
};

namespace detail {

inline HalflineOptions halfline_for(const OscParams& osc, const TransformOptions& o)
{
    HalflineOptions h;
    h.tol = o.tol;
    h.decay_scale = o.decay_scale > 0.0 ? o.decay_scale : osc.gamma() / pi;
    h.max_length = o.xi_max > 0.0 ? o.xi_max : default_xi_max(osc);
    h.truncate = true;
    h.order = o.order;
    return h;
}

template <class K, class F>
TransformPoint integrate_kernel(const K& kernel, F& f, const HalflineOptions& h)
{
    auto integrand = [&](double xi) -> cplx {
        cplx v = f(xi);
        if (v == 0.0) return 0.0;
        return kernel(xi) * v;
    };
    QuadResult q = integrate_halfline(integrand, h);
    return {q.value, q.error};
}

}  // namespace detail

template <class F>
TransformPoint relativistic_transform(const ModelParams& p, F&& f, cplx z, const TransformOptions& o = {})
{
    TransformKernel kernel(p, z);
    return detail::integrate_kernel(kernel, f, detail::halfline_for(p.osc, o));
}

template <class F>
TransformPoint relativistic_transform_m0(const OscParams& osc, F&& f, cplx z, const TransformOptions& o = {})
{
    TransformKernelM0 kernel(osc, z);
    return detail::integrate_kernel(kernel, f, detail::halfline_for(osc, o));
}

// Transform over a list of points, evaluated in parallel; output in input order.
template <class F>
TransformResult transform_grid(const ModelParams& p, const F& f, const std::vector<cplx>& points,
                               const TransformOptions& o = {}, bool m0_kernel = false)
{
    if (m0_kernel && p.m != 0) throw DomainError("transform_grid: the m = 0 kernel needs m = 0");
    for (auto z : points) detail::check_kernel_domain(z, "relativistic_transform");
    TransformResult res;
    res.points = points;
    res.params = p;
    res.values.resize(points.size());
    res.errors.resize(points.size());
    detail::parallel_for(points.size(), [&](std::size_t i) {
        TransformPoint t = m0_kernel ? relativistic_transform_m0(p.osc, f, points[i], o)
                                     : relativistic_transform(p, f, points[i], o);
        res.values[i] = t.value;
        res.errors[i] = t.error;
    });
    for (double e : res.errors) res.quadrature_error = std::max(res.quadrature_error, e);
    return res;
}

struct IsometryOptions {
    int K = 12;  // f is expanded on phi_0 .. phi_K
    double tol = 1e-10;
    std::vector<cplx> probe_points{cplx(0.0), cplx(0.3, 0.0), cplx(0.2, 0.3)};
};

struct IsometryReport {
    double disk_norm2 = 0.0;
    double line_norm2 = 0.0;
    double gap = 0.0;            // relative gap between the two norms
    double pointwise_gap = 0.0;  // max |B[f] - sum c_k Phi_k| at the probe points
    std::vector<cplx> coeffs;
};

// Compares ||B[f]||^2 over the disk with ||f||^2 on the half-line. B[f] is taken from the
// expansion sum_k <f, phi_k> Phi_k; the probe points check that expansion against the
// transform quadrature.
template <class F>
IsometryReport isometry_check(const ModelParams& p, const F& f, const IsometryOptions& o = {})
{
    const LandauIndex idx = p.landau();
    const int K = o.K;
    HalflineOptions h = detail::halfline_for(p.osc, {o.tol});
    IsometryReport rep;
    rep.coeffs.resize(K + 1);
    detail::parallel_for(std::size_t(K + 1), [&](std::size_t k) {
        auto integrand = [&](double xi) -> cplx {
            cplx v = f(xi);
            return v == 0.0 ? cplx(0.0) : v * std::conj(eigenfunction(int(k), p.osc, xi));
        };
        rep.coeffs[k] = integrate_halfline(integrand, h).value;
    });
    rep.line_norm2 = integrate_halfline([&](double xi) { return cplx(std::norm(cplx(f(xi)))); }, h).value.real();

    auto expansion = [&](cplx z) {
        cplx s = 0.0;
        for (int k = 0; k <= K; ++k)
            if (rep.coeffs[k] != 0.0) s += rep.coeffs[k] * basis_phi(k, idx, z);
        return s;
    };
    const double strip = double(p.m);
    DiskOptions d;
    d.tol = o.tol;
    rep.disk_norm2 =
        integrate_disk([&](cplx z) { return std::norm(expansion(z) * std::pow(1.0 - std::norm(z), strip)); },
                       idx.sigma - 2.0 - 2.0 * p.m, d)
            .value.real();
    double scale = std::max(rep.disk_norm2, rep.line_norm2);
    rep.gap = scale > 0.0 ? std::abs(rep.disk_norm2 - rep.line_norm2) / scale : 0.0;

    std::vector<double> diffs(o.probe_points.size(), 0.0);
    detail::parallel_for(o.probe_points.size(), [&](std::size_t i) {
        cplx z = o.probe_points[i];
        diffs[i] = std::abs(relativistic_transform(p, f, z, {o.tol}).value - expansion(z));
    });
    for (double v : diffs) rep.pointwise_gap = std::max(rep.pointwise_gap, v);
    return rep;
}

}  // namespace rbt

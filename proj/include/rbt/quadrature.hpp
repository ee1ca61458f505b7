#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "hypergeom.hpp"
#include "types.hpp"

namespace rbt {

struct QuadDomain {
    enum Kind { interval, half_line, disk_radial };
    Kind kind = interval;
    double lo = -1.0, hi = 1.0;
};

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    QuadDomain domain;

    std::size_t size() const { return nodes.size(); }
};

struct QuadResult {
    cplx value = 0.0;
    double error = 0.0;
};

namespace detail {

// Implicit QL on a symmetric tridiagonal matrix (diag d, off-diagonal e[0..n-2]),
// tracking only the first component of each eigenvector.
inline void tridiag_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z)
{
    const int n = int(d.size());
    e.resize(n, 0.0);
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0, m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw NonConvergence("gauss rule: QL iteration did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i], b = c * e[i];
                    e[i + 1] = r = std::hypot(f, g);
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    d[i + 1] = g + (p = s * r);
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

// P_n^{(a,b)}(x) and P_{n-1}^{(a,b)}(x) by the three-term recurrence (real x).
inline std::pair<double, double> jacobi_pair(int n, double a, double b, double x)
{
    double p0 = 1.0;
    if (n == 0) return {p0, 0.0};
    double p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    for (int k = 2; k <= n; ++k) {
        double s = 2.0 * k + a + b;
        double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        double c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        double p2 = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    return {p1, p0};
}

inline double jacobi_deriv(int n, double a, double b, double x, double pn, double pn1)
{
    double s = 2.0 * n + a + b;
    return (n * ((a - b) - s * x) * pn + 2.0 * (n + a) * (n + b) * pn1) / (s * (1.0 - x * x));
}

inline QuadratureRule build_gauss_jacobi(int n, double a, double b)
{
    std::vector<double> d(n), e(n, 0.0), z(n, 0.0);
    const double ab = a + b;
    for (int k = 0; k < n; ++k) {
        double s = 2.0 * k + ab;
        d[k] = (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        double s = 2.0 * k + ab;
        double v = (k == 1) ? 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
                            : 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        e[k - 1] = std::sqrt(v);
    }
    z[0] = 1.0;
    tridiag_ql(d, e, z);

    const double ln_mu0 = (ab + 1.0) * std::log(2.0) + ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(ab + 2.0);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return d[i] < d[j]; });

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = d[order[i]];
        rule.weights[i] = std::exp(ln_mu0) * z[order[i]] * z[order[i]];
    }

    // Newton polish and weights from the derivative formula.
    const double ln_c = (ab + 1.0) * std::log(2.0) + ln_gamma(n + a + 1.0) + ln_gamma(n + b + 1.0) -
                        ln_gamma(n + ab + 1.0) - ln_gamma(n + 1.0);
    for (int i = 0; i < n; ++i) {
        double x = rule.nodes[i];
        double gap = std::min(i > 0 ? x - rule.nodes[i - 1] : 1.0 + x, i + 1 < n ? rule.nodes[i + 1] - x : 1.0 - x);
        double xn = x;
        for (int it = 0; it < 3; ++it) {
            auto [pn, pn1] = jacobi_pair(n, a, b, xn);
            double dp = jacobi_deriv(n, a, b, xn, pn, pn1);
            double step = pn / dp;
            if (!std::isfinite(step) || std::abs(xn - step - x) > 0.25 * gap) break;
            xn -= step;
            if (std::abs(step) <= 2.0 * eps * std::abs(xn)) break;
        }
        auto [pn, pn1] = jacobi_pair(n, a, b, xn);
        double dp = jacobi_deriv(n, a, b, xn, pn, pn1);
        double w = std::exp(ln_c) / ((1.0 - xn * xn) * dp * dp);
        if (std::isfinite(w) && w > 0.0) {
            rule.nodes[i] = xn;
            rule.weights[i] = w;
        }
    }
    if (a == b) {
        for (int i = 0; i < n / 2; ++i) {
            double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
            double w = 0.5 * (rule.weights[n - 1 - i] + rule.weights[i]);
            rule.nodes[i] = -x;
            rule.nodes[n - 1 - i] = x;
            rule.weights[i] = rule.weights[n - 1 - i] = w;
        }
        if (n % 2) rule.nodes[n / 2] = 0.0;
    }
    rule.domain = {QuadDomain::interval, -1.0, 1.0};
    return rule;
}

}  // namespace detail

// Gauss-Jacobi rule for (1-x)^alpha (1+x)^beta on (-1, 1). Rules are cached and never mutated.
inline const QuadratureRule& gauss_jacobi(int n, double alpha, double beta)
{
    if (!(alpha > -1.0) || !(beta > -1.0)) throw DomainError("gauss_jacobi: need alpha, beta > -1");
    if (n < 1 || n > 4096) throw DomainError("gauss_jacobi: need 1 <= n <= 4096");
    static std::mutex mu;
    static std::map<std::tuple<int, double, double>, std::unique_ptr<const QuadratureRule>> cache;
    auto key = std::make_tuple(n, alpha, beta);
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return *it->second;
    }
    auto rule = std::make_unique<const QuadratureRule>(detail::build_gauss_jacobi(n, alpha, beta));
    std::lock_guard lock(mu);
    auto [it, inserted] = cache.emplace(key, std::move(rule));
    return *it->second;
}

inline const QuadratureRule& gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

struct HalflineOptions {
    double decay_scale = 1.0;  // panel width
    double tol = 1e-10;
    double max_length = 0.0;   // 0 means 64 * decay_scale
    bool truncate = false;     // stop silently at max_length instead of throwing
    int order = 15;
    int max_depth = 40;
};

namespace detail {

template <class F>
cplx gl_panel(const QuadratureRule& rule, F& f, double a, double b)
{
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * cplx(f(c + h * rule.nodes[i]));
    return s * h;
}

template <class F>
cplx adaptive_panel(const QuadratureRule& rule, F& f, double a, double b, cplx whole, double tol_per_length, int depth,
                    double& err)
{
    double m = 0.5 * (a + b);
    cplx left = gl_panel(rule, f, a, m), right = gl_panel(rule, f, m, b);
    cplx split = left + right;
    double diff = std::abs(split - whole);
    if (diff <= std::max(tol_per_length * (b - a), 50.0 * eps * std::abs(split)) || depth == 0) {
        err += diff;
        return split;
    }
    return adaptive_panel(rule, f, a, m, left, tol_per_length, depth - 1, err) +
           adaptive_panel(rule, f, m, b, right, tol_per_length, depth - 1, err);
}

}  // namespace detail

// int_0^inf f(x) dx over panels [k w, (k+1) w], each refined adaptively by bisection;
// stops after two consecutive panels contribute less than tol/10.
template <class F>
QuadResult integrate_halfline(F&& f, const HalflineOptions& o = {})
{
    if (!(o.decay_scale > 0.0) || !(o.tol > 0.0)) throw DomainError("integrate_halfline: bad options");
    const QuadratureRule& rule = gauss_legendre(o.order);
    const double w = o.decay_scale;
    const double max_len = o.max_length > 0.0 ? o.max_length : 64.0 * w;
    const double tol_per_length = 0.1 * o.tol / w;
    QuadResult res;
    int small = 0;
    for (int k = 0;; ++k) {
        double a = k * w, b = std::min((k + 1) * w, max_len);
        if (!(b > a)) break;
        cplx whole = detail::gl_panel(rule, f, a, b);
        cplx part = detail::adaptive_panel(rule, f, a, b, whole, tol_per_length, o.max_depth, res.error);
        res.value += part;
        small = std::abs(part) < 0.1 * o.tol ? small + 1 : 0;
        if (small >= 2) return res;
        if (b >= max_len) {
            if (o.truncate) {
                res.error += std::abs(part);
                return res;
            }
            throw NonConvergence("integrate_halfline: no tail convergence before the length cap");
        }
    }
    return res;
}

struct DiskOptions {
    double tol = 1e-10;
    double radius = 1.0;  // integrate over |z| <= radius
    int n_r = 16;
    int n_phi = 16;
    int max_n_r = 1024;
    int max_n_phi = 1024;
};

// Fixed tensor grid: r = |z|^2 nodes times a trapezoid in phi. g sees z and the returned
// weights include the Jacobian (d nu = dr dphi / 2) and the factor (1 - r)^weight_exponent.
struct DiskNode {
    cplx z;
    double w;
};

inline std::vector<DiskNode> disk_grid(int n_r, int n_phi, double weight_exponent, double radius = 1.0)
{
    std::vector<DiskNode> out;
    out.reserve(std::size_t(n_r) * n_phi);
    const double dphi = 2.0 * pi / n_phi;
    auto push_ring = [&](double r, double wr) {
        double rho = std::sqrt(r);
        for (int j = 0; j < n_phi; ++j) out.push_back({std::polar(rho, j * dphi), 0.5 * wr * dphi});
    };
    if (radius >= 1.0) {
        const QuadratureRule& rule = gauss_jacobi(n_r, weight_exponent, 0.0);
        double scale = std::pow(2.0, -weight_exponent - 1.0);
        for (std::size_t i = 0; i < rule.size(); ++i) push_ring(0.5 * (1.0 + rule.nodes[i]), scale * rule.weights[i]);
    } else {
        const QuadratureRule& rule = gauss_legendre(n_r);
        double R2 = radius * radius;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            double r = 0.5 * R2 * (1.0 + rule.nodes[i]);
            push_ring(r, 0.5 * R2 * rule.weights[i] * std::pow(1.0 - r, weight_exponent));
        }
    }
    return out;
}

// int_{|z|<=radius} g(z) (1-|z|^2)^weight_exponent d nu(z), grids doubled until stable.
template <class G>
QuadResult integrate_disk(G&& g, double weight_exponent, const DiskOptions& o = {})
{
    auto eval = [&](int nr, int nphi) {
        cplx s = 0.0;
        for (const auto& node : disk_grid(nr, nphi, weight_exponent, o.radius)) s += node.w * cplx(g(node.z));
        return s;
    };
    int nr = o.n_r, nphi = o.n_phi;
    cplx prev = eval(nr, nphi);
    while (2 * nr <= o.max_n_r && 2 * nphi <= o.max_n_phi) {
        nr *= 2;
        nphi *= 2;
        cplx cur = eval(nr, nphi);
        double diff = std::abs(cur - prev);
        if (diff <= o.tol * std::max(1.0, std::abs(cur))) return {cur, diff};
        prev = cur;
    }
    throw NonConvergence("integrate_disk: grid doubling did not reach the tolerance");
}

}  // namespace rbt

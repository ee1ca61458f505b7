#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "types.hpp"

namespace rbt {

struct SeriesOptions {
    double rel_tol = eps;    // a term is "small" below rel_tol * |partial sum|
    int quiet_terms = 20;    // consecutive small terms before stopping
    int max_terms = 10000;
};

inline cplx ipow(cplx x, int n)
{
    if (n < 0) return 1.0 / ipow(x, -n);
    cplx r = 1.0;
    while (n) {
        if (n & 1) r *= x;
        x *= x;
        n >>= 1;
    }
    return r;
}

namespace detail {

// Lanczos sum, g = 607/128, 15 terms. Valid for Re z >= 0.5.
inline cplx lanczos_ln_gamma(cplx z)
{
    static constexpr double g = 607.0 / 128.0;
    static constexpr std::array<double, 15> c = {
        0.99999999999999709182,    57.156235665862923517,     -59.597960355475491248,
        14.136097974741747174,     -0.49191381609762019978,   .33994649984811888699e-4,
        .46523628927048575665e-4,  -.98374475304879564677e-4, .15808870322491248884e-3,
        -.21026444172410488319e-3, .21743961811521264320e-3,  -.16431810653676389022e-3,
        .84418223983852743293e-4,  -.26190838401581408670e-4, .36899182659531622704e-5};
    static const double half_ln_2pi = 0.5 * std::log(2.0 * pi);

    z -= 1.0;
    cplx x = c[0];
    for (int i = 1; i < 15; ++i) x += c[i] / (z + double(i));
    cplx t = z + g + 0.5;
    return half_ln_2pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

inline int shift_count(cplx z) { return z.real() < 0.5 ? int(std::ceil(0.5 - z.real())) : 0; }

}  // namespace detail

// Principal branch of log Gamma.
inline cplx ln_gamma(cplx z)
{
    if (is_nonpositive_int(z)) throw PoleError("ln_gamma: pole at " + std::to_string(z.real()));
    int n = detail::shift_count(z);
    if (n == 0) return detail::lanczos_ln_gamma(z);
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) acc += std::log(z + double(j));
    return detail::lanczos_ln_gamma(z + double(n)) - acc;
}

inline double ln_gamma(double x) { return ln_gamma(cplx(x)).real(); }

inline cplx gamma(cplx z) { return std::exp(ln_gamma(z)); }

// 1/Gamma, entire; exact zeros at the poles of Gamma.
inline cplx rgamma(cplx z)
{
    if (is_nonpositive_int(z)) return 0.0;
    int n = detail::shift_count(z);
    cplx prod = 1.0;
    for (int j = 0; j < n; ++j) prod *= z + double(j);
    return prod * std::exp(-detail::lanczos_ln_gamma(z + double(n)));
}

inline cplx pochhammer(cplx a, int n)
{
    cplx r = 1.0;
    for (int j = 0; j < n; ++j) r *= a + double(j);
    return r;
}

namespace detail {

// Sum of a hypergeometric-type series given a term-ratio functor; stops per SeriesOptions.
template <class Ratio>
cplx sum_series(Ratio ratio, const SeriesOptions& o, const char* what)
{
    cplx term = 1.0, sum = 1.0;
    int quiet = 0;
    for (int n = 0; n < o.max_terms; ++n) {
        term *= ratio(n);
        sum += term;
        if (std::abs(term) <= o.rel_tol * std::abs(sum))
            ++quiet;
        else
            quiet = 0;
        if (quiet >= o.quiet_terms) return sum;
    }
    throw NonConvergence(std::string(what) + ": series did not converge within the term budget");
}

inline cplx hyp2f1_finite(cplx a, cplx b, cplx c, cplx z, int N)
{
    cplx term = 1.0, sum = 1.0;
    for (int n = 0; n < N; ++n) {
        term *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1)) * z;
        sum += term;
    }
    return sum;
}

inline cplx hyp2f1_series(cplx a, cplx b, cplx c, cplx z, const SeriesOptions& o)
{
    return sum_series(
        [&](int n) {
            double k = n;
            return (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        },
        o, "gauss_2f1");
}

}  // namespace detail

// Gauss 2F1(a,b;c;z). Terminating series are summed exactly for any z.
inline cplx gauss_2f1(cplx a, cplx b, cplx c, cplx z, const SeriesOptions& o = {})
{
    const bool ta = is_nonpositive_int(a), tb = is_nonpositive_int(b);
    if (ta || tb) {
        int N = int(-std::max(ta ? a.real() : -1e300, tb ? b.real() : -1e300));
        if (is_nonpositive_int(c) && -c.real() < N)
            throw PoleError("gauss_2f1: c hits a pole before the series terminates");
        return detail::hyp2f1_finite(a, b, c, z, N);
    }
    if (is_nonpositive_int(c)) throw PoleError("gauss_2f1: c is a non-positive integer");
    if (z == 0.0) return 1.0;
    if (std::abs(z) <= 0.5) return detail::hyp2f1_series(a, b, c, z, o);

    // Pfaff also continues past |z| = 1 into Re z < 1/2
    cplx w = z / (z - 1.0);
    if (std::abs(z) >= 1.0 && !(std::abs(w) < 1.0))
        throw DomainError("gauss_2f1: need |z| < 1 or Re z < 1/2 for a non-terminating series");
    if (std::abs(w) < std::abs(z)) {
        // Pfaff; pick the variant that terminates if one does.
        if (is_nonpositive_int(c - a)) return std::pow(1.0 - z, -b) * gauss_2f1(c - a, b, c, w, o);
        return std::pow(1.0 - z, -a) * gauss_2f1(a, c - b, c, w, o);
    }
    return detail::hyp2f1_series(a, b, c, z, o);
}

// 3F2(-n, a2, a3; b1, b2; 1), a finite sum.
inline cplx hyp3f2_terminating_unit(int n, cplx a2, cplx a3, cplx b1, cplx b2)
{
    cplx term = 1.0, sum = 1.0;
    for (int j = 0; j < n; ++j) {
        cplx den = (b1 + double(j)) * (b2 + double(j));
        if (den == 0.0) throw PoleError("hyp3f2_terminating_unit: denominator Pochhammer vanishes");
        term *= double(j - n) * (a2 + double(j)) * (a3 + double(j)) / (den * double(j + 1));
        sum += term;
    }
    return sum;
}

// Appell F1(a; b, c; d; x, y) as a double series, summed row by row.
inline cplx appell_f1(cplx a, cplx b, cplx c, cplx d, cplx x, cplx y, const SeriesOptions& o = {})
{
    if (x == 0.0 && y == 0.0) return 1.0;
    const bool tb = is_nonpositive_int(b), tc = is_nonpositive_int(c);
    if ((!tb && std::abs(x) >= 1.0) || (!tc && std::abs(y) >= 1.0))
        throw DomainError("appell_f1: arguments outside the double-series domain");
    if (is_nonpositive_int(d)) throw PoleError("appell_f1: d is a non-positive integer");

    const int m_end = tb ? int(-b.real()) : o.max_terms;
    cplx coef = 1.0, sum = 0.0;
    int quiet = 0;
    for (int m = 0; m <= m_end; ++m) {
        if (m > 0) {
            double k = m - 1;
            coef *= (a + k) * (b + k) / ((d + k) * double(m)) * x;
        }
        cplx term = coef == 0.0 ? cplx(0.0) : coef * gauss_2f1(a + double(m), c, d + double(m), y, o);
        sum += term;
        if (tb) continue;
        if (std::abs(term) <= o.rel_tol * std::abs(sum))
            ++quiet;
        else
            quiet = 0;
        if (quiet >= o.quiet_terms) return sum;
    }
    if (tb) return sum;
    throw NonConvergence("appell_f1: outer series did not converge within the term budget");
}

// Kampe de Feriet F5 with parameters (c, d; e; a; a') and arguments (chi, zeta):
//   sum_{j,k} (c)_{j+k} (d)_{j+k} (a)_j / ((e)_{j+k} (a')_j j! k!) chi^j zeta^k
struct F5Args {
    cplx c, d, e, a, a_prime;
    cplx chi, zeta;
};

struct F5Options {
    double tol = 1e-12;
    int max_halvings = 9;
    SeriesOptions series{};
};

namespace detail {

inline void check_f5_args(const F5Args& p)
{
    if (!(p.d.real() > 0.0) || !((p.e - p.d).real() > 0.0))
        throw DomainError("kdf_f5: need Re(d) > 0 and Re(e - d) > 0");
    cplx s = p.chi + p.zeta;
    double dist = s.real() >= 1.0 ? std::abs(s.imag()) : std::abs(s - 1.0);
    if (!(dist > 1e-8)) throw DomainError("kdf_f5: chi + zeta lies on the cut [1, inf)");
}

// log t and log(1 - t) for t = 1/(1 + exp(-y)).
inline std::pair<double, double> logistic_logs(double y)
{
    double lt = y < 0.0 ? y - std::log1p(std::exp(y)) : -std::log1p(std::exp(-y));
    double l1t = y > 0.0 ? -y - std::log1p(std::exp(-y)) : -std::log1p(std::exp(y));
    return {lt, l1t};
}

}  // namespace detail

// Integral representation
//   Gamma(e)/(Gamma(d)Gamma(e-d)) int_0^1 t^{d-1}(1-t)^{e-d-1}(1-zeta t)^{-c} 2F1(a,c;a';chi t/(1-zeta t)) dt
// with t = 1/(1+e^{-y}) and trapezoid step halving. The inner 2F1 is used in its Pfaff form
// (1-st)^{-c} 2F1(a'-a,c;a';-chi t/(1-st)), s = chi+zeta, falling back to the direct form.
inline cplx kdf_f5_integral(const F5Args& p, const F5Options& o = {})
{
    detail::check_f5_args(p);
    const cplx s = p.chi + p.zeta;
    const cplx ama = p.a_prime - p.a;
    const bool pfaff_terminates = is_nonpositive_int(ama) || is_nonpositive_int(p.c);

    auto f = [&](double y) -> cplx {
        auto [lt, l1t] = detail::logistic_logs(y);
        double t = std::exp(lt);
        cplx w = std::exp(p.d * lt + (p.e - p.d) * l1t);
        if (w == 0.0) return 0.0;
        cplx q = 1.0 - s * t;
        cplx w2 = -p.chi * t / q;
        if (pfaff_terminates || std::abs(w2) < 1.0)
            return w * std::pow(q, -p.c) * gauss_2f1(ama, p.c, p.a_prime, w2, o.series);
        cplx q1 = 1.0 - p.zeta * t;
        cplx w1 = p.chi * t / q1;
        if (std::abs(w1) < 1.0) return w * std::pow(q1, -p.c) * gauss_2f1(p.a, p.c, p.a_prime, w1, o.series);
        throw NonConvergence("kdf_f5: inner 2F1 argument leaves the unit disk at a quadrature node");
    };

    const double lo = -(40.0 / p.d.real() + 4.0);
    const double hi = 40.0 / (p.e - p.d).real() + 4.0;
    double h = 0.5;
    int n = int(std::ceil((hi - lo) / h));
    h = (hi - lo) / n;
    cplx sum = 0.0;
    for (int i = 0; i <= n; ++i) sum += f(lo + i * h);
    cplx est = sum * h;
    for (int level = 0; level < o.max_halvings; ++level) {
        for (int i = 0; i < n; ++i) sum += f(lo + (i + 0.5) * h);
        n *= 2;
        h *= 0.5;
        cplx next = sum * h;
        bool done = std::abs(next - est) <= o.tol * std::max(1.0, std::abs(next));
        est = next;
        if (done) return std::exp(ln_gamma(p.e) - ln_gamma(p.d) - ln_gamma(p.e - p.d)) * est;
    }
    throw NonConvergence("kdf_f5: trapezoid refinement did not converge");
}

// Double series, summed as sum_j A_j 2F1(c+j, d+j; e+j; zeta). Requires |chi| + |zeta| < 1.
inline cplx kdf_f5_series(const F5Args& p, const SeriesOptions& o = {})
{
    if (!(std::abs(p.chi) + std::abs(p.zeta) < 1.0))
        throw DomainError("kdf_f5_series: need |chi| + |zeta| < 1");
    auto inner = [&](int j) {
        double k = j;
        return gauss_2f1(p.c + k, p.d + k, p.e + k, p.zeta, o);
    };
    cplx coef = 1.0, sum = inner(0);
    int quiet = 0;
    for (int j = 1; j < o.max_terms; ++j) {
        double k = j - 1;
        coef *= (p.c + k) * (p.d + k) * (p.a + k) / ((p.e + k) * (p.a_prime + k) * double(j)) * p.chi;
        cplx term = coef == 0.0 ? cplx(0.0) : coef * inner(j);
        sum += term;
        if (std::abs(term) <= o.rel_tol * std::abs(sum))
            ++quiet;
        else
            quiet = 0;
        if (quiet >= o.quiet_terms) return sum;
    }
    throw NonConvergence("kdf_f5_series: series did not converge within the term budget");
}

namespace detail {

// a' - a as -M when it is a non-positive integer up to rounding in a and a'; -1 otherwise.
inline int f5_reduction_order(const F5Args& p)
{
    cplx ama = p.a_prime - p.a;
    double r = std::round(ama.real());
    double slack = 16.0 * eps * std::max({1.0, std::abs(p.a), std::abs(p.a_prime)});
    if (r > 0.0 || std::abs(ama - r) > slack) return -1;
    return int(-r);
}

}  // namespace detail

// Finite form for a' - a = -M, M = 0, 1, 2, ...:
//   sum_{j<=M} (-M)_j (c)_j (d)_j (-chi)^j / ((a')_j (e)_j j!) 2F1(c+j, d+j; e+j; chi+zeta)
inline cplx kdf_f5_reduced(const F5Args& p, const SeriesOptions& o = {})
{
    const int M = detail::f5_reduction_order(p);
    if (M < 0) throw DomainError("kdf_f5_reduced: a' - a must be a non-positive integer");
    const cplx s = p.chi + p.zeta;
    cplx coef = 1.0, sum = gauss_2f1(p.c, p.d, p.e, s, o);
    for (int j = 1; j <= M; ++j) {
        double k = j - 1;
        cplx den = (p.a_prime + k) * (p.e + k);
        if (den == 0.0) throw PoleError("kdf_f5_reduced: denominator Pochhammer vanishes");
        coef *= (k - M) * (p.c + k) * (p.d + k) / (den * double(j)) * (-p.chi);
        sum += coef * gauss_2f1(p.c + double(j), p.d + double(j), p.e + double(j), s, o);
    }
    return sum;
}

inline cplx kdf_f5(const F5Args& p, const F5Options& o = {})
{
    detail::check_f5_args(p);
    if (detail::f5_reduction_order(p) >= 0) return kdf_f5_reduced(p, o.series);
    return kdf_f5_integral(p, o);
}

}  // namespace rbt

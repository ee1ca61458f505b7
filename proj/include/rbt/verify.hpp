#pragma once

// Verification suites. Each suite runs a family of numerical identity checks and reports
// the measured error next to its tolerance.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bargmann.hpp"
#include "coherent.hpp"
#include "disk.hpp"
#include "errors.hpp"
#include "hypergeom.hpp"
#include "identities.hpp"
#include "orthopoly.hpp"
#include "oscillator.hpp"
#include "quadrature.hpp"
#include "types.hpp"

namespace rbt {

struct Check {
    std::string name;
    double error = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::string message;  // set when the check threw
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    double seconds = 0.0;

    bool pass() const
    {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }
};

// Optional overrides; unset fields keep each suite's default parameter sets.
struct VerifyConfig {
    std::optional<double> c;
    std::optional<double> sigma;
    std::optional<int> m;
    std::optional<int> K;
    std::uint64_t seed = 20240917;
};

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{
        "orthonormality-disk", "eigen-equation", "overlap",      "srivastava-rao", "saran",     "orthonormality-oscillator",
        "wavefunction",        "f5-reductions",  "isometry",     "m0-reduction",   "resolution", "classical"};
    return names;
}

namespace detail {

inline void add_check(SuiteReport& rep, std::string name, double tol, const std::function<double()>& measure)
{
    Check c{std::move(name), 0.0, tol, false, {}};
    try {
        c.error = measure();
        c.pass = std::isfinite(c.error) && c.error < tol;
    } catch (const Error& e) {
        c.error = std::numeric_limits<double>::infinity();
        c.message = e.what();
    }
    rep.checks.push_back(std::move(c));
}

inline std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

inline std::string label(const LandauIndex& idx) { return "sigma=" + fmt(idx.sigma) + " m=" + std::to_string(idx.m); }

inline std::vector<LandauIndex> disk_cases(const VerifyConfig& cfg)
{
    if (cfg.sigma || cfg.m) return {{cfg.sigma.value_or(7.5), cfg.m.value_or(0)}};
    return {{5.0, 0}, {7.5, 1}, {9.0, 2}};
}

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Gram matrix of Phi_0..Phi_K on the full disk; tensor grids doubled until entries settle.
inline std::vector<std::vector<cplx>> disk_gram(const LandauIndex& idx, int K, double tol = 1e-12)
{
    const int m = idx.m;
    auto eval = [&](int n) {
        std::vector<std::vector<cplx>> G(K + 1, std::vector<cplx>(K + 1, 0.0));
        std::vector<cplx> v(K + 1);
        for (const auto& node : disk_grid(n, n, idx.sigma - 2.0 - 2.0 * m)) {
            double strip = std::pow(1.0 - std::norm(node.z), double(m));
            for (int k = 0; k <= K; ++k) v[k] = basis_phi(k, idx, node.z) * strip;
            for (int j = 0; j <= K; ++j)
                for (int k = 0; k <= K; ++k) G[j][k] += node.w * v[j] * std::conj(v[k]);
        }
        return G;
    };
    int n = 16;
    auto prev = eval(n);
    for (n *= 2; n <= 1024; n *= 2) {
        auto cur = eval(n);
        double diff = 0.0;
        for (int j = 0; j <= K; ++j)
            for (int k = 0; k <= K; ++k) diff = std::max(diff, std::abs(cur[j][k] - prev[j][k]));
        if (diff <= tol) return cur;
        prev = std::move(cur);
    }
    throw NonConvergence("disk_gram: grid doubling did not settle");
}

inline cplx test_input(double xi) { return xi * std::exp(-xi * xi / 8.0); }

}  // namespace detail

inline SuiteReport verify_orthonormality_disk(const VerifyConfig& cfg = {})
{
    SuiteReport rep{"orthonormality-disk", {}};
    const int K = cfg.K.value_or(8);
    for (const auto& idx : detail::disk_cases(cfg))
        detail::add_check(rep, "gram " + detail::label(idx) + " K=" + std::to_string(K), 1e-8, [&] {
            auto G = detail::disk_gram(idx, K);
            double worst = 0.0;
            for (int j = 0; j <= K; ++j)
                for (int k = 0; k <= K; ++k) worst = std::max(worst, std::abs(G[j][k] - (j == k ? 1.0 : 0.0)));
            return worst;
        });
    return rep;
}

inline SuiteReport verify_eigen_equation(const VerifyConfig& cfg = {})
{
    SuiteReport rep{"eigen-equation", {}};
    const int K = cfg.K.value_or(4);
    for (const auto& idx : detail::disk_cases(cfg))
        for (int k = 0; k <= K; ++k)
            detail::add_check(rep, "maass " + detail::label(idx) + " k=" + std::to_string(k), 1e-4, [&] {
                auto psi = [&](cplx w) { return basis_phi(k, idx, w); };
                const double eps_m = landau_level(idx);
                double worst = 0.0;
                for (int i = 0; i < 5; ++i)
                    for (int j = 0; j < 5; ++j) {
                        cplx z(-0.5 + 0.25 * i, -0.5 + 0.25 * j);
                        cplx v = psi(z);
                        cplx d = maass_apply_fd(idx, psi, z, 1e-4) - eps_m * v;
                        worst = std::max(worst, std::abs(d) / (1.0 + std::abs(v)));
                    }
                return worst;
            });
    return rep;
}

inline SuiteReport verify_overlap(const VerifyConfig& cfg = {})
{
    SuiteReport rep{"overlap", {}};
    const int K = cfg.K.value_or(120);
    for (const auto& idx : detail::disk_cases(cfg)) {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> rad(0.0, 0.5), ang(-pi, pi);
        std::vector<std::pair<cplx, cplx>> pairs;
        for (int i = 0; i < 50; ++i) pairs.emplace_back(std::polar(rad(rng), ang(rng)), std::polar(rad(rng), ang(rng)));
        detail::add_check(rep, "closed vs series " + detail::label(idx) + " K=" + std::to_string(K), 1e-8, [&] {
            double worst = 0.0;
            for (auto [z, w] : pairs) {
                cplx s = 0.0;
                for (int k = 0; k <= K; ++k) s += basis_phi(k, idx, z) * std::conj(basis_phi(k, idx, w));
                s /= std::sqrt(normalization(idx, z) * normalization(idx, w));
                worst = std::max(worst, std::abs(overlap(idx, z, w) - s));
            }
            return worst;
        });
        detail::add_check(rep, "hermitian " + detail::label(idx), 1e-12, [&] {
            double worst = 0.0;
            for (auto [z, w] : pairs)
                worst = std::max(worst, std::abs(overlap(idx, z, w) - std::conj(overlap(idx, w, z))));
            return worst;
        });
    }
    return rep;
}

inline SuiteReport verify_srivastava_rao(const VerifyConfig& cfg = {})
{
    SuiteReport rep{"srivastava-rao", {}};
    const double lambdas[] = {std::sqrt(3.0), 3.0, 0.6, 2.2};
    const double alphas[] = {2.5, 4.0, 0.0, 1.3};
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 16; ++i) {
        double lam = lambdas[i % 4], al = alphas[i / 4];
        detail::add_check(rep, "bilinear lambda=" + detail::fmt(lam) + " alpha=" + detail::fmt(al), 1e-8, [&] {
            double worst = 0.0;
            for (int r = 0; r < 4; ++r) {
                cplx t = std::polar(0.25 * std::abs(u(rng)), pi * u(rng));
                double x = 0.95 * u(rng), y = 0.95 * u(rng);
                worst = std::max(worst, detail::rel_err(bilinear_jacobi_series(lam, al, x, y, t, 80),
                                                        bilinear_jacobi_closed(lam, al, x, y, t)));
            }
            return worst;
        });
    }
    return rep;
}

inline SuiteReport verify_saran(const VerifyConfig& cfg = {})
{
    SuiteReport rep{"saran", {}};
    const double alphas[] = {2.0, 3.0, std::sqrt(3.0), 0.5};
    const double betas[] = {-1.0, 1.0, 0.0, 2.4};
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 16; ++i) {
        double al = alphas[i % 4], be = betas[i / 4];
        detail::add_check(rep, "generating alpha=" + detail::fmt(al) + " beta=" + detail::fmt(be), 1e-8, [&] {
            double worst = 0.0;
            for (int r = 0; r < 4; ++r) {
                cplx c(1.3 + u(rng), 0.8 * u(rng)), b(2.2 + u(rng), 0.0);
                cplx theta = std::polar(0.3 * std::abs(u(rng)), pi * u(rng));
                cplx y = std::polar(0.4 * std::abs(u(rng)), pi * u(rng));
                cplx V(0.9 * u(rng), 0.0);
                worst = std::max(worst, detail::rel_err(jacobi_generating_series(al, be, c, b, V, y, theta, 60),
                                                        jacobi_generating_closed(al, be, c, b, V, y, theta)));
            }
            return worst;
        });
    }
    return rep;
}

inline SuiteReport verify_orthonormality_oscillator(const VerifyConfig& cfg = {})
{
    SuiteReport rep{"orthonormality-oscillator", {}};
    const int K = cfg.K.value_or(5);
    std::vector<double> cs = cfg.c ? std::vector<double>{*cfg.c} : std::vector<double>{0.8, 1.0, 1.5};
    for (double c : cs)
        detail::add_check(rep, "gram c=" + detail::fmt(c) + " K=" + std::to_string(K), 1e-6, [&] {
            OscParams osc(c);
            HalflineOptions o;
            o.decay_scale = 1.0;
            o.tol = 1e-10;
            double worst = 0.0;
            for (int j = 0; j <= K; ++j)
                for (int k = j; k <= K; ++k) {
                    auto f = [&](double xi) {
                        auto v = eigenfunctions(K, osc, xi);
                        return v[j] * std::conj(v[k]);
                    };
                    worst = std::max(worst, std::abs(integrate_halfline(f, o).value - (j == k ? 1.0 : 0.0)));
                }
            return worst;
        });
    return rep;
}

inline SuiteReport verify_wavefunction(const VerifyConfig& cfg = {})
{
    SuiteReport rep{"wavefunction", {}};
    const double c = cfg.c.value_or(1.0);
    std::vector<int> ms = cfg.m ? std::vector<int>{*cfg.m} : std::vector<int>{0, 1};
    const int K = cfg.K.value_or(160);
    for (int m : ms)
        for (cplx z : {cplx(0.25, 0.0), cplx(0.2, 0.15), cplx(-0.3, 0.2)})
            detail::add_check(rep,
                              "closed vs series c=" + detail::fmt(c) + " m=" + std::to_string(m) + " z=" +
                                  detail::fmt(z.real()) + (z.imag() < 0 ? "" : "+") + detail::fmt(z.imag()) + "i",
                              1e-6, [&] {
                                  CoherentLabel l{z, ModelParams(OscParams(c), m)};
                                  double worst = 0.0;
                                  for (double xi : {0.5, 1.0, 2.0, 3.0})
                                      worst = std::max(worst, std::abs(cs_wavefunction(l, xi) -
                                                                       cs_wavefunction_oracle(l, xi, K, 1e-8).value));
                                  return worst;
                              });
    return rep;
}

inline SuiteReport verify_f5_reductions(const VerifyConfig& cfg = {})
{
    SuiteReport rep{"f5-reductions", {}};
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    detail::add_check(rep, "pfaff 2F1", 1e-10, [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            cplx a(2.0 * u(rng), u(rng)), b(2.0 * u(rng), u(rng)), c(2.5 + 1.5 * u(rng), u(rng));
            cplx x = std::polar(0.5 * std::abs(u(rng)), pi * u(rng));
            cplx lhs = gauss_2f1(a, b, c, x);
            cplx rhs = std::pow(1.0 - x, -a) * gauss_2f1(a, c - b, c, x / (x - 1.0));
            worst = std::max(worst, detail::rel_err(lhs, rhs));
        }
        return worst;
    });
    detail::add_check(rep, "appell F1 at d = b + b'", 1e-10, [&] {
        double worst = 0.0;
        for (int i = 0; i < 60;) {
            cplx a(1.5 + u(rng), 0.5 * u(rng)), b(1.0 + u(rng), 0.3 * u(rng)), c(0.8 + 0.5 * u(rng), 0.3 * u(rng));
            cplx X = std::polar(0.45 * std::abs(u(rng)), pi * u(rng));
            cplx Y = std::polar(0.45 * std::abs(u(rng)), pi * u(rng));
            if (std::abs((X - Y) / (1.0 - Y)) > 0.8) continue;
            ++i;
            cplx lhs = appell_f1(a, b, c, b + c, X, Y);
            cplx rhs = std::pow(1.0 - Y, -a) * gauss_2f1(a, b, b + c, (X - Y) / (1.0 - Y));
            worst = std::max(worst, detail::rel_err(lhs, rhs));
        }
        return worst;
    });
    detail::add_check(rep, "F5 with a = a' is 2F1(chi + zeta)", 1e-9, [&] {
        double worst = 0.0;
        for (int i = 0; i < 25; ++i) {
            double g = 1.1 + std::abs(u(rng)), xi = 1.5 * u(rng);
            cplx a(1.0 + 2.0 * std::abs(u(rng)), 0.3 * u(rng));
            F5Args p{cplx(g, xi), cplx(g, -xi), g + 0.5 + std::abs(u(rng)), a, a,
                     std::polar(0.4 * std::abs(u(rng)), pi * u(rng)), std::polar(0.4 * std::abs(u(rng)), pi * u(rng))};
            worst = std::max(worst, detail::rel_err(kdf_f5_integral(p), gauss_2f1(p.c, p.d, p.e, p.chi + p.zeta)));
        }
        return worst;
    });
    detail::add_check(rep, "F5 finite reduction at a' - a = -m", 1e-9, [&] {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            double g = 1.2 + 0.5 * std::abs(u(rng)), xi = 2.0 * std::abs(u(rng));
            int m = i % 4;
            F5Args p{cplx(g, xi), cplx(g, -xi), g + 0.5, 2.0 * g + m, 2.0 * g,
                     std::polar(0.3 * std::abs(u(rng)), pi * u(rng)), std::polar(0.3 * std::abs(u(rng)), pi * u(rng))};
            cplx red = kdf_f5_reduced(p);
            worst = std::max({worst, detail::rel_err(red, kdf_f5_integral(p)), detail::rel_err(red, kdf_f5_series(p))});
        }
        return worst;
    });
    detail::add_check(rep, "F5 double series vs integral", 1e-9, [&] {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            double g = 1.2 + 0.5 * std::abs(u(rng)), xi = 2.0 * std::abs(u(rng));
            F5Args p{cplx(g, xi), cplx(g, -xi), g + 0.5, 2.0 * g + 1.5 * std::abs(u(rng)), 2.0 * g,
                     std::polar(0.3 * std::abs(u(rng)), pi * u(rng)), std::polar(0.3 * std::abs(u(rng)), pi * u(rng))};
            worst = std::max(worst, detail::rel_err(kdf_f5_integral(p), kdf_f5_series(p)));
        }
        return worst;
    });
    return rep;
}

inline SuiteReport verify_isometry(const VerifyConfig& cfg = {})
{
    SuiteReport rep{"isometry", {}};
    const double c = cfg.c.value_or(1.0);
    std::vector<int> ms = cfg.m ? std::vector<int>{*cfg.m} : std::vector<int>{0, 1};
    const std::vector<cplx> points{cplx(0.0), cplx(0.25, 0.1), cplx(-0.3, 0.2), cplx(0.1, -0.45), cplx(0.6, 0.1)};
    for (int m : ms) {
        const ModelParams p(OscParams(c), m);
        const LandauIndex idx = p.landau();
        for (int j = 0; j <= 2; ++j)
            detail::add_check(rep, "B[phi_" + std::to_string(j) + "] = Phi_" + std::to_string(j) + " m=" + std::to_string(m),
                              1e-6, [&] {
                                  auto f = [&](double xi) { return eigenfunction(j, p.osc, xi); };
                                  auto res = transform_grid(p, f, points);
                                  double worst = 0.0;
                                  for (std::size_t i = 0; i < points.size(); ++i)
                                      worst = std::max(worst, std::abs(res.values[i] - basis_phi(j, idx, points[i])));
                                  return worst;
                              });
        detail::add_check(rep, "norm gap phi_0 m=" + std::to_string(m), 1e-4, [&] {
            return isometry_check(p, [&](double xi) { return eigenfunction(0, p.osc, xi); }).gap;
        });
        detail::add_check(rep, "norm gap (phi_0+phi_1)/sqrt2 m=" + std::to_string(m), 1e-4, [&] {
            auto f = [&](double xi) {
                auto v = eigenfunctions(1, p.osc, xi);
                return (v[0] + v[1]) / std::sqrt(2.0);
            };
            return isometry_check(p, f).gap;
        });
        if (m >= 1)
            detail::add_check(rep, "eigen-equation of B[f] m=" + std::to_string(m), 1e-3, [&] {
                auto psi = [&](cplx w) { return relativistic_transform(p, detail::test_input, w).value; };
                double worst = 0.0;
                for (cplx z : {cplx(0.1, 0.2), cplx(-0.3, -0.1)}) {
                    cplx v = psi(z);
                    cplx d = maass_apply_fd(idx, psi, z, 5e-3) - landau_level(idx) * v;
                    worst = std::max(worst, std::abs(d) / (1.0 + std::abs(v)));
                }
                return worst;
            });
    }
    return rep;
}

inline SuiteReport verify_m0_reduction(const VerifyConfig& cfg = {})
{
    SuiteReport rep{"m0-reduction", {}};
    const OscParams osc(cfg.c.value_or(1.0));
    const ModelParams p(osc, 0);
    detail::add_check(rep, "m=0 kernel vs general kernel, 3x3 grid", 1e-8, [&] {
        double worst = 0.0;
        for (double x : {-0.4, 0.0, 0.4})
            for (double y : {-0.4, 0.0, 0.4}) {
                cplx z(x, y);
                cplx a = relativistic_transform(p, detail::test_input, z).value;
                cplx b = relativistic_transform_m0(osc, detail::test_input, z).value;
                worst = std::max(worst, std::abs(a - b));
            }
        return worst;
    });
    detail::add_check(rep, "holomorphy |d/dzbar B[f]|", 1e-5, [&] {
        const double h = 1e-3;
        auto F = [&](cplx w) { return relativistic_transform_m0(osc, detail::test_input, w, {1e-12}).value; };
        double worst = 0.0;
        for (cplx z : {cplx(0.2, 0.1), cplx(-0.3, 0.3), cplx(0.0, -0.45)}) {
            cplx dx = (F(z + h) - F(z - h)) / (2.0 * h);
            cplx dy = (F(z + cplx(0, h)) - F(z - cplx(0, h))) / (2.0 * h);
            worst = std::max(worst, std::abs(0.5 * (dx + I * dy)));
        }
        return worst;
    });
    return rep;
}

inline SuiteReport verify_resolution(const VerifyConfig& cfg = {})
{
    SuiteReport rep{"resolution", {}};
    std::vector<LandauIndex> cases = (cfg.sigma || cfg.m) ? detail::disk_cases(cfg)
                                                          : std::vector<LandauIndex>{{7.5, 1}, {5.0, 0}};
    for (const auto& idx : cases)
        detail::add_check(rep, "reproducing kernel " + detail::label(idx) + " R=0.995", 1e-5, [&] {
            auto r = resolution_check(idx, cplx(0.2, 0.1), cplx(-0.1, 0.3));
            // the cut-off tail is bounded, not computed, so it counts fully against the budget
            return r.error() + r.tail_bound;
        });
    return rep;
}

inline SuiteReport verify_classical(const VerifyConfig& cfg = {})
{
    SuiteReport rep{"classical", {}};
    std::vector<double> sigmas = cfg.sigma ? std::vector<double>{*cfg.sigma} : std::vector<double>{3.0, 5.5};
    const int K = cfg.K.value_or(4);
    for (double s : sigmas)
        for (int k = 0; k <= K; ++k) {
            const double a = s - 1.0;
            std::vector<cplx> ratios;
            auto compute = [&] {
                if (!ratios.empty()) return;
                double nk = std::exp(0.5 * (ln_gamma(k + 1.0) - ln_gamma(s + k)));
                auto f = [&](double x) { return nk * std::pow(x, 0.5 * a) * std::exp(-0.5 * x) * laguerre_l(k, a, x); };
                HalflineOptions o;
                o.decay_scale = 4.0;
                o.tol = 1e-12;
                o.max_length = 600.0;
                for (cplx z : {cplx(0.1), cplx(0.2), cplx(0.3)})
                    ratios.push_back(classical_bargmann(s, f, z, o).value / std::pow(z, k));
            };
            std::string tag = "sigma=" + detail::fmt(s) + " k=" + std::to_string(k);
            detail::add_check(rep, "monomial image constancy " + tag, 1e-7, [&] {
                compute();
                double worst = 0.0;
                for (auto r : ratios) worst = std::max(worst, std::abs(r - ratios[0]) / std::abs(ratios[0]));
                return worst;
            });
            detail::add_check(rep, "monomial image constant " + tag, 1e-7, [&] {
                compute();
                double expect = std::sqrt(a / (pi * std::exp(ln_gamma(s)))) *
                                std::exp(0.5 * (ln_gamma(s + k) - ln_gamma(k + 1.0)));
                return std::abs(ratios[0] - expect) / expect;
            });
        }
    return rep;
}

inline SuiteReport run_suite(const std::string& name, const VerifyConfig& cfg = {})
{
    using Fn = SuiteReport (*)(const VerifyConfig&);
    static const std::vector<std::pair<std::string, Fn>> table{
        {"orthonormality-disk", verify_orthonormality_disk},
        {"eigen-equation", verify_eigen_equation},
        {"overlap", verify_overlap},
        {"srivastava-rao", verify_srivastava_rao},
        {"saran", verify_saran},
        {"orthonormality-oscillator", verify_orthonormality_oscillator},
        {"wavefunction", verify_wavefunction},
        {"f5-reductions", verify_f5_reductions},
        {"isometry", verify_isometry},
        {"m0-reduction", verify_m0_reduction},
        {"resolution", verify_resolution},
        {"classical", verify_classical},
    };
    for (const auto& [n, fn] : table)
        if (n == name) {
            auto t0 = std::chrono::steady_clock::now();
            SuiteReport rep = fn(cfg);
            rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return rep;
        }
    throw ConfigError("unknown suite '" + name + "'");
}

// "all" expands to every suite in suite_names() order.
inline std::vector<SuiteReport> run_suites(const std::string& name, const VerifyConfig& cfg = {})
{
    std::vector<SuiteReport> out;
    if (name == "all") {
        for (const auto& n : suite_names()) out.push_back(run_suite(n, cfg));
    } else {
        out.push_back(run_suite(name, cfg));
    }
    return out;
}

}  // namespace rbt

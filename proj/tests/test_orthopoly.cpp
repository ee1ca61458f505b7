#include <gtest/gtest.h>

#include <random>

#include "rbt/identities.hpp"
#include "rbt/orthopoly.hpp"
#include "rbt/quadrature.hpp"

using namespace rbt;

namespace {

// Standard three-term recurrence, used as an independent oracle.
cplx jacobi_recurrence(int n, double a, double b, cplx x)
{
    cplx p0 = 1.0;
    if (n == 0) return p0;
    cplx p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    for (int k = 2; k <= n; ++k) {
        double s = 2.0 * k + a + b;
        cplx p2 = ((s - 1.0) * (s * (s - 2.0) * x + a * a - b * b) * p1 - 2.0 * (k + a - 1.0) * (k + b - 1.0) * s * p0) /
                  (2.0 * k * (k + a + b) * (s - 2.0));
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

// Unnormalised recurrence S_{n+1} = (A_n + C_n - a^2 - xi^2) S_n - A_{n-1} C_n S_{n-1}.
double cdhahn_recurrence(int n, double xi, double a, double b, double c)
{
    auto A = [&](int k) { return (k + a + b) * (k + a + c); };
    auto C = [&](int k) { return k * (k + b + c - 1.0); };
    double s0 = 1.0, s1 = A(0) - a * a - xi * xi;
    if (n == 0) return s0;
    for (int k = 1; k < n; ++k) {
        double s2 = (A(k) + C(k) - a * a - xi * xi) * s1 - A(k - 1) * C(k) * s0;
        s0 = s1;
        s1 = s2;
    }
    return s1;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Jacobi, DegreeZeroAndEndpoint)
{
    EXPECT_EQ(jacobi_p(0, 1.3, -0.4, cplx(0.2, 0.3)), cplx(1.0));
    for (int n : {1, 4, 9}) {
        double a = 1.7, b = 0.6;
        double expect = std::exp(ln_gamma(n + a + 1.0) - ln_gamma(n + 1.0) - ln_gamma(a + 1.0));
        EXPECT_LT(rel(jacobi_p(n, a, b, 1.0), expect), 1e-13);
    }
}

TEST(Jacobi, NegativeIntegerAlphaClosedForm)
{
    const int k = 3;
    const double s = 5.0, r = 0.2;
    cplx expect = std::pow(-r, k) * std::exp(ln_gamma(s + k) - ln_gamma(s) - ln_gamma(k + 1.0));
    EXPECT_LT(std::abs(jacobi_p(k, -double(k), s - 1.0, 1.0 - 2.0 * r) - expect), 1e-14);
}

TEST(Jacobi, MatchesRecurrenceRandomized)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        // half of the cases have alpha < -1, which takes the explicit-sum path
        int n = int(12 * std::abs(u(rng)));
        double a = (i % 2 ? -3.4 : 0.3) + 3.0 * std::abs(u(rng)), b = -0.7 + 4.0 * std::abs(u(rng));
        if (std::abs(a - std::round(a)) < 0.05) a += 0.1;
        cplx x(u(rng), 0.3 * u(rng));
        // the oracle divides by (k+a+b)(2k+a+b-2)
        if (std::abs(a + b - std::round(a + b)) < 0.05) continue;
        EXPECT_LT(rel(jacobi_p(n, a, b, x), jacobi_recurrence(n, a, b, x)), 1e-11) << "case " << i;
    }
}

TEST(Jacobi, Symmetry)
{
    int m = 3;
    double g = 0.7, rho = 2.4, xi = 0.35;
    EXPECT_LT(std::abs(jacobi_p(m, g, rho, xi) + jacobi_p(m, rho, g, -xi)), 1e-14);
}

TEST(Jacobi, ConnectionFormula)
{
    EXPECT_EQ(jacobi_connection(0, 1.0, 2.0, 0.3), cplx(1.0));
    const double g = 1.6, r = 0.3;
    const int m = 1;
    cplx u = 1.0 - 2.0 * r;
    EXPECT_LT(std::abs(jacobi_connection(2, 2 * g - 1, m - 2, u) - jacobi_p(2, 2 * g - 1, m - 2, u)), 1e-12);
    EXPECT_THROW(jacobi_connection(2, 1.0, 1.0, 1.0), DomainError);

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        int n = int(8 * std::abs(d(rng)));
        double a = 2.5 * d(rng), b = 2.5 * d(rng);
        cplx x(0.9 * d(rng), 0.2 * d(rng));
        EXPECT_LT(rel(jacobi_connection(n, a, b, x), jacobi_p(n, a, b, x)), 1e-11) << "case " << i;
    }
}

TEST(Laguerre, LowDegree)
{
    EXPECT_EQ(laguerre_l(0, 2.5, 3.1), 1.0);
    EXPECT_DOUBLE_EQ(laguerre_l(1, 2.5, 3.1), 1.0 + 2.5 - 3.1);
    // L_2^{(a)}(x) = ((x^2) - 2(a+2)x + (a+1)(a+2)) / 2
    double a = 0.7, x = 1.9;
    EXPECT_NEAR(laguerre_l(2, a, x), 0.5 * (x * x - 2 * (a + 2) * x + (a + 1) * (a + 2)), 1e-14);
}

TEST(Laguerre, Orthogonality)
{
    const double a = 2.5;
    HalflineOptions o;
    o.decay_scale = 4.0;
    o.tol = 1e-12;
    o.max_length = 400.0;
    for (int j = 0; j <= 4; ++j)
        for (int k = 0; k <= 4; ++k) {
            auto f = [&](double x) { return laguerre_l(j, a, x) * laguerre_l(k, a, x) * std::pow(x, a) * std::exp(-x); };
            double expect = j == k ? std::exp(ln_gamma(a + k + 1.0) - ln_gamma(k + 1.0)) : 0.0;
            EXPECT_NEAR(integrate_halfline(f, o).value.real(), expect, 1e-8) << j << "," << k;
        }
}

TEST(ContinuousDualHahn, LowDegree)
{
    double a = 1.3, b = 0.9, c = 0.5, xi = 0.7;
    EXPECT_DOUBLE_EQ(cdhahn_s(0, xi, a, b, c), 1.0);
    EXPECT_NEAR(cdhahn_s(1, xi, a, b, c), (a + b) * (a + c) - (a * a + xi * xi), 1e-14);
}

TEST(ContinuousDualHahn, MatchesRecurrence)
{
    const double g = 1.6;
    EXPECT_NEAR(cdhahn_s(2, 0.5, g, g, 0.5), cdhahn_recurrence(2, 0.5, g, g, 0.5), 1e-11);
    for (int n = 0; n < 10; ++n)
        for (double xi : {0.0, 0.8, 3.0}) {
            double ref = cdhahn_recurrence(n, xi, g, g, 0.5);
            EXPECT_NEAR(cdhahn_s(n, xi, g, g, 0.5), ref, 1e-11 * std::max(1.0, std::abs(ref)));
        }
}

TEST(ContinuousDualHahn, ImaginaryPartVanishes)
{
    for (int n : {1, 3, 6}) {
        double a = 1.4, b = 1.4, c = 0.5, xi = 1.1;
        cplx v = pochhammer(a + b, n) * pochhammer(a + c, n) *
                 hyp3f2_terminating_unit(n, cplx(a, xi), cplx(a, -xi), a + b, a + c);
        EXPECT_LT(std::abs(v.imag()), 1e-12 * std::max(1.0, std::abs(v)));
    }
}

TEST(ContinuousDualHahn, NormalizedRecurrence)
{
    const double a = 1.5, b = 1.5, c = 0.5, xi = 0.9;
    auto q = cdhahn_normalized(8, xi, a, b, c);
    for (int n = 0; n <= 8; ++n) {
        double norm = std::exp(0.5 * (ln_gamma(n + a + b) + ln_gamma(n + a + c) + ln_gamma(n + b + c) + ln_gamma(n + 1.0)));
        double ref = cdhahn_recurrence(n, xi, a, b, c) / norm;
        EXPECT_NEAR(q[n], ref, 1e-12 * std::max(1.0, std::abs(ref)));
    }
}

TEST(Identities, BilinearJacobiSeries)
{
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double lambdas[] = {1.7320508075688772, 3.0, 0.6, 2.2};
    const double alphas[] = {2.5, 4.0, 0.0, 1.3};
    for (int i = 0; i < 40; ++i) {
        double lam = lambdas[i % 4], al = alphas[(i / 4) % 4];
        cplx t = std::polar(0.25 * std::abs(u(rng)), pi * u(rng));
        double x = 0.95 * u(rng), y = 0.95 * u(rng);
        cplx lhs = bilinear_jacobi_series(lam, al, x, y, t, 80);
        cplx rhs = bilinear_jacobi_closed(lam, al, x, y, t);
        EXPECT_LT(rel(lhs, rhs), 1e-8) << "case " << i;
    }
}

TEST(Identities, JacobiGeneratingWithHypergeometricCoefficients)
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double alphas[] = {2.0, 3.0, 1.7320508075688772, 0.5};
    const double betas[] = {-1.0, 1.0, 0.0, 2.4};
    for (int i = 0; i < 40; ++i) {
        double al = alphas[i % 4], be = betas[(i / 4) % 4];
        cplx c(1.3 + u(rng), 0.8 * u(rng)), b(2.2 + u(rng), 0.0);
        cplx theta = std::polar(0.3 * std::abs(u(rng)), pi * u(rng));
        cplx y = std::polar(0.4 * std::abs(u(rng)), pi * u(rng));
        cplx V(0.9 * u(rng), 0.0);
        cplx lhs = jacobi_generating_series(al, be, c, b, V, y, theta, 60);
        cplx rhs = jacobi_generating_closed(al, be, c, b, V, y, theta);
        EXPECT_LT(rel(lhs, rhs), 1e-8) << "case " << i;
    }
}

#include <gtest/gtest.h>

#include <random>

#include "rbt/disk.hpp"
#include "rbt/quadrature.hpp"

using namespace rbt;

namespace {

double gram_deviation(const LandauIndex& idx, int K)
{
    const int m = idx.m;
    double worst = 0.0;
    for (int j = 0; j <= K; ++j)
        for (int k = j; k <= K; ++k) {
            // Phi carries (1-r)^{-m}; move it into the weight exponent
            auto g = [&](cplx z) {
                double strip = std::pow(1.0 - std::norm(z), 2.0 * m);
                return basis_phi(j, idx, z) * std::conj(basis_phi(k, idx, z)) * strip;
            };
            cplx v = integrate_disk(g, idx.sigma - 2.0 - 2.0 * m, {1e-12}).value;
            worst = std::max(worst, std::abs(v - (j == k ? 1.0 : 0.0)));
        }
    return worst;
}

}  // namespace

TEST(LandauLevel, Values)
{
    EXPECT_EQ(landau_level({5.0, 0}), 0.0);
    EXPECT_DOUBLE_EQ(landau_level({7.0, 2}), 32.0);
    const double g = 1.3660254037844386;
    for (int m : {1, 2, 3}) EXPECT_NEAR(landau_level({2.0 * (g + m), m}), 4.0 * m * (m + 2.0 * g - 1.0), 1e-12);
}

TEST(LandauLevel, RejectsBadIndex)
{
    EXPECT_THROW(landau_level({7.0, 3}), DomainError);
    EXPECT_THROW(landau_level({7.0, -1}), DomainError);
    EXPECT_THROW(landau_level({1.0, 0}), DomainError);
    EXPECT_NO_THROW(landau_level({7.5, 3}));
}

TEST(BergmanDistance, Examples)
{
    EXPECT_EQ(bergman_distance(cplx(0.3, 0.2), cplx(0.3, 0.2)), 0.0);
    EXPECT_NEAR(bergman_distance(0.0, 0.6), std::acosh(1.0 / 0.8), 1e-15);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-0.65, 0.65);
    for (int i = 0; i < 50; ++i) {
        cplx z(u(rng), u(rng)), w(u(rng), u(rng));
        double d = bergman_distance(z, w);
        EXPECT_DOUBLE_EQ(d, bergman_distance(w, z));
        double c2 = std::norm(1.0 - z * std::conj(w)) / ((1.0 - std::norm(z)) * (1.0 - std::norm(w)));
        EXPECT_NEAR(d, std::acosh(std::sqrt(c2)), 1e-12);
        EXPECT_GT(d, 0.0);
    }
    EXPECT_THROW(bergman_distance(1.0, 0.0), DomainError);
}

TEST(BasisPhi, GroundStateConstant)
{
    for (double s : {2.5, 5.0, 9.0})
        EXPECT_NEAR(basis_phi(0, {s, 0}, cplx(0.4, -0.3)).real(), std::sqrt((s - 1.0) / pi), 1e-14);
}

TEST(BasisPhi, MonomialsAtLevelZero)
{
    const double s = 5.5;
    cplx z(0.3, -0.45);
    for (int k = 0; k <= 10; ++k) {
        double c = std::sqrt((s - 1.0) * std::exp(ln_gamma(s + k) - ln_gamma(s) - ln_gamma(k + 1.0)) / pi);
        cplx expect = c * std::pow(z, k);
        EXPECT_LT(std::abs(basis_phi(k, {s, 0}, z) - expect), 1e-13 * std::max(1.0, std::abs(expect))) << k;
    }
}

TEST(BasisPhi, ReferenceValues)
{
    // arbitrary-precision values
    cplx a = basis_phi(3, {7.5, 1}, cplx(0.3, 0.2));
    EXPECT_LT(std::abs(a - cplx(-0.37153777110260348953, -0.89169065064624837487)), 1e-13);
    cplx b = basis_phi(1, {9.0, 2}, cplx(-0.4, 0.1));
    EXPECT_LT(std::abs(b - cplx(0.9191883516129833334, 0.22979708790324583335)), 1e-13);
}

TEST(BasisPhi, HighIndexPathMatchesNegativeAlphaSum)
{
    // for k > m the direct formula needs P_k^{(m-k, beta)}, alpha a negative integer
    for (auto idx : {LandauIndex{7.5, 1}, LandauIndex{9.0, 2}, LandauIndex{6.2, 2}}) {
        const double s = idx.sigma, b = s - 2.0 * idx.m - 1.0;
        const int m = idx.m;
        cplx z(-0.35, 0.42);
        double r = std::norm(z);
        for (int k = m + 1; k <= m + 6; ++k) {
            double ck = std::sqrt(b * std::exp(ln_gamma(s - m) + ln_gamma(k + 1.0) - ln_gamma(m + 1.0) -
                                               ln_gamma(s - 2.0 * m + k)) /
                                  pi);
            cplx direct = (k % 2 ? -1.0 : 1.0) * ck * std::pow(std::conj(z), double(m - k)) *
                          std::pow(1.0 - r, -double(m)) * jacobi_p(k, double(m - k), b, 1.0 - 2.0 * r);
            cplx v = basis_phi(k, idx, z);
            EXPECT_LT(std::abs(v - direct), 1e-11 * std::max(1.0, std::abs(v))) << s << " " << k;
        }
    }
}

TEST(BasisPhi, ContinuousInSigmaAcrossLevelIndex)
{
    const int m = 2;
    cplx z(0.21, -0.33);
    for (int k : {m - 1, m, m + 1}) {
        double s = 7.3;
        cplx v0 = basis_phi(k, {s, m}, z);
        double prev = 1e300;
        for (double h : {1e-2, 1e-4, 1e-6}) {
            double d = std::abs(basis_phi(k, {s + h, m}, z) - v0);
            EXPECT_LT(d, prev);
            prev = d;
        }
        EXPECT_LT(prev, 1e-4);
    }
}

TEST(BasisPhi, RejectsBadInputs)
{
    EXPECT_THROW(basis_phi(-1, {5.0, 0}, 0.0), DomainError);
    EXPECT_THROW(basis_phi(0, {5.0, 0}, 1.0), DomainError);
    EXPECT_THROW(basis_phi(0, {5.0, 2}, 0.0), DomainError);
}

TEST(BasisPhi, GramMatrixIdentity)
{
    for (auto idx : {LandauIndex{5.0, 0}, LandauIndex{7.5, 1}, LandauIndex{9.0, 2}, LandauIndex{7.5, 0},
                     LandauIndex{7.5, 2}})
        EXPECT_LT(gram_deviation(idx, 8), 1e-8) << idx.sigma << " " << idx.m;
}

TEST(BasisPhi, AngularOrthogonalityAtLevelZero)
{
    const LandauIndex idx{5.0, 0};
    auto g = [&](cplx z) { return basis_phi(0, idx, z) * std::conj(basis_phi(1, idx, z)); };
    EXPECT_LT(std::abs(integrate_disk(g, 3.0).value), 1e-14);
}

TEST(Maass, ConstantAndHolomorphicAreKilled)
{
    const LandauIndex idx{6.0, 0};
    cplx z(0.2, 0.1);
    EXPECT_LT(std::abs(maass_apply_fd(idx, [](cplx) { return cplx(3.0); }, z)), 1e-10);
    for (int k : {1, 3, 5})
        EXPECT_LT(std::abs(maass_apply_fd(idx, [k](cplx w) { return std::pow(w, k); }, z)), 1e-5) << k;
}

TEST(Maass, EigenEquationSpotValue)
{
    const LandauIndex idx{7.5, 1};
    cplx z(0.3, 0.2);
    auto psi = [&](cplx w) { return basis_phi(3, idx, w); };
    cplx lhs = maass_apply_fd(idx, psi, z, 1e-4);
    cplx rhs = landau_level(idx) * psi(z);
    EXPECT_LT(std::abs(lhs - rhs) / std::abs(rhs), 1e-5);
}

TEST(Maass, EigenEquationGrid)
{
    for (auto idx : {LandauIndex{5.0, 0}, LandauIndex{7.5, 1}, LandauIndex{9.0, 2}})
        for (int k = 0; k <= 4; ++k) {
            auto psi = [&](cplx w) { return basis_phi(k, idx, w); };
            double worst = 0.0;
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) {
                    cplx z(-0.5 + 0.25 * i, -0.5 + 0.25 * j);
                    cplx v = psi(z);
                    cplx d = maass_apply_fd(idx, psi, z, 1e-4) - landau_level(idx) * v;
                    worst = std::max(worst, std::abs(d) / (1.0 + std::abs(v)));
                }
            EXPECT_LT(worst, 1e-4) << idx.sigma << " " << idx.m << " " << k;
        }
}

TEST(Maass, RejectsPointsNearBoundary)
{
    EXPECT_THROW(maass_apply_fd({5.0, 0}, [](cplx) { return cplx(1.0); }, cplx(0.99995), 1e-4), DomainError);
}

TEST(MeasureDensity, Values)
{
    EXPECT_NEAR(measure_density({7.5, 1}, 0.0), 4.5 / pi, 1e-15);
    cplx z(0.3, 0.4);
    EXPECT_NEAR(measure_density({7.5, 1}, z), 4.5 / (pi * 0.75 * 0.75), 1e-14);
    // mass of |z| <= R is (s-2m-1) R^2 / (1-R^2)
    const double R = 0.99;
    DiskOptions o;
    o.radius = R;
    o.tol = 1e-10;
    double mass = integrate_disk([](cplx) { return 1.0; }, -2.0, o).value.real() * 4.5 / pi;
    EXPECT_NEAR(mass, 4.5 * R * R / (1.0 - R * R), 1e-7 * mass);
}

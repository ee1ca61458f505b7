#include <gtest/gtest.h>

#include "rbt/oscillator.hpp"
#include "rbt/quadrature.hpp"

using namespace rbt;

namespace {

const double kGamma1 = 0.5 * (1.0 + std::sqrt(3.0));

// phi_k through the terminating 3F2, independent of the normalised recurrence
cplx phi_direct(int k, const OscParams& osc, double xi)
{
    const double g = osc.gamma();
    double norm = ln_gamma(k + g + 0.5) + 0.5 * (ln_gamma(k + 1.0) + ln_gamma(k + 2.0 * g));
    return eigen_prefactor(osc, xi) * cdhahn_s(k, xi, g, g, 0.5) * std::exp(-norm);
}

}  // namespace

TEST(Gamma, Values)
{
    EXPECT_NEAR(gamma_of_c(1.0), kGamma1, 1e-15);
    EXPECT_NEAR(gamma_of_c(std::sqrt(2.0)), 2.0, 1e-14);
    EXPECT_GT(gamma_of_c(1e-3), 1.0);
    EXPECT_NEAR(gamma_of_c(1e-3), 1.0, 1e-11);
    EXPECT_THROW(gamma_of_c(0.0), DomainError);
    EXPECT_THROW(gamma_of_c(-1.0), DomainError);
    EXPECT_THROW(OscParams(-2.0), DomainError);
}

TEST(ModelParams, Derived)
{
    ModelParams p(OscParams(1.0), 2);
    EXPECT_NEAR(p.sigma(), 2.0 * (kGamma1 + 2), 1e-14);
    EXPECT_NO_THROW(p.landau().validate());
    EXPECT_THROW(ModelParams(OscParams(1.0), -1), DomainError);
}

TEST(Energy, Spectrum)
{
    EXPECT_NEAR(energy(0, OscParams(std::sqrt(2.0))), 4.0, 1e-14);
    EXPECT_NEAR(energy(3, OscParams(1.0)), 6.0 + 1.0 + std::sqrt(3.0), 1e-14);
    for (int k = 0; k < 10; ++k) EXPECT_NEAR(energy(k + 1, OscParams(0.7)) - energy(k, OscParams(0.7)), 2.0, 1e-14);
}

TEST(Eigenfunction, VanishesAtOrigin)
{
    for (int k = 0; k <= 5; ++k) EXPECT_EQ(eigenfunction(k, OscParams(1.0), 0.0), cplx(0.0));
    EXPECT_THROW(eigenfunction(0, OscParams(1.0), -0.1), DomainError);
    EXPECT_THROW(eigenfunction(-1, OscParams(1.0), 0.1), DomainError);
}

TEST(Eigenfunction, GroundStateModulus)
{
    // |phi_0(1)|^2 at c = 1, arbitrary-precision value
    EXPECT_NEAR(std::norm(eigenfunction(0, OscParams(1.0), 1.0)), 0.49802777027855049088, 1e-13);
}

TEST(Eigenfunction, ModulusIndependentOfPhaseConvention)
{
    for (double c : {0.8, 1.0, 1.5})
        for (double xi : {0.3, 1.0, 4.0}) {
            OscParams osc(c);
            const double g = osc.gamma();
            double mod2 = 2.0 * std::exp(4.0 * ln_gamma(cplx(g, xi)).real() - 2.0 * ln_gamma(cplx(0.0, xi)).real() -
                                         2.0 * ln_gamma(g + 0.5) - ln_gamma(2.0 * g));
            double v = std::norm(eigenfunction(0, osc, xi));
            EXPECT_NEAR(v, mod2, 1e-13 * std::max(1.0, mod2));
        }
}

TEST(Eigenfunction, ReferenceValues)
{
    OscParams osc(1.0);
    EXPECT_LT(std::abs(eigenfunction(3, osc, 0.7) - cplx(-0.25282383965662329114, -0.28191222862887577635)), 1e-13);
    EXPECT_LT(std::abs(eigenfunction(40, osc, 2.5) - cplx(-0.057089847756544123976, 0.10466792980044535783)), 1e-11);
    EXPECT_LT(std::abs(eigenfunction(100, osc, 1.3) - cplx(-0.028596016934877875619, -0.059167847250705389885)),
              1e-11);
}

TEST(Eigenfunction, RecurrenceMatchesHypergeometricSum)
{
    OscParams osc(1.2);
    for (double xi : {0.2, 1.5, 3.0}) {
        auto all = eigenfunctions(8, osc, xi);
        for (int k = 0; k <= 8; ++k) EXPECT_LT(std::abs(all[k] - phi_direct(k, osc, xi)), 1e-12) << k << " " << xi;
    }
}

TEST(Eigenfunction, Orthonormality)
{
    for (double c : {0.8, 1.0, 1.5}) {
        OscParams osc(c);
        HalflineOptions o;
        // polynomial growth of phi_5 pushes the tail past 64 gamma / pi
        o.decay_scale = 1.0;
        o.tol = 1e-10;
        const int K = 5;
        double worst = 0.0;
        for (int j = 0; j <= K; ++j)
            for (int k = j; k <= K; ++k) {
                auto f = [&](double xi) {
                    auto v = eigenfunctions(K, osc, xi);
                    return v[j] * std::conj(v[k]);
                };
                cplx g = integrate_halfline(f, o).value;
                worst = std::max(worst, std::abs(g - (j == k ? 1.0 : 0.0)));
            }
        EXPECT_LT(worst, 1e-6) << c;
    }
}

TEST(Eigenfunction, TailBeyondFortyIsNegligible)
{
    OscParams osc(1.0);
    const QuadratureRule& r = gauss_legendre(40);
    double tail = 0.0;
    // [40, 80] dominates; the integrand decays like exp(-pi xi) times a polynomial
    for (std::size_t i = 0; i < r.size(); ++i) {
        double xi = 60.0 + 20.0 * r.nodes[i];
        auto v = eigenfunctions(5, osc, xi);
        double s = 0.0;
        for (auto x : v) s = std::max(s, std::norm(x));
        tail += 20.0 * r.weights[i] * s;
    }
    EXPECT_LT(tail, 1e-12);
}

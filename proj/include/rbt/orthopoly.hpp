#pragma once

#include <cmath>
#include <vector>

#include "errors.hpp"
#include "hypergeom.hpp"
#include "types.hpp"

namespace rbt {

struct JacobiParams {
    int n = 0;
    double alpha = 0.0;
    double beta = 0.0;
    cplx x = 0.0;
};

// P_n^{(alpha,beta)}(x). Outside alpha, beta > -1 it is summed as
//   sum_j (-1)^j (n+a+b+1)_j / j! * (a+j+1)_{n-j} / (n-j)! * ((1-x)/2)^j.
// Same terms as ((a+1)_n/n!) 2F1(-n, n+a+b+1; a+1; (1-x)/2) with (a+1)_n/(a+1)_j cancelled,
// so negative integer alpha needs no special path.
inline cplx jacobi_p(const JacobiParams& p)
{
    if (p.n < 0) throw DomainError("jacobi_p: negative degree");
    int n = p.n;
    if (p.alpha > -1.0 && p.beta > -1.0) {
        // classical range: the three-term recurrence avoids the cancellation in the sum
        const double a = p.alpha, b = p.beta;
        cplx p0 = 1.0;
        if (n == 0) return p0;
        cplx p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * p.x;
        for (int k = 2; k <= n; ++k) {
            double s = 2.0 * k + a + b;
            cplx p2 = ((s - 1.0) * (s * (s - 2.0) * p.x + a * a - b * b) * p1 -
                       2.0 * (k + a - 1.0) * (k + b - 1.0) * s * p0) /
                      (2.0 * k * (k + a + b) * (s - 2.0));
            p0 = p1;
            p1 = p2;
        }
        return p1;
    }
    double a = p.alpha, b = p.beta;
    cplx x = p.x;
    double sign = 1.0;
    if (x.real() < 0.0) {
        std::swap(a, b);
        x = -x;
        sign = (n % 2) ? -1.0 : 1.0;
    }
    std::vector<double> tail(n + 1);
    tail[n] = 1.0;
    for (int j = n - 1; j >= 0; --j) tail[j] = tail[j + 1] * (a + j + 1) / double(n - j);

    cplx u = 0.5 * (1.0 - x);
    double head = 1.0;
    cplx upow = 1.0, sum = tail[0];
    for (int j = 1; j <= n; ++j) {
        head *= -(n + a + b + j) / double(j);
        upow *= u;
        sum += head * tail[j] * upow;
    }
    return sign * sum;
}

inline cplx jacobi_p(int n, double alpha, double beta, cplx x) { return jacobi_p({n, alpha, beta, x}); }

// ((1-u)/2)^n P_n^{(-2n-alpha-beta-1, beta)}((u+3)/(u-1)); equals P_n^{(alpha,beta)}(u).
inline cplx jacobi_connection(int n, double alpha, double beta, cplx u)
{
    if (u == 1.0) throw DomainError("jacobi_connection: u = 1");
    return ipow(0.5 * (1.0 - u), n) * jacobi_p(n, -2.0 * n - alpha - beta - 1.0, beta, (u + 3.0) / (u - 1.0));
}

inline double laguerre_l(int n, double alpha, double x)
{
    if (n < 0) throw DomainError("laguerre_l: negative degree");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        double next = ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

// Continuous dual Hahn S_n(xi^2; a, b, c) from its terminating 3F2.
inline double cdhahn_s(int n, double xi, double a, double b, double c)
{
    cplx v = pochhammer(a + b, n) * pochhammer(a + c, n) *
             hyp3f2_terminating_unit(n, cplx(a, xi), cplx(a, -xi), a + b, a + c);
    return v.real();
}

// q_k = S_k / sqrt(Gamma(k+a+b) Gamma(k+a+c) Gamma(k+b+c) k!) for k = 0..nmax, by the
// normalised three-term recurrence. Stable for large k where the 3F2 sum cancels.
inline std::vector<double> cdhahn_normalized(int nmax, double xi, double a, double b, double c)
{
    std::vector<double> q(nmax + 1);
    q[0] = std::exp(-0.5 * (ln_gamma(a + b) + ln_gamma(a + c) + ln_gamma(b + c)));
    auto A = [&](int n) { return (n + a + b) * (n + a + c); };
    auto C = [&](int n) { return n * (n + b + c - 1.0); };
    const double shift = a * a + xi * xi;
    for (int n = 0; n < nmax; ++n) {
        double next = (A(n) + C(n) - shift) * q[n];
        if (n > 0) next -= std::sqrt(A(n - 1) * C(n)) * q[n - 1];
        q[n + 1] = next / std::sqrt(A(n) * C(n + 1));
    }
    return q;
}

}  // namespace rbt

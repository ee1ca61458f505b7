#pragma once

// Bilinear and generating-function identities for Jacobi polynomials. Each comes as a
// truncated series and a closed form so the two can be compared.

#include <cmath>

#include "hypergeom.hpp"
#include "orthopoly.hpp"
#include "types.hpp"

namespace rbt {

// sum_{n<N} n! t^n / (1+alpha)_n  P_n^{(lambda-n, alpha)}(x) P_n^{(lambda-n, alpha)}(y)
inline cplx bilinear_jacobi_series(double lambda, double alpha, cplx x, cplx y, cplx t, int N = 80)
{
    cplx sum = 0.0, coef = 1.0;
    for (int n = 0; n < N; ++n) {
        if (n > 0) coef *= double(n) * t / (alpha + n);
        sum += coef * jacobi_p(n, lambda - n, alpha, x) * jacobi_p(n, lambda - n, alpha, y);
    }
    return sum;
}

// (1 - (x-1)(y-1)t/4)^{-(1+lambda+alpha)} (1-t)^lambda
//   2F1(1+lambda+alpha, -lambda; 1+alpha; -(x+1)(y+1)t / ((1-t)(4-(x-1)(y-1)t)))
inline cplx bilinear_jacobi_closed(double lambda, double alpha, cplx x, cplx y, cplx t)
{
    cplx p = (x - 1.0) * (y - 1.0) * t;
    cplx arg = -(x + 1.0) * (y + 1.0) * t / ((1.0 - t) * (4.0 - p));
    return std::pow(1.0 - 0.25 * p, -(1.0 + lambda + alpha)) * std::pow(1.0 - t, lambda) *
           gauss_2f1(1.0 + lambda + alpha, -lambda, 1.0 + alpha, arg);
}

// sum_{k<N} theta^k P_k^{(alpha-k, beta-k)}(V) 2F1(-k, c; b; y)
inline cplx jacobi_generating_series(double alpha, double beta, cplx c, cplx b, cplx V, cplx y, cplx theta, int N = 60)
{
    cplx sum = 0.0, tp = 1.0;
    for (int k = 0; k < N; ++k) {
        sum += tp * jacobi_p(k, alpha - k, beta - k, V) * gauss_2f1(double(-k), c, b, y);
        tp *= theta;
    }
    return sum;
}

// (1+A)^alpha (1+B)^beta F1(c; -alpha, -beta; b; yA/(1+A), yB/(1+B)),  A = (V+1)theta/2, B = (V-1)theta/2
inline cplx jacobi_generating_closed(double alpha, double beta, cplx c, cplx b, cplx V, cplx y, cplx theta)
{
    cplx A = 0.5 * (V + 1.0) * theta, B = 0.5 * (V - 1.0) * theta;
    return std::pow(1.0 + A, alpha) * std::pow(1.0 + B, beta) *
           appell_f1(c, -alpha, -beta, b, y * A / (1.0 + A), y * B / (1.0 + B));
}

}  // namespace rbt

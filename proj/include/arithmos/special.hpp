#pragma once

#include <complex>

namespace arithmos::special {

using cplx = std::complex<double>;

// Lanczos approximation (g = 7, nine terms), relative accuracy near 1e-15
// away from the poles. Reflection handles Re z < 1/2.
cplx gamma(cplx z);
cplx log_gamma(cplx z);

// Hurwitz zeta with its derivative in s, by Euler-Maclaurin summation.
template <class C>
struct HurwitzValueT {
    C value;
    C derivative;         // d/ds
    double error = 0.0;   // size of the last retained correction term
};
using HurwitzValue = HurwitzValueT<cplx>;

struct HurwitzOptions {
    int order = 15;       // number of Bernoulli corrections
    int min_terms = 25;   // direct terms before the tail (grown with |s|)
};

HurwitzValue hurwitz_zeta_full(cplx s, cplx a, HurwitzOptions opt = {});
cplx hurwitz_zeta(cplx s, cplx a);
double hurwitz_zeta(double s, double a);
double riemann_zeta(double s);

constexpr double pi = 3.141592653589793238462643383279502884;

}  // namespace arithmos::special

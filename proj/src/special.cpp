#include "arithmos/special.hpp"
#include "arithmos/quad.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include <array>
#include <cmath>
#include <stdexcept>

namespace arithmos::special {

namespace {

constexpr std::array<double, 9> lanczos_coef = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double lanczos_g = 7.0;

bool at_pole(cplx z) {
    if (z.imag() != 0.0 || z.real() > 0.0) return false;
    return z.real() == std::floor(z.real());
}

cplx lanczos_sum(cplx zm1) {
    cplx x = lanczos_coef[0];
    for (std::size_t i = 1; i < lanczos_coef.size(); ++i)
        x += lanczos_coef[i] / (zm1 + static_cast<double>(i));
    return x;
}

}  // namespace

cplx gamma(cplx z) {
    if (at_pole(z)) throw std::domain_error("gamma: pole at non-positive integer");
    if (z.real() < 0.5) return pi / (std::sin(pi * z) * gamma(1.0 - z));
    const cplx zm1 = z - 1.0;
    const cplx t = zm1 + lanczos_g + 0.5;
    return std::sqrt(2.0 * pi) * std::pow(t, zm1 + 0.5) * std::exp(-t) * lanczos_sum(zm1);
}

cplx log_gamma(cplx z) {
    if (at_pole(z)) throw std::domain_error("log_gamma: pole at non-positive integer");
    if (z.real() < 0.5) return std::log(pi / std::sin(pi * z)) - log_gamma(1.0 - z);
    const cplx zm1 = z - 1.0;
    const cplx t = zm1 + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (zm1 + 0.5) * std::log(t) - t + std::log(lanczos_sum(zm1));
}

namespace {

// Euler-Maclaurin for sum_{k>=0} (a+k)^{-s} and its s-derivative, generic in
// the complex scalar so the same code runs in double and quad precision.
template <class C, class R>
HurwitzValueT<C> hurwitz_em(C s, C a, HurwitzOptions opt) {
    using std::abs;
    using std::exp;
    using std::log;
    using std::ceil;
    if (s == C(1)) throw std::domain_error("hurwitz_zeta: pole at s = 1");
    if (!(real(a) > 0)) throw std::domain_error("hurwitz_zeta: need Re(a) > 0");

    const int n_direct = opt.min_terms + static_cast<int>(ceil(static_cast<double>(abs(s))));

    HurwitzValueT<C> out{C(0), C(0), 0.0};
    for (int k = 0; k < n_direct; ++k) {
        const C w = a + C(k);
        const C lw = log(w);
        const C term = exp(-s * lw);
        out.value += term;
        out.derivative -= lw * term;
    }

    const C one(1), half(R(1) / 2);
    const C w = a + C(n_direct);
    const C lw = log(w);
    const C w_s = exp(-s * lw);  // w^{-s}
    const C w_1s = w * w_s;      // w^{1-s}

    out.value += w_1s / (s - one) + half * w_s;
    out.derivative += -lw * w_1s / (s - one) - w_1s / ((s - one) * (s - one)) - half * lw * w_s;

    // poch = s(s+1)...(s+2j-2), carried with its s-derivative.
    C poch = s;
    C dpoch = one;
    C wpow = w_s / w;  // w^{-s-1}
    const C inv_w2 = one / (w * w);
    double last = 0.0;
    for (int j = 1; j <= opt.order; ++j) {
        const R coef = boost::math::bernoulli_b2n<R>(j) / boost::math::factorial<R>(static_cast<unsigned>(2 * j));
        const C term = C(coef) * poch * wpow;
        out.value += term;
        out.derivative += C(coef) * (dpoch * wpow - lw * poch * wpow);
        last = static_cast<double>(abs(term));

        const C f1 = s + C(2 * j - 1);
        const C f2 = s + C(2 * j);
        dpoch = dpoch * f1 * f2 + poch * (f1 + f2);
        poch = poch * f1 * f2;
        wpow *= inv_w2;
    }
    out.error = last;
    return out;
}

}  // namespace

HurwitzValue hurwitz_zeta_full(cplx s, cplx a, HurwitzOptions opt) { return hurwitz_em<cplx, double>(s, a, opt); }

HurwitzValueT<quad_complex> hurwitz_zeta_quad(quad_complex s, quad_complex a, HurwitzOptions opt) {
    return hurwitz_em<quad_complex, quad_real>(s, a, opt);
}

cplx hurwitz_zeta(cplx s, cplx a) { return hurwitz_zeta_full(s, a).value; }

double hurwitz_zeta(double s, double a) { return hurwitz_zeta_full(cplx(s, 0.0), cplx(a, 0.0)).value.real(); }

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

}  // namespace arithmos::special

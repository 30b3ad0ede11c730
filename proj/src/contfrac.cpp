#include "arithmos/contfrac.hpp"

#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace arithmos::contfrac {

namespace {

std::int64_t to_i64(const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
}

// n = f^2 * r with r squarefree.
std::pair<BigInt, std::int64_t> split_square(BigInt n) {
    if (n <= 0) throw std::domain_error("split_square: expected a positive integer");
    BigInt f = 1, r = 1;
    for (BigInt p = 2; p * p <= n; ++p) {
        if (p > 10'000'000) throw std::overflow_error("split_square: discriminant too large to factor");
        while ((n % (p * p)).is_zero()) {
            n /= p * p;
            f *= p;
        }
        if ((n % p).is_zero()) {
            n /= p;
            r *= p;
        }
    }
    r *= n;
    return {f, to_i64(r)};
}

Mat2 product(const std::vector<std::int64_t>& digits) {
    Mat2 g = Mat2::identity();
    for (auto k : digits) g = g * digit_matrix(k);
    return g;
}

// Attracting fixed point in (0,1) of a product of digit matrices.
QuadraticSurd periodic_root(const Mat2& g) {
    const BigInt disc = (g.d - g.a) * (g.d - g.a) + 4 * g.b * g.c;
    const auto [f, r] = split_square(disc);
    return QuadraticSurd(g.a - g.d, f, 2 * g.c, r);
}

}  // namespace

Mat2i Mat2::reduced() const { return {to_i64(a), to_i64(b), to_i64(c), to_i64(d)}; }

std::int64_t ContinuedFraction::digit(std::size_t i) const {
    if (i == 0) throw std::out_of_range("digit index starts at 1");
    if (i <= preperiod.size()) return preperiod[i - 1];
    if (period.empty()) throw std::out_of_range("digit index beyond a finite expansion");
    return period[(i - 1 - preperiod.size()) % period.size()];
}

std::int64_t leading_digit(const QuadraticSurd& x) {
    if (x.sign() <= 0 || !(x < QuadraticSurd::integer(1)))
        throw std::domain_error("Gauss shift needs 0 < x < 1");
    return to_i64(x.reciprocal().floor());
}

QuadraticSurd gauss_shift(const QuadraticSurd& x) {
    if (x.is_zero()) throw std::domain_error("gauss_shift: x = 0");
    const QuadraticSurd y = x.reciprocal();
    return y - QuadraticSurd::integer(y.floor());
}

ContinuedFraction cf_expand(const QuadraticSurd& x) {
    ContinuedFraction cf;
    cf.integer_part = x.floor();
    QuadraticSurd y = x - QuadraticSurd::integer(cf.integer_part);
    std::vector<std::int64_t> digits;
    if (x.is_rational()) {
        while (!y.is_zero()) {
            digits.push_back(leading_digit(y));
            y = gauss_shift(y);
        }
        cf.preperiod = std::move(digits);
        return cf;
    }
    std::unordered_map<QuadraticSurd, std::size_t, SurdHash> seen;
    while (true) {
        auto [it, fresh] = seen.emplace(y, digits.size());
        if (!fresh) {
            const std::size_t start = it->second;
            cf.preperiod.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(start));
            cf.period.assign(digits.begin() + static_cast<std::ptrdiff_t>(start), digits.end());
            return cf;
        }
        digits.push_back(leading_digit(y));
        y = gauss_shift(y);
    }
}

QuadraticSurd mobius(const Mat2& g, const QuadraticSurd& x) {
    const QuadraticSurd den = QuadraticSurd::integer(g.c) * x + QuadraticSurd::integer(g.d);
    if (den.is_zero()) throw std::domain_error("fractional-linear action: pole (c*theta + d = 0)");
    return (QuadraticSurd::integer(g.a) * x + QuadraticSurd::integer(g.b)) / den;
}

QuadraticSurd cf_value(const ContinuedFraction& cf) {
    for (auto k : cf.preperiod)
        if (k < 1) throw std::invalid_argument("continued fraction digits must be >= 1");
    for (auto k : cf.period)
        if (k < 1) throw std::invalid_argument("continued fraction digits must be >= 1");
    const Mat2 head = product(cf.preperiod);
    QuadraticSurd frac;
    if (cf.period.empty()) {
        // [k1..kn] = head applied to 0
        frac = cf.preperiod.empty() ? QuadraticSurd() : QuadraticSurd::rational(head.b, head.d);
    } else {
        frac = mobius(head, periodic_root(product(cf.period)));
    }
    return frac + QuadraticSurd::integer(cf.integer_part);
}

ConvergentList convergents(const ContinuedFraction& cf, std::size_t n) {
    if (n < 1) throw std::invalid_argument("convergents: n must be >= 1");
    ConvergentList out;
    BigInt p_prev = 1, q_prev = 0;              // index -1
    BigInt p = cf.integer_part, q = 1;          // index 0
    for (std::size_t i = 1; i <= n; ++i) {
        if (cf.is_rational() && i > cf.finite_length()) {
            out.truncated = true;
            break;
        }
        const std::int64_t k = cf.digit(i);
        BigInt p_next = k * p + p_prev;
        BigInt q_next = k * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(p_next);
        q = std::move(q_next);
        out.items.push_back({p, q, i});
    }
    return out;
}

std::pair<QuadraticSurd, int> generalized_shift(const QuadraticSurd& x, int s, const CosetSpace& space) {
    const std::int64_t k = leading_digit(x);
    return {gauss_shift(x), space.shift_step(k, s)};
}

PeriodData surd_period_matrix(const QuadraticSurd& x) {
    if (x.is_rational()) throw std::domain_error("surd_period_matrix: no period (rational input)");
    const ContinuedFraction cf = cf_expand(x);
    PeriodData out;
    out.preperiod_stripped = cf.preperiod.size();
    out.period = cf.period.size();
    QuadraticSurd y = x - QuadraticSurd::integer(cf.integer_part);
    for (std::size_t i = 0; i < cf.preperiod.size(); ++i) y = gauss_shift(y);
    out.reduced = y;
    out.g = product(cf.period);
    if (!(mobius(out.g, y) == y)) throw std::logic_error("surd_period_matrix: period matrix does not fix the point");

    const BigInt tr = out.g.trace();
    const BigInt disc = tr * tr - 4 * out.g.det();
    auto [f, r] = split_square(disc);
    out.eigenvalue = QuadraticSurd(tr, f, 2, r);
    out.eigenvalue_value = out.eigenvalue.to_double();
    return out;
}

QuadraticSurd morita_theta_action(const QuadraticSurd& theta, const Mat2& g) { return mobius(g, theta); }

double morita_theta_action(double theta, const Mat2& g) {
    const double c = static_cast<double>(g.c), d = static_cast<double>(g.d);
    const double den = c * theta + d;
    if (den == 0.0) throw std::domain_error("fractional-linear action: pole (c*theta + d = 0)");
    return (static_cast<double>(g.a) * theta + static_cast<double>(g.b)) / den;
}

}  // namespace arithmos::contfrac

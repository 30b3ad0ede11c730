#include "arithmos/surd.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <functional>
#include <stdexcept>

namespace arithmos {

BigInt floor_div(const BigInt& a, const BigInt& b) {
    if (b.is_zero()) throw std::domain_error("floor_div: division by zero");
    BigInt q = a / b;
    BigInt r = a - q * b;
    if (!r.is_zero() && ((r < 0) != (b < 0))) q -= 1;
    return q;
}

bool is_squarefree(std::int64_t d) {
    if (d <= 0) return false;
    for (std::int64_t p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) return false;
    return true;
}

QuadraticSurd::QuadraticSurd(BigInt a, BigInt b, BigInt c, std::int64_t d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(d) {
    if (c_.is_zero()) throw std::invalid_argument("QuadraticSurd: zero denominator");
    if (!is_squarefree(d_)) throw std::invalid_argument("QuadraticSurd: radicand must be a squarefree positive integer");
    canonicalize();
}

QuadraticSurd QuadraticSurd::rational(const BigInt& p, const BigInt& q) { return QuadraticSurd(p, 0, q, 1); }

void QuadraticSurd::canonicalize() {
    if (d_ == 1) {
        a_ += b_;
        b_ = 0;
    }
    if (b_.is_zero()) d_ = 1;
    if (c_ < 0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
    }
    BigInt g = gcd(gcd(abs(a_), abs(b_)), c_);
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
    }
}

std::int64_t QuadraticSurd::common_radicand(const QuadraticSurd& x, const QuadraticSurd& y) {
    if (x.is_rational()) return y.d_;
    if (y.is_rational()) return x.d_;
    if (x.d_ != y.d_) throw std::invalid_argument("QuadraticSurd: mixed radicands are not in one quadratic field");
    return x.d_;
}

int QuadraticSurd::sign() const {
    const int sa = a_.sign(), sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    const BigInt lhs = a_ * a_;
    const BigInt rhs = b_ * b_ * d_;
    return lhs > rhs ? sa : sb;  // equality impossible for squarefree d > 1
}

BigInt QuadraticSurd::floor() const {
    if (is_rational()) return floor_div(a_, c_);
    const BigInt root = sqrt(BigInt(b_ * b_ * d_));  // floor(|b| sqrt d), never exact
    const BigInt t = b_ > 0 ? root : BigInt(-root - 1);
    return floor_div(a_ + t, c_);
}

long double QuadraticSurd::to_long_double() const {
    using boost::multiprecision::cpp_bin_float_50;
    cpp_bin_float_50 a(a_), b(b_), c(c_), d(d_);
    // Opposite signs: rationalize to avoid cancellation.
    if (a_.sign() * b_.sign() < 0) {
        cpp_bin_float_50 num(BigInt(a_ * a_ - b_ * b_ * d_));
        return static_cast<long double>(num / (c * (a - b * sqrt(d))));
    }
    return static_cast<long double>((a + b * sqrt(d)) / c);
}

double QuadraticSurd::to_double() const { return static_cast<double>(to_long_double()); }

QuadraticSurd QuadraticSurd::conjugate() const { return QuadraticSurd(a_, -b_, c_, d_); }

QuadraticSurd QuadraticSurd::reciprocal() const {
    if (is_zero()) throw std::domain_error("QuadraticSurd: reciprocal of zero");
    // c / (a + b sqrt d) = c (a - b sqrt d) / (a^2 - b^2 d)
    const BigInt norm = a_ * a_ - b_ * b_ * d_;
    return QuadraticSurd(c_ * a_, -c_ * b_, norm, d_);
}

QuadraticSurd QuadraticSurd::operator-() const { return QuadraticSurd(-a_, -b_, c_, d_); }

QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y) {
    const std::int64_t d = QuadraticSurd::common_radicand(x, y);
    return QuadraticSurd(x.a_ * y.c_ + y.a_ * x.c_, x.b_ * y.c_ + y.b_ * x.c_, x.c_ * y.c_, d);
}

QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y) { return x + (-y); }

QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y) {
    const std::int64_t d = QuadraticSurd::common_radicand(x, y);
    return QuadraticSurd(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, x.c_ * y.c_, d);
}

QuadraticSurd operator/(const QuadraticSurd& x, const QuadraticSurd& y) { return x * y.reciprocal(); }

std::string QuadraticSurd::to_string() const {
    std::string s = "(" + a_.str();
    if (!b_.is_zero()) s += (b_ < 0 ? " - " : " + ") + BigInt(abs(b_)).str() + "*sqrt(" + std::to_string(d_) + ")";
    return s + ")/" + c_.str();
}

std::size_t QuadraticSurd::hash() const {
    std::hash<std::string> h;
    return h(a_.str() + "|" + b_.str() + "|" + c_.str() + "|" + std::to_string(d_));
}

}  // namespace arithmos

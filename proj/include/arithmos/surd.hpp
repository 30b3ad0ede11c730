#pragma once

#include "arithmos/intmat.hpp"

#include <cstdint>
#include <string>

namespace arithmos {

BigInt floor_div(const BigInt& a, const BigInt& b);
bool is_squarefree(std::int64_t d);

// The real number (a + b*sqrt(d)) / c, kept in lowest terms with c > 0.
// Rationals are stored with b = 0 and d = 1.
class QuadraticSurd {
public:
    QuadraticSurd() : a_(0), b_(0), c_(1), d_(1) {}
    QuadraticSurd(BigInt a, BigInt b, BigInt c, std::int64_t d);
    static QuadraticSurd rational(const BigInt& p, const BigInt& q);
    static QuadraticSurd integer(const BigInt& n) { return rational(n, 1); }

    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    const BigInt& c() const { return c_; }
    std::int64_t d() const { return d_; }

    bool is_rational() const { return b_.is_zero(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    int sign() const;
    BigInt floor() const;
    double to_double() const;
    long double to_long_double() const;

    QuadraticSurd conjugate() const;
    QuadraticSurd reciprocal() const;
    QuadraticSurd operator-() const;

    friend QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y);
    friend QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y);
    friend QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y);
    friend QuadraticSurd operator/(const QuadraticSurd& x, const QuadraticSurd& y);
    friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) = default;
    friend bool operator<(const QuadraticSurd& x, const QuadraticSurd& y) { return (x - y).sign() < 0; }

    std::string to_string() const;
    std::size_t hash() const;

private:
    void canonicalize();
    static std::int64_t common_radicand(const QuadraticSurd& x, const QuadraticSurd& y);

    BigInt a_, b_, c_;
    std::int64_t d_;
};

struct SurdHash {
    std::size_t operator()(const QuadraticSurd& x) const { return x.hash(); }
};

}  // namespace arithmos

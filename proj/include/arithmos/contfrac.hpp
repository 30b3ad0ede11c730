#pragma once

#include "arithmos/coset.hpp"
#include "arithmos/surd.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace arithmos::contfrac {

// 2x2 integer matrix with unbounded entries.
struct Mat2 {
    BigInt a, b, c, d;
    static Mat2 identity() { return {1, 0, 0, 1}; }
    BigInt det() const { return a * d - b * c; }
    BigInt trace() const { return a + d; }
    Mat2i reduced() const;  // entries as machine integers (throws on overflow)
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

inline Mat2 digit_matrix(std::int64_t k) { return {0, 1, 1, k}; }

// Digits k_1, k_2, ... of the fractional part; integer_part holds floor(x).
struct ContinuedFraction {
    BigInt integer_part = 0;
    std::vector<std::int64_t> preperiod;
    std::vector<std::int64_t> period;

    bool is_rational() const { return period.empty(); }
    // k_i for i >= 1; throws past the end of a finite expansion.
    std::int64_t digit(std::size_t i) const;
    std::size_t finite_length() const { return preperiod.size(); }
};

struct Convergent {
    BigInt p, q;
    std::size_t n;
};

struct ConvergentList {
    std::vector<Convergent> items;
    bool truncated = false;  // the expansion ended before n terms
};

ContinuedFraction cf_expand(const QuadraticSurd& x);
QuadraticSurd cf_value(const ContinuedFraction& cf);  // exact value, also for periodic tails
ConvergentList convergents(const ContinuedFraction& cf, std::size_t n);

QuadraticSurd gauss_shift(const QuadraticSurd& x);
std::int64_t leading_digit(const QuadraticSurd& x);  // floor(1/x) for 0 < x < 1

std::pair<QuadraticSurd, int> generalized_shift(const QuadraticSurd& x, int s, const CosetSpace& space);

struct PeriodData {
    Mat2 g;                       // product of the digit matrices over one period
    std::size_t period = 0;
    std::size_t preperiod_stripped = 0;
    QuadraticSurd reduced;        // the purely periodic point fixed by g
    QuadraticSurd eigenvalue;     // larger root of t^2 - tr(g) t + det(g)
    double eigenvalue_value = 0.0;
};
PeriodData surd_period_matrix(const QuadraticSurd& x);

QuadraticSurd morita_theta_action(const QuadraticSurd& theta, const Mat2& g);
double morita_theta_action(double theta, const Mat2& g);

// Fractional-linear action on a surd (used by the fixed-point checks).
QuadraticSurd mobius(const Mat2& g, const QuadraticSurd& x);

}  // namespace arithmos::contfrac

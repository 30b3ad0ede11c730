#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arithmos/contfrac.hpp"

#include <cmath>
#include <random>

using namespace arithmos;
using namespace arithmos::contfrac;

namespace {
const QuadraticSurd golden_conj(-1, 1, 2, 5);  // (sqrt5 - 1)/2
const QuadraticSurd silver_conj(-1, 1, 1, 2);  // sqrt2 - 1
}  // namespace

TEST_CASE("surd canonical form and arithmetic") {
    QuadraticSurd x(2, -4, -6, 3);
    CHECK(x.a() == -1);
    CHECK(x.b() == 2);
    CHECK(x.c() == 3);
    CHECK_THROWS_AS(QuadraticSurd(1, 1, 1, 8), std::invalid_argument);
    CHECK_THROWS_AS(QuadraticSurd(1, 1, 0, 2), std::invalid_argument);
    CHECK(golden_conj * golden_conj + golden_conj == QuadraticSurd::integer(1));
    CHECK(silver_conj.reciprocal() == silver_conj + QuadraticSurd::integer(2));
    CHECK(std::abs(golden_conj.to_double() - (std::sqrt(5.0) - 1) / 2) < 1e-16);
    CHECK(QuadraticSurd(7, -3, 1, 5).sign() > 0);   // 7 - 3*2.236 > 0
    CHECK(QuadraticSurd(6, -3, 1, 5).sign() < 0);
    CHECK(QuadraticSurd(3, 1, 2, 7).floor() == 2);  // (3 + 2.6458)/2
    CHECK(QuadraticSurd(-3, -1, 2, 7).floor() == -3);
}

TEST_CASE("cf_expand examples") {
    auto g = cf_expand(golden_conj);
    CHECK(g.preperiod.empty());
    CHECK(g.period == std::vector<std::int64_t>{1});
    auto s = cf_expand(silver_conj);
    CHECK(s.preperiod.empty());
    CHECK(s.period == std::vector<std::int64_t>{2});
    auto r = cf_expand(QuadraticSurd::rational(2, 5));
    CHECK(r.preperiod == std::vector<std::int64_t>{2, 2});
    CHECK(r.period.empty());
    CHECK(cf_expand(QuadraticSurd()).preperiod.empty());
    // sqrt(7) = [2; 1,1,1,4]
    auto s7 = cf_expand(QuadraticSurd(0, 1, 1, 7));
    CHECK(s7.integer_part == 2);
    CHECK(s7.preperiod.empty());
    CHECK(s7.period == std::vector<std::int64_t>{1, 1, 1, 4});
    // (1 + sqrt 3)/5 has a preperiod
    auto pp = cf_expand(QuadraticSurd(1, 1, 5, 3));
    CHECK(!pp.preperiod.empty());
    CHECK(cf_value(pp) == QuadraticSurd(1, 1, 5, 3));
}

TEST_CASE("value reconstruction is the inverse of expansion") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> digit(1, 9), len(0, 4), plen(1, 4);
    for (int t = 0; t < 200; ++t) {
        ContinuedFraction cf;
        for (int i = len(rng); i > 0; --i) cf.preperiod.push_back(digit(rng));
        for (int i = plen(rng); i > 0; --i) cf.period.push_back(digit(rng));
        const QuadraticSurd v = cf_value(cf);
        const ContinuedFraction back = cf_expand(v);
        // Compare digit streams, which is insensitive to how the period is rotated or repeated.
        for (std::size_t i = 1; i <= 40; ++i) REQUIRE(back.digit(i) == cf.digit(i));
    }
    for (int p = 1; p < 60; ++p)
        for (int q = p + 1; q < 60; ++q) {
            const auto x = QuadraticSurd::rational(p, q);
            const auto cf = cf_expand(x);
            REQUIRE(cf_value(cf) == x);
            if (cf.preperiod.size() > 0 && !(cf.preperiod.size() == 1 && cf.preperiod[0] == 1))
                REQUIRE(cf.preperiod.back() != 1);
        }
}

TEST_CASE("convergents") {
    ContinuedFraction ones;
    ones.period = {1};
    auto c = convergents(ones, 5);
    std::vector<int> q;
    for (auto& it : c.items) q.push_back(static_cast<int>(it.q));
    CHECK(q == std::vector<int>{1, 2, 3, 5, 8});

    ContinuedFraction twos;
    twos.period = {2};
    auto t = convergents(twos, 3);
    CHECK(t.items[0].p == 1);
    CHECK(t.items[0].q == 2);
    CHECK(t.items[1].p == 2);
    CHECK(t.items[1].q == 5);
    CHECK(t.items[2].p == 5);
    CHECK(t.items[2].q == 12);

    auto r = convergents(cf_expand(QuadraticSurd::rational(2, 5)), 10);
    CHECK(r.truncated);
    CHECK(r.items.back().p == 2);
    CHECK(r.items.back().q == 5);
}

TEST_CASE("convergent bound, determinant and monotonicity for surds") {
    const std::vector<QuadraticSurd> xs = {golden_conj, silver_conj, QuadraticSurd(1, 1, 5, 3),
                                           QuadraticSurd(-2, 1, 1, 7), QuadraticSurd(3, 2, 11, 13)};
    for (const auto& x0 : xs) {
        const QuadraticSurd x = x0 - QuadraticSurd::integer(x0.floor());
        const auto cf = cf_expand(x);
        const auto c = convergents(cf, 51);
        BigInt pp = 0, qp = 1;  // p_0/q_0 of a number in (0,1)
        for (std::size_t i = 0; i + 1 < c.items.size(); ++i) {
            const auto& cv = c.items[i];
            const auto err = x - QuadraticSurd::rational(cv.p, cv.q);
            const auto bound = QuadraticSurd::rational(1, cv.q * c.items[i + 1].q);
            REQUIRE(((err.sign() >= 0 ? err : -err) < bound));
            REQUIRE(gcd(cv.p, cv.q) == 1);
            const BigInt det = pp * cv.q - cv.p * qp;
            REQUIRE(abs(det) == 1);
            if (i >= 1) REQUIRE(cv.q > qp);
            pp = cv.p;
            qp = cv.q;
        }
        // g_n = product of digit matrices has determinant (-1)^n
        Mat2 g = Mat2::identity();
        for (std::size_t n = 1; n <= 20; ++n) {
            g = g * digit_matrix(cf.digit(n));
            REQUIRE(g.det() == (n % 2 == 0 ? 1 : -1));
        }
    }
}

TEST_CASE("gauss shift examples") {
    CHECK(gauss_shift(QuadraticSurd::rational(2, 5)) == QuadraticSurd::rational(1, 2));
    CHECK(gauss_shift(golden_conj) == golden_conj);
    CHECK(gauss_shift(silver_conj) == silver_conj);
    CHECK_THROWS_AS(gauss_shift(QuadraticSurd()), std::domain_error);
    // shift drops the first digit
    const QuadraticSurd x(1, 1, 5, 3);
    const auto a = cf_expand(x), b = cf_expand(gauss_shift(x));
    for (std::size_t i = 1; i < 20; ++i) CHECK(b.digit(i) == a.digit(i + 1));
}

TEST_CASE("coset space of level 2") {
    CosetSpace p(2);
    CHECK(p.size() == 3);
    const int zero = p.zero(), one = p.index_of(1, 1), inf = p.infinity();
    // even digit: 0 <-> inf, 1 fixed
    CHECK(p.shift_step(2, zero) == inf);
    CHECK(p.shift_step(2, inf) == zero);
    CHECK(p.shift_step(2, one) == one);
    // odd digit: 0 -> inf, 1 -> 0, inf -> 1
    CHECK(p.shift_step(1, zero) == inf);
    CHECK(p.shift_step(1, one) == zero);
    CHECK(p.shift_step(1, inf) == one);
    for (int s = 0; s < 3; ++s) {
        CHECK(p.sigma(p.sigma(s)) == s);
        CHECK(p.tau(p.tau(p.tau(s))) == s);
        CHECK(p.branch_step(5, p.shift_step(5, s)) == s);
    }
}

TEST_CASE("coset action is a group action") {
    for (int n : {2, 3, 5, 6, 11, 12}) {
        CosetSpace p(n);
        std::mt19937 rng(n);
        std::uniform_int_distribution<int> e(-7, 7);
        for (int t = 0; t < 100; ++t) {
            Mat2i g = CosetSpace::shift_matrix(e(rng)) * CosetSpace::shift_matrix(e(rng));
            Mat2i h = CosetSpace::sigma_matrix() * CosetSpace::shift_matrix(e(rng));
            for (int s = 0; s < p.size(); ++s) REQUIRE(p.act(g * h, s) == p.act(g, p.act(h, s)));
        }
    }
}

TEST_CASE("generalized shift") {
    CosetSpace p(2);
    const QuadraticSurd even_x = QuadraticSurd::rational(2, 5);   // floor(5/2) = 2
    const QuadraticSurd odd_x = QuadraticSurd::rational(3, 4);    // floor(4/3) = 1
    CHECK(generalized_shift(even_x, p.zero(), p).second == p.infinity());
    CHECK(generalized_shift(odd_x, p.index_of(1, 1), p).second == p.zero());
    CHECK(generalized_shift(odd_x, 0, p).first == gauss_shift(odd_x));

    // A full period returns x and moves s by the period matrix mod N.
    for (int n : {2, 3, 7}) {
        CosetSpace q(n);
        const QuadraticSurd x(-2, 1, 1, 7);  // sqrt7 - 2, purely periodic [1,1,1,4]
        const auto pd = surd_period_matrix(x);
        for (int s = 0; s < q.size(); ++s) {
            QuadraticSurd y = x;
            int t = s;
            for (std::size_t i = 0; i < pd.period; ++i) std::tie(y, t) = generalized_shift(y, t, q);
            CHECK(y == x);
            // the shift steps compose to the inverse of g
            CHECK(q.act(pd.g.reduced(), t) == s);
        }
    }
}

TEST_CASE("period matrix") {
    auto g = surd_period_matrix(golden_conj);
    CHECK(g.g == Mat2{0, 1, 1, 1});
    CHECK(g.period == 1);
    CHECK(g.eigenvalue == QuadraticSurd(1, 1, 2, 5));
    auto s = surd_period_matrix(silver_conj);
    CHECK(s.g == Mat2{0, 1, 1, 2});
    CHECK(s.eigenvalue == QuadraticSurd(1, 1, 1, 2));
    CHECK(s.eigenvalue_value > 1.0);

    ContinuedFraction cf;
    cf.period = {1, 2};
    const QuadraticSurd x = cf_value(cf);
    CHECK(x == QuadraticSurd(-1, 1, 1, 3));
    auto p = surd_period_matrix(x);
    CHECK(p.g == Mat2{1, 2, 1, 3});
    CHECK(mobius(p.g, x) == x);
    CHECK_THROWS_AS(surd_period_matrix(QuadraticSurd::rational(1, 3)), std::domain_error);

    auto pp = surd_period_matrix(QuadraticSurd(1, 1, 5, 3));
    CHECK(pp.preperiod_stripped > 0);
    CHECK(mobius(pp.g, pp.reduced) == pp.reduced);
}

TEST_CASE("Morita action") {
    CHECK(morita_theta_action(silver_conj, Mat2::identity()) == silver_conj);
    CHECK(morita_theta_action(silver_conj, Mat2{0, 1, 1, 2}) == silver_conj);
    CHECK(morita_theta_action(QuadraticSurd::rational(1, 3), Mat2{0, -1, 1, 0}) == QuadraticSurd::integer(-3));
    CHECK(morita_theta_action(1.0 / 3.0, Mat2{0, -1, 1, 0}) == doctest::Approx(-3.0));
    CHECK_THROWS_AS(morita_theta_action(QuadraticSurd::rational(1, 2), Mat2{1, 0, 2, -1}), std::domain_error);
}

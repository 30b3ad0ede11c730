#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arithmos/schottky.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace arithmos::schottky;

namespace {

std::vector<Circle> four_circles() { return {{{-2, 0}, 0.5}, {{0, 2}, 0.5}, {{2, 0}, 0.5}, {{0, -2}, 0.5}}; }

SchottkyGroup genus_two() { return SchottkyGroup::from_circles(four_circles(), {0.3, -0.7}); }

Point fin(double re, double im = 0.0) { return Point::finite({re, im}); }

cplx value(const Point& p) { return p.value(); }

}  // namespace

TEST_CASE("Moebius maps: fixed points, multiplier and the half-space extension") {
    const MoebiusMap m(2.0 + cplx(0, 1.0), 1.0, cplx(0, 0.5), 1.0);
    const Point zp = m.attracting(), zm = m.repelling();
    CHECK(std::abs(value(m(zp)) - value(zp)) < 1e-12);
    CHECK(std::abs(value(m(zm)) - value(zm)) < 1e-12);
    // the derivative at z+ is 1/kappa and at z- is kappa
    auto deriv = [&](cplx z) { return 1.0 / ((m.c() * z + m.d()) * (m.c() * z + m.d())); };
    CHECK(std::abs(deriv(value(zp))) < 1.0);
    CHECK(std::abs(deriv(value(zm))) > 1.0);
    CHECK(std::abs(deriv(value(zp)) - 1.0 / m.multiplier()) < 1e-12);
    CHECK(std::abs(m.multiplier()) > 1.0);

    const MoebiusMap rotation(std::exp(cplx(0, 0.3)), 0.0, 0.0, std::exp(-cplx(0, 0.3)));
    CHECK_FALSE(rotation.loxodromic());
    CHECK_THROWS_AS(rotation.attracting(), std::domain_error);
    CHECK_THROWS_AS(MoebiusMap(1.0, 2.0, 2.0, 4.0), std::invalid_argument);

    // dilation: 0 attracts, infinity repels
    const MoebiusMap dil(0.25, 0.0, 0.0, 1.0);
    CHECK(std::abs(value(dil.attracting())) < 1e-15);
    CHECK(dil.repelling().is_infinity());

    // the Poincare extension is an isometry of the half-space
    const SpacePoint p{0.3 + cplx(0, 0.1), 0.7}, q{-1.2 + cplx(0, 0.4), 0.2};
    CHECK(hyperbolic_distance(m(p), m(q)) == doctest::Approx(hyperbolic_distance(p, q)).epsilon(1e-12));
}

TEST_CASE("word enumeration counts, homomorphism and budget") {
    const auto g = genus_two();
    CHECK(enumerate_words(g, 1).size() == 5);
    CHECK(enumerate_words(g, 2).size() == 17);
    for (int n = 0; n <= 6; ++n) CHECK(enumerate_words(g, n).size() == word_count(2, n));
    CHECK(word_count(3, 2) == 1 + 6 + 30);

    const auto words = enumerate_words(g, 4);
    for (std::size_t i = 1; i < words.size(); ++i) CHECK(words[i - 1].letters.size() <= words[i].letters.size());
    // non-cancelling concatenation multiplies the matrices
    const auto& u = words[7];
    std::size_t j = 20;
    while (words[j].letters.front() == g.inverse_letter(u.letters.back())) ++j;
    const auto& v = words[j];
    MoebiusMap direct;
    for (int l : u.letters) direct = direct * g.letter(l);
    for (int l : v.letters) direct = direct * g.letter(l);
    const MoebiusMap product = u.map * v.map;
    const Point z = fin(0.37, -0.21);
    CHECK(chordal_distance(direct(z), product(z)) < 1e-12);

    GroupOptions tight;
    tight.word_budget = 100;
    const auto small = SchottkyGroup::from_circles(four_circles(), {}, tight);
    try {
        enumerate_words(small, 5);
        FAIL("expected a budget error");
    } catch (const std::length_error& e) {
        CHECK(std::string(e.what()).find("485") != std::string::npos);
    }
}

TEST_CASE("conjugates of a generator are indexed without repetition") {
    // words not ending in gamma^{+-1} give distinct fixed-point pairs, so the
    // class sums need no separate deduplication
    const auto g = genus_two();
    for (int k = 0; k < 2; ++k) {
        const Point zp = g.generator(k).attracting(), zm = g.generator(k).repelling();
        std::set<std::pair<long long, long long>> seen;
        std::size_t visited = 0, expected = 0;
        for_each_word(
            g, 5,
            [&](const Word& w) {
                ++visited;
                const cplx a = value(w.map(zp)), b = value(w.map(zm));
                seen.insert({std::llround(a.real() * 1e9) * 7919 + std::llround(a.imag() * 1e9),
                             std::llround(b.real() * 1e9) * 7919 + std::llround(b.imag() * 1e9)});
            },
            {k, g.inverse_letter(k)});
        // each letter ends 3^{n-1} of the 4 * 3^{n-1} words of length n; two letters are excluded
        expected = 1;
        for (int n = 1; n <= 5; ++n) expected += static_cast<std::size_t>(2 * std::pow(3, n - 1));
        CHECK(seen.size() == visited);
        CHECK(visited == expected);
    }
}

TEST_CASE("classical marking is checked") {
    const auto g = genus_two();
    CHECK(g.marking_defect() < 1e-12);
    // a generator that does not pair the circles is rejected
    std::vector<MoebiusMap> wrong = {MoebiusMap(3.0, 0.0, 0.0, 1.0), g.generator(1)};
    CHECK_THROWS_AS(SchottkyGroup(wrong, four_circles()), std::invalid_argument);
    // overlapping circles are rejected
    CHECK_THROWS_AS(SchottkyGroup::from_circles({{{0, 0}, 1.0}, {{0.5, 0}, 1.0}}), std::invalid_argument);
    // limit points lie inside the circles
    const auto pts = limit_points(g, 6);
    CHECK(pts.size() == 4 * 243);
    for (cplx z : pts) {
        bool inside = false;
        for (const auto& c : four_circles()) inside = inside || std::abs(z - c.center) < c.radius;
        CHECK(inside);
    }
}

TEST_CASE("cross-ratio") {
    const Point inf = Point::infinity();
    // the infinity slot against a far finite point
    for (double x : {0.3, -2.0, 5.5}) {
        const cplx limit = cross_ratio(fin(0), fin(1), inf, fin(x));
        const double r = 1e7;
        const cplx near = cross_ratio(fin(0), fin(1), fin(r), fin(x));
        CHECK(std::abs(limit - near) < 1e-6 * std::abs(limit));
        CHECK(std::abs(limit - (1.0 - x) / (-x)) < 1e-14);
    }
    CHECK(std::abs(cross_ratio(fin(3), fin(2), fin(0), inf) - 1.5) < 1e-15);
    CHECK_THROWS_AS(cross_ratio(fin(1), fin(2), fin(3), fin(1)), std::domain_error);
    CHECK_THROWS_AS(cross_ratio(fin(1), fin(2), fin(2), fin(4)), std::domain_error);

    std::mt19937_64 rng(7);
    std::normal_distribution<double> n(0.0, 1.0);
    const MoebiusMap m(1.0 + cplx(0, 2.0), -0.5, cplx(0, 0.3), 2.0);
    for (int i = 0; i < 100; ++i) {
        const Point a = fin(n(rng), n(rng)), b = fin(n(rng), n(rng)), c = fin(n(rng), n(rng)), d = fin(n(rng), n(rng));
        const cplx x = cross_ratio(a, b, c, d);
        CHECK(std::abs(cross_ratio(b, a, d, c) - x) < 1e-12 * std::abs(x));
        CHECK(std::abs(cross_ratio(m(a), m(b), m(c), m(d)) - x) < 1e-12 * std::abs(x));
    }
}

TEST_CASE("geodesic feet") {
    const Point inf = Point::infinity();
    auto foot = geodesic_foot(fin(1), fin(0), inf);
    CHECK(std::abs(foot.z) < 1e-15);
    CHECK(foot.y == doctest::Approx(1.0));
    foot = geodesic_foot(fin(0, 2), fin(0), inf);
    CHECK(std::abs(foot.z) < 1e-15);
    CHECK(foot.y == doctest::Approx(2.0));
    CHECK_THROWS_AS(geodesic_foot(fin(1), fin(2), fin(2)), std::domain_error);

    std::mt19937_64 rng(11);
    std::normal_distribution<double> n(0.0, 1.0);
    const MoebiusMap m(0.5 + cplx(0, 1.0), 2.0, -0.3, cplx(0, 1.5));
    for (int i = 0; i < 50; ++i) {
        const Point a = fin(n(rng), n(rng)), c = fin(n(rng), n(rng)), d = fin(n(rng), n(rng));
        const SpacePoint f = geodesic_foot(a, c, d);
        // the foot lies on the hemisphere over the segment [c, d]
        const cplx mid = (value(c) + value(d)) / 2.0;
        const double rad = std::abs(value(c) - value(d)) / 2.0;
        CHECK(std::norm(f.z - mid) + f.y * f.y == doctest::Approx(rad * rad).epsilon(1e-10));
        // and moves with the configuration
        const SpacePoint moved = geodesic_foot(m(a), m(c), m(d)), image = m(f);
        CHECK(hyperbolic_distance(moved, image) < 1e-8);
    }
}

TEST_CASE("cross-ratio and oriented distance of feet") {
    const Point inf = Point::infinity();
    for (auto [x, y] : {std::pair{2.0, 0.5}, std::pair{0.1, 7.0}, std::pair{3.0, 3.0}}) {
        const auto r = ordist_identity_check(fin(x), fin(y), fin(0), inf);
        CHECK(r.lhs == doctest::Approx(std::log(x / y)).epsilon(1e-15));
        CHECK(std::abs(r.rhs - std::log(x / y)) < 1e-14);
    }
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 1.0);
    const MoebiusMap m(2.0, cplx(0, 1.0), 0.4, 1.0);
    for (int i = 0; i < 100; ++i) {
        const Point a = fin(n(rng), n(rng)), b = fin(n(rng), n(rng)), c = fin(n(rng), n(rng)), d = fin(n(rng), n(rng));
        const auto r = ordist_identity_check(a, b, c, d);
        CHECK(std::abs(r.difference) < 1e-10);
        // the distance between the feet measured in the original chart
        const double direct = hyperbolic_distance(geodesic_foot(a, c, d), geodesic_foot(b, c, d));
        CHECK(std::abs(direct - std::abs(r.rhs)) < 1e-8 * (1.0 + direct));
        const auto moved = ordist_identity_check(m(a), m(b), m(c), m(d));
        CHECK(std::abs(moved.lhs - r.lhs) < 1e-10);
        CHECK(std::abs(moved.rhs - r.rhs) < 1e-10);
    }
}

TEST_CASE("solenoid ranks") {
    const auto r2 = solenoid_ranks(2, 3);
    CHECK(r2.formula == std::vector<std::uint64_t>{4, 9, 25, 73});
    for (int n = 0; n <= 3; ++n) {
        REQUIRE(r2.explicit_rank[n].has_value());
        CHECK(*r2.explicit_rank[n] == r2.formula[n]);
    }
    CHECK_FALSE(r2.formula_only);

    const auto r3 = solenoid_ranks(3, 2);
    CHECK(r3.formula[1] == 25);
    for (int n = 0; n <= 2; ++n) CHECK(r3.explicit_rank[n].value() == r3.formula[n]);

    const auto capped = solenoid_ranks(2, 4, 200);
    CHECK(capped.formula_only);
    CHECK_FALSE(capped.explicit_rank[4].has_value());
    CHECK(capped.formula[4] == 217);
    CHECK_THROWS_AS(solenoid_ranks(1, 2), std::invalid_argument);
}

TEST_CASE("Dirac multiplicities and theta summability") {
    const auto d = dirac_spectrum(2, 10, 1.0);
    CHECK(std::vector<std::uint64_t>(d.multiplicity.begin(), d.multiplicity.begin() + 4) ==
          std::vector<std::uint64_t>{4, 8, 24, 72});
    for (int n = 2; n <= 10; ++n) CHECK(d.multiplicity[n] == 3 * d.multiplicity[n - 1]);
    CHECK(d.theta_tail_bound < 1e-12);
    // the bound covers the actual remainder
    const auto far = dirac_spectrum(2, 40, 1.0);
    CHECK(far.theta_partial - d.theta_partial <= d.theta_tail_bound);
    CHECK(far.theta_partial > d.theta_partial - 1e-15);
    // no power of |n| tames the exponential growth
    for (const auto& [p, partial] : far.zeta_partial) {
        CAPTURE(p);
        CHECK(partial.back() / partial[partial.size() - 2] > 1.5);
    }
}

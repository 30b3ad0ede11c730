#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arithmos/schottky.hpp"

#include <cmath>
#include <random>

using namespace arithmos::schottky;

namespace {

constexpr double pi = 3.14159265358979323846;
const cplx I(0.0, 1.0);

Point fin(cplx z) { return Point::finite(z); }

SchottkyGroup genus_two() {
    return SchottkyGroup::from_circles({{{-2, 0}, 0.5}, {{0, 2}, 0.5}, {{2, 0}, 0.5}, {{0, -2}, 0.5}}, {0.3, -0.7});
}

// Genus-one pairing assembled from the closed form: the orbit sum of
// log|<a,b,q^n c,q^n d>| regroups into four copies of the BTZ function.
double btz_pairing(double q, cplx a, cplx b, cplx c, cplx d) {
    auto G = [q](cplx z) { return btz_green_extended(q, z); };
    return G(c / a) + G(d / b) - G(d / a) - G(c / b);
}

// d/dz of a real function by central differences, as f_x - i f_y.
cplx wirtinger2(const std::function<double(cplx)>& f, cplx z, double h = 1e-5) {
    const double fx = (f(z + h) - f(z - h)) / (2 * h);
    const double fy = (f(z + I * h) - f(z - I * h)) / (2 * h);
    return {fx, -fy};
}

}  // namespace

TEST_CASE("BTZ closed form") {
    const double q = 0.3;
    // real q: conjugation symmetry on the unit circle
    for (double t : {0.4, 1.3, 2.9}) {
        const cplx z = std::polar(1.0, t);
        CHECK(btz_green(q, z) == doctest::Approx(btz_green(q, std::conj(z))).epsilon(1e-14));
    }
    // z -> q z and z -> 1/z are exact symmetries of the formula
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const cplx z(u(rng) * 2, u(rng) * 2);
        const cplx qc = 0.25 * std::exp(0.4 * I);
        CHECK(std::abs(btz_formula(qc, qc * z) - btz_formula(qc, z)) < 1e-12);
        CHECK(std::abs(btz_formula(qc, 1.0 / z) - btz_formula(qc, z)) < 1e-12);
    }
    CHECK(btz_green(q, 1.0) == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(btz_green(q, 0.2), std::domain_error);
    CHECK_THROWS_AS(btz_green(q, 1.5), std::domain_error);
    CHECK_THROWS_AS(btz_green(1.2, 0.5), std::domain_error);
    // near z = 1 the function behaves like log|1 - z|
    const double eps = 1e-6;
    CHECK(btz_green(q, 1.0 - eps) - std::log(eps) == doctest::Approx(btz_formula(q, 1.0 - 1e-3) - std::log(1e-3)).epsilon(1e-3));
}

TEST_CASE("third-kind differential on the genus-one group") {
    const double q = 0.2;
    const auto g = SchottkyGroup::dilation(q);
    const cplx a(0.6, 0.1), b(-0.5, 0.3);
    const double x = std::log(std::abs(a / b)) / std::log(q);
    auto primitive = [&](cplx z) { return btz_green_extended(q, z / a) - btz_green_extended(q, z / b); };
    for (cplx z : {cplx(0.4, 0.3), cplx(-0.7, -0.2), cplx(0.1, 0.85), cplx(-0.3, 0.05)}) {
        const auto nu = third_kind(g, fin(a), fin(b), z, 40);
        const cplx oracle = wirtinger2(primitive, z) + x / z;
        CAPTURE(z);
        CHECK(std::abs(nu.value - oracle) < 1e-7);
        CHECK(nu.series.ratio < 1.0);
    }
    // residues +1 at a and -1 at b
    auto nu = [&](cplx z) { return third_kind(g, fin(a), fin(b), z, 40).value; };
    CHECK(std::abs(contour_integral(nu, a, 0.01, 64) / (2 * pi * I) - 1.0) < 1e-8);
    CHECK(std::abs(contour_integral(nu, b, 0.01, 64) / (2 * pi * I) + 1.0) < 1e-8);
}

TEST_CASE("first-kind differentials: holomorphic, normalized periods") {
    const auto g = genus_two();
    for (int k = 0; k < 2; ++k) {
        auto om = [&](cplx z) { return first_kind(g, k, z, 8).value; };
        for (cplx p : {cplx(0.3, 0.2), cplx(-1.0, 1.0), cplx(3.5, -0.4)})
            CHECK(std::abs(contour_integral(om, p, 0.05, 64)) < 1e-12);
    }
    const auto pd = period_data(g, 8);
    REQUIRE(pd.a_periods_available);
    CHECK(pd.a_period_residual < 1e-6);
    CHECK(std::abs(pd.re_tau(0, 1) - pd.re_tau(1, 0)) < 1e-6);
    CHECK((pd.re_tau - pd.re_tau_alt).cwiseAbs().maxCoeff() < 1e-8);
    // negative definite, as the real part of a period matrix in this normalization
    CHECK(pd.re_tau(0, 0) < 0.0);
    CHECK(pd.re_tau.determinant() > 0.0);

    const auto one = period_data(SchottkyGroup::dilation(0.15), 4);
    CHECK(one.re_tau(0, 0) == doctest::Approx(std::log(0.15)).epsilon(1e-14));
    CHECK_FALSE(one.a_periods_available);

    // a residual beyond tolerance is an error
    PeriodOptions strict;
    strict.contour_nodes = 8;
    strict.a_period_tolerance = 1e-12;
    CHECK_THROWS_AS(period_data(g, 6, strict), std::runtime_error);
}

TEST_CASE("genus-one Green function equals the BTZ pairing") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double q : {0.1, 0.2, 0.3}) {
        const auto g = SchottkyGroup::dilation(q);
        GreenOptions opt;
        opt.max_length = 40;
        for (int i = 0; i < 10; ++i) {
            // z in the fundamental annulus, paired against fixed reference points
            const cplx z = std::polar(q + (1.0 - q) * (0.05 + 0.9 * u(rng)), 2 * pi * u(rng));
            const cplx b(-0.45, 0.6), d(0.35, -0.7);
            const auto r = green_function(g, {fin(1.0), fin(b)}, {fin(z), fin(d)}, opt);
            const double oracle = btz_green(q, z) + btz_green_extended(q, d / b) - btz_green_extended(q, d) -
                                  btz_green_extended(q, z / b);
            CAPTURE(q);
            CAPTURE(z);
            CHECK(std::abs(r.value - oracle) < 1e-8);
            CHECK(std::abs(r.value - btz_pairing(q, 1.0, b, z, d)) < 1e-8);
        }
    }
}

TEST_CASE("genus-two Green function: symmetry, additivity, harmonicity") {
    const auto g = genus_two();
    GreenOptions opt;
    opt.max_length = 9;
    const PointPair A{fin({0.3, 0.2}), fin({-0.4, 0.9})}, B{fin({1.1, -0.8}), fin({-0.9, -1.2})};
    const auto ab = green_function(g, A, B, opt), ba = green_function(g, B, A, opt);
    CHECK(std::abs(ab.value - ba.value) <= 2 * (ab.tail + ba.tail));
    CHECK(ab.tail < 1e-8);

    const Point e = fin({0.8, 1.4});
    const auto b1 = green_function(g, A, {B.first, B.second}, opt);
    const auto b2 = green_function(g, A, {B.second, e}, opt);
    const auto b12 = green_function(g, A, {B.first, e}, opt);
    CHECK(std::abs(b12.value - b1.value - b2.value) <= 2 * (b1.tail + b2.tail + b12.tail));

    const double h = 1e-3;
    const cplx c(1.1, -0.8);
    auto gc = [&](cplx z) { return green_function(g, A, {fin(z), B.second}, opt).value; };
    const double lap = (gc(c + h) + gc(c - h) + gc(c + I * h) + gc(c - I * h) - 4 * gc(c)) / (h * h);
    CHECK(std::abs(lap) < 1e-4);
    // near the divisor the function is not harmonic: a pole of log type
    const double near = gc(A.first.value() + 1e-3);
    CHECK(near < gc(A.first.value() + 1e-1) - 3.0);
}

TEST_CASE("geodesic form of the Green function") {
    const auto g = genus_two();
    GreenOptions opt;
    opt.max_length = 8;
    opt.keep_terms = true;
    const PointPair A{fin({0.3, 0.2}), fin({-0.4, 0.9})}, B{fin({1.1, -0.8}), fin({-0.9, -1.2})};
    const auto cr = green_function(g, A, B, opt), geo = green_geodesic(g, A, B, opt);
    REQUIRE(cr.terms.size() == geo.terms.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < cr.terms.size(); ++i) worst = std::max(worst, std::abs(cr.terms[i] - geo.terms[i]));
    CHECK(worst < 1e-10);
    CHECK(std::abs(cr.value - geo.value) < 1e-9);

    // genus one: the geodesic sums reproduce the closed form as well
    const double q = 0.25;
    GreenOptions one;
    one.max_length = 40;
    const cplx a(0.6, 0.1), b(-0.5, 0.3), c(0.4, -0.5), d(0.7, 0.6);
    const auto r = green_geodesic(SchottkyGroup::dilation(q), {fin(a), fin(b)}, {fin(c), fin(d)}, one);
    CHECK(std::abs(r.value - btz_pairing(q, a, b, c, d)) < 1e-8);
}

TEST_CASE("preconditions of the Green function") {
    const auto g = genus_two();
    const PointPair A{fin({0.3, 0.2}), fin({-0.4, 0.9})};
    CHECK_THROWS_AS(green_function(g, A, {A.first, fin({1.0, 1.0})}), std::domain_error);
    const Point near_limit = Point::finite(g.generator(0).attracting().value() + 1e-9);
    CHECK_THROWS_AS(green_function(g, A, {near_limit, fin({1.0, 1.0})}), std::domain_error);

    // a group whose orbit series does not decay is refused
    const double t = 0.3;
    const MoebiusMap a(std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t));
    const MoebiusMap r(std::cos(0.7), std::sin(0.7), -std::sin(0.7), std::cos(0.7));
    const SchottkyGroup thick({a, r * a * r.inverse()});
    try {
        convergence_gate(thick, 8);
        FAIL("expected the convergence gate to refuse");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()) == "series not converging; group too thick");
    }
    CHECK(convergence_gate(g, 8).ratio < 0.2);
}

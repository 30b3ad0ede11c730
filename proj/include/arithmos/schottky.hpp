#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace arithmos::schottky {

using cplx = std::complex<double>;

// A point of P^1(C) in homogeneous coordinates [x : y]; y == 0 is infinity.
struct Point {
    cplx x{0.0, 0.0};
    cplx y{1.0, 0.0};

    static Point finite(cplx z) { return {z, 1.0}; }
    static Point infinity() { return {1.0, 0.0}; }
    bool is_infinity() const { return y == cplx(0.0, 0.0); }
    cplx value() const;  // throws on infinity
};
// Spherical (chordal) distance, in [0, 2].
double chordal_distance(const Point& p, const Point& q);

struct Circle {
    cplx center;
    double radius = 0.0;
};

// Upper half-space model: (z, y) with y > 0.
struct SpacePoint {
    cplx z;
    double y = 0.0;
};
double hyperbolic_distance(const SpacePoint& p, const SpacePoint& q);

class MoebiusMap {
public:
    MoebiusMap() : MoebiusMap(1.0, 0.0, 0.0, 1.0) {}
    // Rescaled to determinant 1; throws on a singular matrix.
    MoebiusMap(cplx a, cplx b, cplx c, cplx d);

    cplx a() const { return a_; }
    cplx b() const { return b_; }
    cplx c() const { return c_; }
    cplx d() const { return d_; }

    Point operator()(const Point& p) const;
    cplx operator()(cplx z) const;  // throws if the image is infinity
    SpacePoint operator()(const SpacePoint& p) const;  // Poincare extension
    MoebiusMap operator*(const MoebiusMap& o) const;
    MoebiusMap inverse() const;
    cplx trace() const { return a_ + d_; }

    // |g'(p)| measured in the spherical metric, finite at infinity.
    double spherical_derivative(const Point& p) const;

    bool loxodromic(double eps = 1e-12) const;
    // Attracting and repelling fixed points, and the multiplier |kappa| > 1
    // with g(z) - z+ ~ (z - z+) / kappa near z+. Throw if not loxodromic.
    Point attracting() const;
    Point repelling() const;
    cplx multiplier() const;

private:
    struct Raw {};
    // entries already of determinant 1 (products and inverses)
    MoebiusMap(Raw, cplx a, cplx b, cplx c, cplx d) : a_(a), b_(b), c_(c), d_(d) {}
    cplx a_, b_, c_, d_;
    void fixed_points(Point& plus, Point& minus) const;
};

// Reduced words use letters 0..2g-1; letter i+g is the inverse of letter i.
struct Word {
    std::vector<int> letters;
    MoebiusMap map;
};

struct GroupOptions {
    std::uint64_t word_budget = 5'000'000;
    double tail_tolerance = 1e-12;
};

class SchottkyGroup {
public:
    // Generators given by matrices; circles are optional but, when present,
    // must be 2g in number and satisfy the classical marking.
    SchottkyGroup(std::vector<MoebiusMap> generators, std::vector<Circle> circles = {}, GroupOptions opt = {});

    // Generator k sends the inside of circles[k] to the outside of
    // circles[k+g], z -> c' + e^{i theta} r r' / (z - c).
    static SchottkyGroup from_circles(const std::vector<Circle>& circles, const std::vector<double>& rotations = {},
                                      GroupOptions opt = {});
    // The genus-one group generated by z -> q z.
    static SchottkyGroup dilation(cplx q, GroupOptions opt = {});

    int genus() const { return static_cast<int>(gens_.size()); }
    const MoebiusMap& letter(int i) const { return letters_.at(i); }
    const MoebiusMap& generator(int k) const { return gens_.at(k); }
    const std::vector<Circle>& circles() const { return circles_; }
    bool has_circles() const { return !circles_.empty(); }
    const GroupOptions& options() const { return opt_; }
    int inverse_letter(int i) const { return i < genus() ? i + genus() : i - genus(); }

    // Maximal deviation found when checking the marking on sampled points
    // (image of C_k against C_{k+g}); 0 when no circles are present.
    double marking_defect() const { return marking_defect_; }

    // Points far from the limit set used as base points for periods.
    std::vector<Point> base_points() const;

private:
    std::vector<MoebiusMap> gens_;
    std::vector<MoebiusMap> letters_;
    std::vector<Circle> circles_;
    GroupOptions opt_;
    double marking_defect_ = 0.0;
};

// 1 + sum_{n=1}^{L} 2g (2g-1)^{n-1}, saturating at UINT64_MAX.
std::uint64_t word_count(int genus, int max_length);

// Visits every reduced word of length <= max_length depth-first, in a fixed
// letter order; `skip_last` excludes words whose final letter is in that
// set (their extensions are still visited). Throws
// std::length_error when the word count exceeds the group's budget.
void for_each_word(const SchottkyGroup& g, int max_length, const std::function<void(const Word&)>& visit,
                   const std::vector<int>& skip_last = {});
// Same words collected and sorted by length.
std::vector<Word> enumerate_words(const SchottkyGroup& g, int max_length);

// <a,b,c,d> = (a-c)(b-d) / ((a-d)(b-c)), in homogeneous form so that
// infinity needs no special case. Throws when a = d or b = c.
cplx cross_ratio(const Point& a, const Point& b, const Point& c, const Point& d);

// Foot of the perpendicular from the boundary point a to the geodesic with
// ends c and d.
SpacePoint geodesic_foot(const Point& a, const Point& c, const Point& d);

// Signed distance from a*{c,d} to b*{c,d}, positive when moving towards d.
double oriented_distance(const Point& a, const Point& b, const Point& c, const Point& d);

struct OrdistCheck {
    double lhs = 0.0;  // log |<a,b,c,d>|
    double rhs = 0.0;  // - oriented distance of the feet
    double difference = 0.0;
};
OrdistCheck ordist_identity_check(const Point& a, const Point& b, const Point& c, const Point& d);

// Shell bookkeeping shared by all orbit sums.
struct SeriesInfo {
    std::vector<double> shells;  // sum of |term| over words of each length
    double ratio = 0.0;          // last shell / previous shell
    double tail = 0.0;           // last shell * ratio / (1 - ratio)
    std::uint64_t terms = 0;
};

// Poincare-type gate: shells of spherical |w'(base)| over words of each
// length. Throws std::domain_error if the last ratio is not below 1.
SeriesInfo convergence_gate(const SchottkyGroup& g, int max_length);

struct DifferentialValue {
    cplx value;
    SeriesInfo series;
};

// Third kind with poles at a, b: sum over the group of 1/(z - h a) - 1/(z - h b).
DifferentialValue third_kind(const SchottkyGroup& g, const Point& a, const Point& b, cplx z, int max_length);
// First kind for generator k: sum over words not ending in gamma_k^{+-1} of
// 1/(z - w z+_k) - 1/(z - w z-_k).
DifferentialValue first_kind(const SchottkyGroup& g, int k, cplx z, int max_length);

// Counter-clockwise trapezoidal contour integral of f over a circle.
cplx contour_integral(const std::function<cplx(cplx)>& f, cplx center, double radius, int nodes);

struct PeriodData {
    Eigen::MatrixXcd a_periods;  // row k: contour C_{k+g}; column l: differential of generator l
    bool a_periods_available = false;
    double a_period_residual = 0.0;  // max |a_periods - 2 pi i I|
    Eigen::MatrixXd re_tau;          // at the first base point
    Eigen::MatrixXd re_tau_alt;      // at the second base point
    double tail = 0.0;
};
struct PeriodOptions {
    int contour_nodes = 256;
    double a_period_tolerance = 1e-6;
    bool check_a_periods = true;
};
// Throws std::runtime_error carrying the residual if the a-periods miss
// 2 pi i delta by more than the tolerance.
PeriodData period_data(const SchottkyGroup& g, int max_length, PeriodOptions opt = {});

struct PointPair {
    Point first, second;  // the divisor (first) - (second)
};

struct GreenOptions {
    int max_length = 10;
    bool keep_terms = false;
    double support_threshold = 1e-6;  // chordal distance to cached fixed points
};

struct GreenResult {
    double value = 0.0;
    double tail = 0.0;
    Eigen::VectorXd x;                // coefficients of the first-kind correction
    Eigen::MatrixXd re_tau;
    SeriesInfo orbit_series;          // the sum over the whole group
    std::vector<double> terms;        // every summand, in evaluation order, if kept
};

// Green pairing of A = (a)-(b) and B = (c)-(d) from log-cross-ratio orbit sums.
GreenResult green_function(const SchottkyGroup& g, const PointPair& a, const PointPair& b, GreenOptions opt = {});
// The same pairing with every log |cross ratio| replaced by minus the
// oriented distance between geodesic feet.
GreenResult green_geodesic(const SchottkyGroup& g, const PointPair& a, const PointPair& b, GreenOptions opt = {});

// log(|q|^{B2(t)/2} |1-z| prod_n |1-q^n z||1-q^n/z|), t = log|z|/log|q|, with
// no domain restriction (the product converges for every z != 0).
double btz_formula(cplx q, cplx z, double eps = 1e-17);
// The same on the fundamental annulus |q| < |z| <= 1; -infinity on z = 1.
double btz_green(cplx q, cplx z, double eps = 1e-17);
// Reduces z into the annulus by z -> q z and z -> 1/z, both exact symmetries.
double btz_green_extended(cplx q, cplx z, double eps = 1e-17);

// Attracting fixed points of all reduced words of exactly the given length.
std::vector<cplx> limit_points(const SchottkyGroup& g, int depth);

struct SolenoidRanks {
    int genus = 0;
    std::vector<std::uint64_t> formula;                  // n = 0..n_max
    std::vector<std::optional<std::uint64_t>> explicit_rank;  // by Smith normal form, within budget
    bool formula_only = false;                           // some n exceeded the budget
};
SolenoidRanks solenoid_ranks(int genus, int n_max, std::uint64_t state_budget = 2000);

struct DiracSpectrum {
    int genus = 0;
    std::vector<std::uint64_t> multiplicity;  // n = 0..n_max, the same for -n
    double theta_partial = 0.0;               // sum over |n| <= n_max of mult e^{-t n^2}
    double theta_tail_bound = 0.0;
    // partial sums of mult(n) |n|^{-p}, n = 1..n_max, for each sampled p
    std::vector<std::pair<double, std::vector<double>>> zeta_partial;
};
DiracSpectrum dirac_spectrum(int genus, int n_max, double t, const std::vector<double>& sample_p = {1.0, 2.0, 4.0});

}  // namespace arithmos::schottky

#include "arithmos/schottky.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace arithmos::schottky {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

// Per-length accumulation of a series over reduced words.
class ShellSum {
public:
    explicit ShellSum(int max_length) : abs_(max_length + 1, 0.0) {}

    void add(std::size_t length, double magnitude) {
        abs_[length] += magnitude;
        ++terms_;
    }
    SeriesInfo finish(bool require_decay = true) const {
        SeriesInfo s;
        s.shells = abs_;
        s.terms = terms_;
        const std::size_t n = abs_.size();
        if (n < 3) {
            if (require_decay) throw std::invalid_argument("orbit sum: word length must be at least 2");
            return s;
        }
        const double last = abs_[n - 1], prev = abs_[n - 2];
        if (last == 0.0) s.ratio = 0.0;
        else if (prev == 0.0) s.ratio = std::numeric_limits<double>::infinity();
        else s.ratio = last / prev;
        if (!(s.ratio < 1.0)) {
            if (require_decay) throw std::domain_error("series not converging; group too thick");
            s.tail = std::numeric_limits<double>::infinity();
        } else {
            s.tail = last * s.ratio / (1.0 - s.ratio);
        }
        return s;
    }

private:
    std::vector<double> abs_;
    std::uint64_t terms_ = 0;
};

// Compensated running sum.
class Accumulator {
public:
    void add(double v) {
        const double t = sum_ + v;
        comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0, comp_ = 0.0;
};

cplx pole_term(cplx z, const Point& p) {
    if (p.is_infinity()) return 0.0;
    return 1.0 / (z - p.value());
}

std::vector<int> generator_letters(const SchottkyGroup& g, int k) { return {k, g.inverse_letter(k)}; }

// log |<a,b,c,d>| by one of the two routes.
using LogCross = double (*)(const Point&, const Point&, const Point&, const Point&);

double log_cross_ratio(const Point& a, const Point& b, const Point& c, const Point& d) {
    return std::log(std::abs(cross_ratio(a, b, c, d)));
}

// An orbit geodesic whose ends agree to double precision has no length to
// measure; its term is zero at that resolution.
double minus_ordist(const Point& a, const Point& b, const Point& c, const Point& d) {
    if (chordal_distance(c, d) == 0.0) return 0.0;
    return -oriented_distance(a, b, c, d);
}

struct RealSeries {
    double value = 0.0;
    SeriesInfo series;
};

// Sum over words not ending in gamma_l^{+-1} of f(w z+_l, w z-_l).
template <class F>
RealSeries class_sum(const SchottkyGroup& g, int l, int max_length, F&& f, std::vector<double>* terms) {
    const Point zp = g.generator(l).attracting(), zm = g.generator(l).repelling();
    ShellSum shells(max_length);
    Accumulator acc;
    for_each_word(
        g, max_length,
        [&](const Word& w) {
            const double t = f(w.map(zp), w.map(zm));
            acc.add(t);
            shells.add(w.letters.size(), std::abs(t));
            if (terms) terms->push_back(t);
        },
        generator_letters(g, l));
    return {acc.value(), shells.finish(false)};
}

// Class sums for genus one (the identity word only) have no shells to
// compare; other groups must show decay.
void check_class_decay(const SchottkyGroup& g, const SeriesInfo& s) {
    if (g.genus() > 1 && !(s.ratio < 1.0)) throw std::domain_error("series not converging; group too thick");
}

Eigen::MatrixXd re_tau_at(const SchottkyGroup& g, int max_length, const Point& base, LogCross lc, double& tail,
                          std::vector<double>* terms) {
    const int n = g.genus();
    Eigen::MatrixXd tau(n, n);
    for (int k = 0; k < n; ++k) {
        const Point moved = g.generator(k)(base);
        for (int l = 0; l < n; ++l) {
            const auto r = class_sum(
                g, l, max_length, [&](const Point& p, const Point& m) { return lc(p, m, moved, base); }, terms);
            check_class_decay(g, r.series);
            tau(k, l) = r.value;
            tail += r.series.tail;
        }
    }
    return tau;
}

void check_support(const SchottkyGroup& g, const PointPair& a, const PointPair& b, double threshold) {
    const Point pts[4] = {a.first, a.second, b.first, b.second};
    for (int i : {0, 1})
        for (int j : {2, 3})
            if (chordal_distance(pts[i], pts[j]) < threshold)
                throw std::domain_error("green: divisor supports are not disjoint");
    for_each_word(g, 3, [&](const Word& w) {
        if (w.letters.empty()) return;
        for (const Point& f : {w.map.attracting(), w.map.repelling()})
            for (const Point& p : pts)
                if (chordal_distance(p, f) < threshold)
                    throw std::domain_error("green: divisor support is too close to the limit set");
    });
}

GreenResult green_impl(const SchottkyGroup& g, const PointPair& A, const PointPair& B, const GreenOptions& opt,
                       LogCross lc) {
    check_support(g, A, B, opt.support_threshold);
    convergence_gate(g, opt.max_length);
    const int n = g.genus();
    GreenResult out;
    std::vector<double>* terms = opt.keep_terms ? &out.terms : nullptr;

    // sum over the whole group
    ShellSum shells(opt.max_length);
    Accumulator orbit;
    for_each_word(g, opt.max_length, [&](const Word& w) {
        const double t = lc(A.first, A.second, w.map(B.first), w.map(B.second));
        orbit.add(t);
        shells.add(w.letters.size(), std::abs(t));
        if (terms) terms->push_back(t);
    });
    out.orbit_series = shells.finish();

    // right-hand side and period matrix of the linear system for x
    Eigen::VectorXd rhs(n);
    double rhs_tail = 0.0, tau_tail = 0.0;
    for (int k = 0; k < n; ++k) {
        const auto r = class_sum(
            g, k, opt.max_length, [&](const Point& p, const Point& m) { return lc(A.first, A.second, p, m); }, terms);
        check_class_decay(g, r.series);
        rhs(k) = r.value;
        rhs_tail += r.series.tail;
    }
    out.re_tau = re_tau_at(g, opt.max_length, g.base_points().front(), lc, tau_tail, terms);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(out.re_tau);
    if (lu.rank() < n || lu.rcond() < 1e-12) throw std::domain_error("green: period matrix Re tau is singular");
    out.x = lu.solve(rhs);

    // correction by the first-kind periods at the divisor B
    double value = orbit.value(), tail = out.orbit_series.tail;
    const double inv_norm = lu.inverse().cwiseAbs().rowwise().sum().maxCoeff();
    const double x_err = inv_norm * (rhs_tail + tau_tail * out.x.cwiseAbs().sum());
    for (int l = 0; l < n; ++l) {
        const auto r = class_sum(
            g, l, opt.max_length, [&](const Point& p, const Point& m) { return lc(p, m, B.first, B.second); }, terms);
        check_class_decay(g, r.series);
        value -= out.x(l) * r.value;
        tail += std::abs(out.x(l)) * r.series.tail + x_err * (std::abs(r.value) + r.series.tail);
    }
    out.value = value;
    out.tail = tail;
    return out;
}

// log|1 - w| without cancellation for small w.
double log_abs_one_minus(cplx w) { return 0.5 * std::log1p(std::norm(w) - 2.0 * w.real()); }

}  // namespace

SeriesInfo convergence_gate(const SchottkyGroup& g, int max_length) {
    const Point base = g.base_points().front();
    ShellSum shells(max_length);
    for_each_word(g, max_length, [&](const Word& w) {
        const double d = w.map.spherical_derivative(base);
        shells.add(w.letters.size(), d);
    });
    return shells.finish();
}

DifferentialValue third_kind(const SchottkyGroup& g, const Point& a, const Point& b, cplx z, int max_length) {
    ShellSum shells(max_length);
    cplx sum = 0.0;
    for_each_word(g, max_length, [&](const Word& w) {
        const cplx t = pole_term(z, w.map(a)) - pole_term(z, w.map(b));
        sum += t;
        shells.add(w.letters.size(), std::abs(t));
    });
    return {sum, shells.finish()};
}

DifferentialValue first_kind(const SchottkyGroup& g, int k, cplx z, int max_length) {
    if (k < 0 || k >= g.genus()) throw std::out_of_range("first_kind: generator index");
    const Point zp = g.generator(k).attracting(), zm = g.generator(k).repelling();
    ShellSum shells(max_length);
    cplx sum = 0.0;
    for_each_word(
        g, max_length,
        [&](const Word& w) {
            const cplx t = pole_term(z, w.map(zp)) - pole_term(z, w.map(zm));
            sum += t;
            shells.add(w.letters.size(), std::abs(t));
        },
        generator_letters(g, k));
    SeriesInfo s = shells.finish(false);
    check_class_decay(g, s);
    return {sum, s};
}

cplx contour_integral(const std::function<cplx(cplx)>& f, cplx center, double radius, int nodes) {
    if (nodes < 3 || !(radius > 0.0)) throw std::invalid_argument("contour_integral: need nodes >= 3 and radius > 0");
    cplx sum = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const cplx e = std::polar(1.0, two_pi * j / nodes);
        sum += f(center + radius * e) * (cplx(0.0, 1.0) * radius * e);
    }
    return sum * (two_pi / nodes);
}

PeriodData period_data(const SchottkyGroup& g, int max_length, PeriodOptions opt) {
    const int n = g.genus();
    PeriodData pd;
    const auto base = g.base_points();
    pd.re_tau = re_tau_at(g, max_length, base[0], log_cross_ratio, pd.tail, nullptr);
    double alt_tail = 0.0;
    pd.re_tau_alt = re_tau_at(g, max_length, base[1], log_cross_ratio, alt_tail, nullptr);
    pd.tail = std::max(pd.tail, alt_tail);

    if (!opt.check_a_periods || !g.has_circles()) return pd;
    pd.a_periods = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const Circle& c = g.circles()[k + n];
        for (int l = 0; l < n; ++l)
            pd.a_periods(k, l) = contour_integral([&](cplx z) { return first_kind(g, l, z, max_length).value; },
                                                  c.center, c.radius, opt.contour_nodes);
    }
    pd.a_periods_available = true;
    const Eigen::MatrixXcd target = cplx(0.0, two_pi) * Eigen::MatrixXcd::Identity(n, n);
    pd.a_period_residual = (pd.a_periods - target).cwiseAbs().maxCoeff();
    if (pd.a_period_residual > opt.a_period_tolerance)
        throw std::runtime_error("period_data: a-periods deviate from 2 pi i delta by " +
                                 std::to_string(pd.a_period_residual));
    return pd;
}

GreenResult green_function(const SchottkyGroup& g, const PointPair& a, const PointPair& b, GreenOptions opt) {
    return green_impl(g, a, b, opt, log_cross_ratio);
}

GreenResult green_geodesic(const SchottkyGroup& g, const PointPair& a, const PointPair& b, GreenOptions opt) {
    return green_impl(g, a, b, opt, minus_ordist);
}

double btz_formula(cplx q, cplx z, double eps) {
    const double aq = std::abs(q), az = std::abs(z);
    if (!(aq > 0.0 && aq < 1.0)) throw std::domain_error("btz: need 0 < |q| < 1");
    if (!(az > 0.0)) throw std::domain_error("btz: z must be nonzero");
    const double t = std::log(az) / std::log(aq);
    const double b2 = t * t - t + 1.0 / 6.0;
    double sum = 0.5 * b2 * std::log(aq);
    sum += log_abs_one_minus(z);
    const double reach = std::max(az, 1.0 / az);
    cplx qn = q;
    for (int n = 1; n < 100000; ++n) {
        sum += log_abs_one_minus(qn * z) + log_abs_one_minus(qn / z);
        if (std::abs(qn) * reach < eps) break;
        qn *= q;
    }
    return sum;
}

double btz_green(cplx q, cplx z, double eps) {
    const double aq = std::abs(q), az = std::abs(z);
    if (!(az > aq && az <= 1.0 + 1e-15)) throw std::domain_error("btz_green: z must lie in the annulus |q| < |z| <= 1");
    if (z == cplx(1.0, 0.0)) return -std::numeric_limits<double>::infinity();
    return btz_formula(q, z, eps);
}

double btz_green_extended(cplx q, cplx z, double eps) {
    const double aq = std::abs(q);
    if (!(aq > 0.0 && aq < 1.0)) throw std::domain_error("btz: need 0 < |q| < 1");
    if (z == cplx(0.0, 0.0)) throw std::domain_error("btz: z must be nonzero");
    if (std::abs(z) > 1.0) z = 1.0 / z;
    while (std::abs(z) <= aq) z /= q;
    return btz_green(q, z, eps);
}

}  // namespace arithmos::schottky

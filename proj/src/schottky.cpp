#include "arithmos/schottky.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace arithmos::schottky {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

cplx det2(const Point& p, const Point& q) { return p.x * q.y - q.x * p.y; }

double norm2(const Point& p) { return std::norm(p.x) + std::norm(p.y); }

}  // namespace

cplx Point::value() const {
    if (is_infinity()) throw std::domain_error("Point::value: point at infinity");
    return x / y;
}

double chordal_distance(const Point& p, const Point& q) {
    return 2.0 * std::abs(det2(p, q)) / std::sqrt(norm2(p) * norm2(q));
}

double hyperbolic_distance(const SpacePoint& p, const SpacePoint& q) {
    if (!(p.y > 0.0) || !(q.y > 0.0)) throw std::domain_error("hyperbolic_distance: points must lie above the boundary");
    const double dz = std::abs(p.z - q.z), dy = p.y - q.y;
    return 2.0 * std::asinh(std::sqrt(dz * dz + dy * dy) / (2.0 * std::sqrt(p.y * q.y)));
}

MoebiusMap::MoebiusMap(cplx a, cplx b, cplx c, cplx d) {
    const cplx det = a * d - b * c;
    if (det == cplx(0.0, 0.0) || !std::isfinite(std::abs(det)))
        throw std::invalid_argument("MoebiusMap: singular matrix");
    const cplx s = std::sqrt(det);
    a_ = a / s;
    b_ = b / s;
    c_ = c / s;
    d_ = d / s;
}

Point MoebiusMap::operator()(const Point& p) const {
    Point r{a_ * p.x + b_ * p.y, c_ * p.x + d_ * p.y};
    // keep the representative bounded
    const double n = std::max(std::abs(r.x), std::abs(r.y));
    if (n > 0.0) {
        r.x /= n;
        r.y /= n;
    }
    if (std::abs(r.y) <= 1e-300 * std::abs(r.x)) r.y = 0.0;
    return r;
}

cplx MoebiusMap::operator()(cplx z) const { return (*this)(Point::finite(z)).value(); }

SpacePoint MoebiusMap::operator()(const SpacePoint& p) const {
    const cplx cz = c_ * p.z + d_;
    const double den = std::norm(cz) + std::norm(c_) * p.y * p.y;
    return {((a_ * p.z + b_) * std::conj(cz) + a_ * std::conj(c_) * p.y * p.y) / den, p.y / den};
}

MoebiusMap MoebiusMap::operator*(const MoebiusMap& o) const {
    return MoebiusMap(Raw{}, a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

MoebiusMap MoebiusMap::inverse() const { return MoebiusMap(Raw{}, d_, -b_, -c_, a_); }

double MoebiusMap::spherical_derivative(const Point& p) const {
    const Point img{a_ * p.x + b_ * p.y, c_ * p.x + d_ * p.y};
    return norm2(p) / norm2(img);
}

bool MoebiusMap::loxodromic(double eps) const {
    const cplx t2 = trace() * trace();
    const bool real_in_segment =
        std::abs(t2.imag()) <= eps * (1.0 + std::abs(t2)) && t2.real() >= -eps && t2.real() <= 4.0 + eps;
    return !real_in_segment;
}

void MoebiusMap::fixed_points(Point& plus, Point& minus) const {
    if (!loxodromic()) throw std::domain_error("MoebiusMap: element is not loxodromic");
    const cplx t = trace();
    const cplx root = std::sqrt(t * t - 4.0);
    cplx big = (t + root) / 2.0, small = (t - root) / 2.0;
    if (std::abs(big) < std::abs(small)) std::swap(big, small);
    // eigenvector for eigenvalue l: (b, l - a) or (l - d, c), whichever is larger
    auto eigvec = [&](cplx l) {
        Point u{b_, l - a_}, v{l - d_, c_};
        Point p = norm2(u) >= norm2(v) ? u : v;
        const double n = std::sqrt(norm2(p));
        p.x /= n;
        p.y /= n;
        if (std::abs(p.y) <= 1e-300) p.y = 0.0;
        return p;
    };
    plus = eigvec(big);
    minus = eigvec(small);
}

Point MoebiusMap::attracting() const {
    Point p, m;
    fixed_points(p, m);
    return p;
}

Point MoebiusMap::repelling() const {
    Point p, m;
    fixed_points(p, m);
    return m;
}

cplx MoebiusMap::multiplier() const {
    if (!loxodromic()) throw std::domain_error("MoebiusMap: element is not loxodromic");
    const cplx t = trace();
    const cplx root = std::sqrt(t * t - 4.0);
    cplx big = (t + root) / 2.0;
    if (std::abs(big) < 1.0) big = (t - root) / 2.0;
    return big * big;
}

SchottkyGroup::SchottkyGroup(std::vector<MoebiusMap> generators, std::vector<Circle> circles, GroupOptions opt)
    : gens_(std::move(generators)), circles_(std::move(circles)), opt_(opt) {
    if (gens_.empty()) throw std::invalid_argument("SchottkyGroup: need at least one generator");
    for (std::size_t k = 0; k < gens_.size(); ++k)
        if (!gens_[k].loxodromic())
            throw std::invalid_argument("SchottkyGroup: generator " + std::to_string(k) + " is not loxodromic");
    letters_ = gens_;
    for (const auto& m : gens_) letters_.push_back(m.inverse());
    if (circles_.empty()) return;

    const int g = genus();
    if (circles_.size() != static_cast<std::size_t>(2 * g))
        throw std::invalid_argument("SchottkyGroup: expected " + std::to_string(2 * g) + " circles");
    for (std::size_t i = 0; i < circles_.size(); ++i) {
        if (!(circles_[i].radius > 0.0)) throw std::invalid_argument("SchottkyGroup: circle radius must be positive");
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(circles_[i].center - circles_[j].center) <= circles_[i].radius + circles_[j].radius)
                throw std::invalid_argument("SchottkyGroup: circles " + std::to_string(j) + " and " + std::to_string(i) +
                                            " overlap");
    }
    // boundary goes to boundary, and points at half radius land outside
    // the partner circle
    constexpr int samples = 64;
    for (int k = 0; k < g; ++k) {
        const Circle& from = circles_[k];
        const Circle& to = circles_[k + g];
        for (int j = 0; j < samples; ++j) {
            const cplx e = std::polar(1.0, two_pi * j / samples);
            const Point on = gens_[k](Point::finite(from.center + from.radius * e));
            const double dev = on.is_infinity() ? std::numeric_limits<double>::infinity()
                                                : std::abs(std::abs(on.value() - to.center) - to.radius) / to.radius;
            marking_defect_ = std::max(marking_defect_, dev);
            const Point in = gens_[k](Point::finite(from.center + 0.5 * from.radius * e));
            if (!in.is_infinity() && std::abs(in.value() - to.center) <= to.radius)
                throw std::invalid_argument("SchottkyGroup: generator " + std::to_string(k) +
                                            " maps inside its circle to inside its partner");
        }
    }
    if (marking_defect_ > 1e-8)
        throw std::invalid_argument("SchottkyGroup: generators do not pair the circles (defect " +
                                    std::to_string(marking_defect_) + ")");
}

SchottkyGroup SchottkyGroup::from_circles(const std::vector<Circle>& circles, const std::vector<double>& rotations,
                                          GroupOptions opt) {
    if (circles.empty() || circles.size() % 2 != 0)
        throw std::invalid_argument("from_circles: need an even, positive number of circles");
    const std::size_t g = circles.size() / 2;
    if (!rotations.empty() && rotations.size() != g) throw std::invalid_argument("from_circles: one rotation per generator");
    std::vector<MoebiusMap> gens;
    for (std::size_t k = 0; k < g; ++k) {
        const Circle& c1 = circles[k];
        const Circle& c2 = circles[k + g];
        const cplx rr = std::polar(c1.radius * c2.radius, rotations.empty() ? 0.0 : rotations[k]);
        gens.emplace_back(c2.center, rr - c1.center * c2.center, 1.0, -c1.center);
    }
    return SchottkyGroup(std::move(gens), circles, opt);
}

SchottkyGroup SchottkyGroup::dilation(cplx q, GroupOptions opt) {
    if (!(std::abs(q) > 0.0 && std::abs(q) < 1.0)) throw std::invalid_argument("dilation: need 0 < |q| < 1");
    return SchottkyGroup({MoebiusMap(q, 0.0, 0.0, 1.0)}, {}, opt);
}

std::vector<Point> SchottkyGroup::base_points() const {
    if (has_circles()) {
        double reach = 0.0;
        for (const auto& c : circles_) reach = std::max(reach, std::abs(c.center) + c.radius);
        const double r = 2.0 * reach + 1.0;
        return {Point::finite(std::polar(r, 0.3)), Point::finite(std::polar(r, 2.1))};
    }
    // Without circles: the two grid points farthest from short-word fixed points.
    std::vector<Point> fixed;
    for_each_word(*this, 3, [&](const Word& w) {
        if (w.letters.empty()) return;
        fixed.push_back(w.map.attracting());
        fixed.push_back(w.map.repelling());
    });
    std::vector<std::pair<double, Point>> scored;
    for (int i = 0; i < 24; ++i)
        for (double rad : {0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0}) {
            const Point p = Point::finite(std::polar(rad, two_pi * (i + 0.37) / 24.0));
            double d = 2.0;
            for (const auto& f : fixed) d = std::min(d, chordal_distance(p, f));
            scored.push_back({d, p});
        }
    std::stable_sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    return {scored[0].second, scored[1].second};
}

std::uint64_t word_count(int genus, int max_length) {
    if (genus < 1 || max_length < 0) throw std::invalid_argument("word_count: need genus >= 1 and length >= 0");
    constexpr std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 1, shell = 2 * static_cast<std::uint64_t>(genus);
    for (int n = 1; n <= max_length; ++n) {
        if (total > cap - shell) return cap;
        total += shell;
        if (n < max_length) {
            if (shell > cap / (2 * static_cast<std::uint64_t>(genus) - 1)) shell = cap;
            else shell *= 2 * static_cast<std::uint64_t>(genus) - 1;
        }
    }
    return total;
}

namespace {

struct WordWalker {
    const SchottkyGroup& g;
    int max_length;
    const std::function<void(const Word&)>& visit;
    std::vector<bool> skip;
    Word current;

    void run() {
        if (current.letters.empty() || !skip[current.letters.back()]) visit(current);
        if (static_cast<int>(current.letters.size()) == max_length) return;
        const int n = 2 * g.genus();
        for (int l = 0; l < n; ++l) {
            if (!current.letters.empty() && l == g.inverse_letter(current.letters.back())) continue;
            const MoebiusMap saved = current.map;
            current.letters.push_back(l);
            current.map = saved * g.letter(l);
            run();
            current.letters.pop_back();
            current.map = saved;
        }
    }
};

}  // namespace

void for_each_word(const SchottkyGroup& g, int max_length, const std::function<void(const Word&)>& visit,
                   const std::vector<int>& skip_last) {
    if (max_length < 0) throw std::invalid_argument("for_each_word: length must be >= 0");
    const std::uint64_t count = word_count(g.genus(), max_length);
    if (count > g.options().word_budget)
        throw std::length_error("word enumeration needs " + std::to_string(count) + " words at length " +
                                std::to_string(max_length) + ", budget is " + std::to_string(g.options().word_budget));
    WordWalker w{g, max_length, visit, std::vector<bool>(2 * g.genus(), false), Word{}};
    for (int l : skip_last) w.skip.at(l) = true;
    w.run();
}

std::vector<Word> enumerate_words(const SchottkyGroup& g, int max_length) {
    std::vector<Word> out;
    for_each_word(g, max_length, [&](const Word& w) { out.push_back(w); });
    std::stable_sort(out.begin(), out.end(),
                     [](const Word& x, const Word& y) { return x.letters.size() < y.letters.size(); });
    return out;
}

cplx cross_ratio(const Point& a, const Point& b, const Point& c, const Point& d) {
    const cplx ad = det2(a, d), bc = det2(b, c);
    const double scale = std::sqrt(norm2(a) * norm2(b) * norm2(c) * norm2(d));
    if (std::abs(ad * bc) <= 1e-300 * scale || std::abs(ad) * std::abs(bc) <= 1e-28 * scale)
        throw std::domain_error("cross_ratio: degenerate quadruple (a = d or b = c)");
    return det2(a, c) * det2(b, d) / (ad * bc);
}

namespace {

// Sends c to 0 and d to infinity.
MoebiusMap straighten(const Point& c, const Point& d) {
    if (det2(c, d) == cplx(0.0, 0.0)) throw std::domain_error("geodesic: endpoints coincide");
    return MoebiusMap(c.y, -c.x, d.y, -d.x);
}

}  // namespace

SpacePoint geodesic_foot(const Point& a, const Point& c, const Point& d) {
    if (det2(a, c) == cplx(0.0, 0.0) || det2(a, d) == cplx(0.0, 0.0))
        throw std::domain_error("geodesic_foot: point lies on the geodesic's end");
    const MoebiusMap m = straighten(c, d);
    const Point ma = m(a);
    const double h = std::abs(ma.x) / std::abs(ma.y);
    return m.inverse()(SpacePoint{0.0, h});
}

double oriented_distance(const Point& a, const Point& b, const Point& c, const Point& d) {
    // Measured in the chart where the geodesic is the vertical axis over 0
    // and the feet sit at heights |m(a)|, |m(b)|; positions in the original
    // chart lose all relative precision once the geodesic gets short.
    if (det2(a, c) == cplx(0.0, 0.0) || det2(a, d) == cplx(0.0, 0.0) || det2(b, c) == cplx(0.0, 0.0) ||
        det2(b, d) == cplx(0.0, 0.0))
        throw std::domain_error("oriented_distance: point lies on the geodesic's end");
    const MoebiusMap m = straighten(c, d);
    const Point ma = m(a), mb = m(b);
    const SpacePoint pa{0.0, std::abs(ma.x) / std::abs(ma.y)}, pb{0.0, std::abs(mb.x) / std::abs(mb.y)};
    const double dist = hyperbolic_distance(pa, pb);
    return pa.y <= pb.y ? dist : -dist;
}

OrdistCheck ordist_identity_check(const Point& a, const Point& b, const Point& c, const Point& d) {
    OrdistCheck r;
    r.lhs = std::log(std::abs(cross_ratio(a, b, c, d)));
    r.rhs = -oriented_distance(a, b, c, d);
    r.difference = r.lhs - r.rhs;
    return r;
}

std::vector<cplx> limit_points(const SchottkyGroup& g, int depth) {
    if (depth < 1) throw std::invalid_argument("limit_points: depth must be >= 1");
    std::vector<cplx> out;
    for_each_word(g, depth, [&](const Word& w) {
        if (static_cast<int>(w.letters.size()) != depth) return;
        const Point p = w.map.attracting();
        if (!p.is_infinity()) out.push_back(p.value());
    });
    return out;
}

}  // namespace arithmos::schottky

#include "arithmos/mixmaster.hpp"

#include "arithmos/contfrac.hpp"

#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace arithmos::mixmaster {

KasnerExponents kasner_exponents(double u) {
    const double den = 1.0 + u + u * u;
    return {-u / den, (1.0 + u) / den, u * (1.0 + u) / den};
}

char axis_name(const CosetSpace& p2, int s) {
    const auto [x, y] = p2.point(s);
    if (x == 0) return 'z';
    if (y == 0) return 'y';
    return 'x';
}

namespace {

const CosetSpace& p1f2() {
    static const CosetSpace space(2);
    return space;
}

Era make_era(std::size_t n, std::int64_t k, double u, int s, std::optional<double> v) {
    Era e;
    e.index = n;
    e.k = k;
    e.u = u;
    e.v = v;
    e.coset = s;
    e.axis = axis_name(p1f2(), s);
    e.exponents = kasner_exponents(u);
    for (std::int64_t j = 0; j < k; ++j) e.cycle_u.push_back(u - static_cast<double>(j));
    return e;
}

}  // namespace

Trajectory evolve(const QuadraticSurd& x0, int s0, std::size_t eras, EvolveOptions opt) {
    if (x0.sign() <= 0 || !(x0 < QuadraticSurd::integer(1))) throw std::domain_error("evolve: x0 must lie in (0,1)");
    if (eras < 1) throw std::invalid_argument("evolve: eras must be >= 1");
    const CosetSpace& p = p1f2();
    Trajectory t;
    QuadraticSurd x = x0;
    int s = s0;
    double y = 1.0 / opt.v0;
    for (std::size_t n = 0; n < eras; ++n) {
        if (x.is_zero()) {
            t.truncated = true;
            break;
        }
        t.exact_x.push_back(x);
        const std::int64_t k = contfrac::leading_digit(x);
        const double u = 1.0 / static_cast<double>(x.to_long_double());
        t.eras.push_back(make_era(n, k, u, s, opt.track_v ? std::optional<double>(1.0 / y) : std::nullopt));
        std::tie(x, s) = contfrac::generalized_shift(x, s, p);
        y = 1.0 / (y + static_cast<double>(k));
    }
    if (!t.truncated) t.exact_x.push_back(x);
    return t;
}

Trajectory evolve(const std::vector<std::int64_t>& digits, int s0, EvolveOptions opt) {
    const CosetSpace& p = p1f2();
    Trajectory t;
    int s = s0;
    double y = 1.0 / opt.v0;
    std::vector<double> tail(digits.size() + 1, 0.0);
    for (std::size_t i = digits.size(); i-- > 0;) tail[i] = 1.0 / (static_cast<double>(digits[i]) + tail[i + 1]);
    for (std::size_t n = 0; n < digits.size(); ++n) {
        const std::int64_t k = digits[n];
        if (k < 1) throw std::invalid_argument("evolve: digits must be >= 1");
        t.eras.push_back(make_era(n, k, 1.0 / tail[n], s, opt.track_v ? std::optional<double>(1.0 / y) : std::nullopt));
        s = p.shift_step(k, s);
        y = 1.0 / (y + static_cast<double>(k));
    }
    return t;
}

std::string trajectory_csv(const Trajectory& t) {
    std::ostringstream os;
    os.precision(17);
    os << "era,k,u,v,axis_label,p1,p2,p3\n";
    for (const auto& e : t.eras) {
        os << e.index << ',' << e.k << ',' << e.u << ',';
        if (e.v) os << *e.v;
        os << ',' << p1f2().label(e.coset) << ',' << e.exponents.p1 << ',' << e.exponents.p2 << ',' << e.exponents.p3 << '\n';
    }
    return os.str();
}

double gauss_measure_sample(double uniform01) { return std::exp2(uniform01) - 1.0; }

AxisStatistics axis_statistics(std::uint64_t samples, std::uint64_t eras, std::uint64_t seed, std::optional<double> fixed_x0) {
    if (samples < 1) throw std::invalid_argument("axis_statistics: samples must be >= 1");
    const CosetSpace& p = p1f2();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto draw = [&] {
        double x;
        do x = gauss_measure_sample(unif(rng));
        while (x <= 0.0);
        return x;
    };
    auto slot = [](char a) { return a == 'x' ? 0 : a == 'y' ? 1 : 2; };

    AxisStatistics out;
    out.seed = seed;
    std::vector<std::array<double, 3>> per_sample;
    for (std::uint64_t i = 0; i < samples; ++i) {
        double x = fixed_x0 ? *fixed_x0 : draw();
        int s = p.infinity();
        std::array<std::uint64_t, 3> c{};
        for (std::uint64_t n = 0; n < eras; ++n) {
            ++c[slot(axis_name(p, s))];
            const double inv = 1.0 / x;
            const double k = std::floor(inv);
            s = p.shift_step(static_cast<std::int64_t>(std::fmod(k, 2.0)), s);
            x = inv - k;
            if (!(x > 0.0)) x = fixed_x0 ? *fixed_x0 : draw();
        }
        std::array<double, 3> f{};
        for (int a = 0; a < 3; ++a) {
            out.counts[a] += c[a];
            f[a] = static_cast<double>(c[a]) / static_cast<double>(eras);
        }
        per_sample.push_back(f);
    }
    out.steps = samples * eras;
    for (int a = 0; a < 3; ++a) out.frequency[a] = static_cast<double>(out.counts[a]) / static_cast<double>(out.steps);
    out.binomial_sigma = std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / static_cast<double>(out.steps));
    if (samples > 1)
        for (int a = 0; a < 3; ++a) {
            double var = 0.0;
            for (const auto& f : per_sample) var += (f[a] - out.frequency[a]) * (f[a] - out.frequency[a]);
            var /= static_cast<double>(samples - 1);
            out.batch_sigma[a] = std::sqrt(var / static_cast<double>(samples));
        }
    return out;
}

IntMatrix MarkovMatrix::block(int k, int l) const {
    IntMatrix b(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b(i, j) = entries(3 * (k - 1) + i, 3 * (l - 1) + j);
    return b;
}

MarkovMatrix markov_matrix(int digits) {
    if (digits < 1) throw std::invalid_argument("markov_matrix: digit bound must be >= 1");
    const CosetSpace& p = p1f2();
    MarkovMatrix m;
    m.digits = digits;
    m.order = {p.zero(), p.index_of(1, 1), p.infinity()};
    m.entries = IntMatrix(3 * digits, 3 * digits);
    // U_{k,t} lies in T(U_{l,s}) iff ((0,1),(1,l)).s = t; the k index never
    // constrains anything because T maps each U_l onto the whole set.
    for (int k = 1; k <= digits; ++k)
        for (int l = 1; l <= digits; ++l)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    if (p.act(CosetSpace::branch_matrix(l), m.order[j]) == m.order[i])
                        m.entries(3 * (k - 1) + i, 3 * (l - 1) + j) = 1;
    return m;
}

namespace {
IntMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    IntMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (int v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}
}  // namespace

IntMatrix even_block_reference() { return from_rows({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}); }
IntMatrix odd_block_reference() { return from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}); }

KTheory ck_ktheory(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("ck_ktheory: matrix must be square");
    const std::size_t n = a.rows();
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (a(i, j) != 0 && a(i, j) != 1) throw std::invalid_argument("ck_ktheory: entries must be 0 or 1");
            m(i, j) = (i == j ? 1 : 0) - a(j, i);
        }
    KTheory k;
    k.k0 = cokernel(m);
    k.k1_rank = smith_normal_form(m).kernel.size();
    return k;
}

IntMatrix schottky_subshift_matrix(int genus) {
    if (genus < 1) throw std::invalid_argument("schottky_subshift_matrix: genus must be >= 1");
    const int n = 2 * genus;
    IntMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = std::abs(i - j) != genus ? 1 : 0;
    return a;
}

std::array<AxisDescription, 2> axis_descriptions() {
    const CosetSpace& p = p1f2();
    const std::array<int, 3> pts = {p.zero(), p.index_of(1, 1), p.infinity()};
    // stated images of (0, 1, inf)
    const std::array<std::array<int, 3>, 2> stated = {{{pts[2], pts[1], pts[0]}, {pts[2], pts[0], pts[1]}}};

    // Permutations of axis positions (x,y,z) = (1,2,3) as maps on names.
    using AxisMap = std::map<char, char>;
    const AxisMap swap23 = {{'x', 'x'}, {'y', 'z'}, {'z', 'y'}};
    const AxisMap swap12 = {{'x', 'y'}, {'y', 'x'}, {'z', 'z'}};
    AxisMap odd_product;  // (12)(3) first, then (1)(23)
    for (auto [a, b] : swap12) odd_product[a] = swap23.at(b);

    std::array<AxisDescription, 2> out;
    for (int parity = 0; parity < 2; ++parity) {
        const std::int64_t k = parity == 0 ? 2 : 1;
        AxisDescription& d = out[parity];
        d.digit_parity = parity == 0 ? "even" : "odd";
        bool label_ok = true, cycle_ok = true;
        const AxisMap& expected = parity == 0 ? swap23 : odd_product;
        std::string perm;
        for (int i = 0; i < 3; ++i) {
            const int img = p.shift_step(k, pts[i]);
            d.label_images[i] = p.label(img);
            label_ok = label_ok && img == stated[parity][i];
            const char from = axis_name(p, pts[i]), to = axis_name(p, img);
            cycle_ok = cycle_ok && expected.at(from) == to;
        }
        for (char a : {'x', 'y', 'z'})
            for (int i = 0; i < 3; ++i)
                if (axis_name(p, pts[i]) == a) perm += std::string(perm.empty() ? "" : " ") + a + "->" + axis_name(p, p.shift_step(k, pts[i]));
        d.axis_permutation = perm;
        d.matches_label_rule = label_ok;
        d.matches_cycle_product = cycle_ok;
    }
    return out;
}

}  // namespace arithmos::mixmaster

#include "arithmos/modsym.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace arithmos::modsym {

using contfrac::cf_expand;
using contfrac::ContinuedFraction;

SymbolVector delta(const CosetSpace& space, int s) {
    SymbolVector v(space.size(), BigInt(0));
    v.at(s) = 1;
    return v;
}

SymbolVector sigma_reindex(const CosetSpace& space, const SymbolVector& x) {
    SymbolVector out(x.size());
    for (int s = 0; s < space.size(); ++s) out[s] = x[space.sigma(s)];
    return out;
}

namespace {

// Orbit id of each point under a permutation, plus the orbit count.
std::pair<std::vector<int>, int> orbits(int n, const std::function<int(int)>& perm) {
    std::vector<int> id(n, -1);
    int count = 0;
    for (int s = 0; s < n; ++s) {
        if (id[s] >= 0) continue;
        int t = s;
        do {
            if (id[t] >= 0) throw std::logic_error("homology_presentation: action is not a permutation");
            id[t] = count;
            t = perm(t);
        } while (t != s);
        ++count;
    }
    return {id, count};
}

IntMatrix orbit_matrix(const std::vector<int>& id, int count) {
    IntMatrix m(count, id.size());
    for (std::size_t s = 0; s < id.size(); ++s) m(id[s], s) = 1;
    return m;
}

bool free_only(const AbelianGroup& g) { return g.torsion.empty(); }

}  // namespace

HomologyPresentation homology_presentation(const CosetSpace& space) {
    const int n = space.size();
    for (int s = 0; s < n; ++s) {
        if (space.sigma(space.sigma(s)) != s) throw std::logic_error("homology_presentation: sigma is not an involution");
        if (space.tau(space.tau(space.tau(s))) != s) throw std::logic_error("homology_presentation: tau does not have order 3");
    }
    auto [id_i, n_i] = orbits(n, [&](int s) { return space.sigma(s); });
    auto [id_r, n_r] = orbits(n, [&](int s) { return space.tau(s); });

    HomologyPresentation out;
    out.beta_i = orbit_matrix(id_i, n_i);
    out.beta_r = orbit_matrix(id_r, n_r);
    out.points = n;
    out.orbits_i = n_i;
    out.orbits_r = n_r;
    out.expected_rank = n - n_i - n_r + 1;

    IntMatrix both(n_i + n_r, n);
    for (int r = 0; r < n_i; ++r)
        for (int c = 0; c < n; ++c) both(r, c) = out.beta_i(r, c);
    for (int r = 0; r < n_r; ++r)
        for (int c = 0; c < n; ++c) both(n_i + r, c) = out.beta_r(r, c);

    out.kernel = smith_normal_form(both).kernel;
    out.cokernel_i = cokernel(out.beta_i);
    out.cokernel_r = cokernel(out.beta_r);
    out.cokernel_both = cokernel(both);
    out.torsion_free = free_only(out.cokernel_i) && free_only(out.cokernel_r) && free_only(out.cokernel_both);
    return out;
}

std::int64_t intersection_number(const CosetSpace& space, const SymbolVector& x, int s) {
    if (s < 0 || s >= space.size()) throw std::out_of_range("intersection_number: coset index");
    return static_cast<std::int64_t>(x[s] - x[space.sigma(s)]);
}

std::vector<double> LimitingSymbol::values() const {
    std::vector<double> v;
    const double scale = 1.0 / (lyapunov * static_cast<double>(length));
    for (const auto& c : counts) v.push_back(static_cast<double>(c) * scale);
    return v;
}

bool LimitingSymbol::same_rational_part(const LimitingSymbol& other) const {
    if (counts.size() != other.counts.size()) return false;
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i] * BigInt(other.length) != other.counts[i] * BigInt(length)) return false;
    return true;
}

std::vector<double> antisymmetrize(const CosetSpace& space, const LimitingSymbol& x) {
    const auto v = x.values();
    std::vector<double> out(v.size());
    for (int s = 0; s < space.size(); ++s) out[s] = v[s] - v[space.sigma(s)];
    return out;
}

namespace {

struct PeriodicStart {
    QuadraticSurd x;  // purely periodic point reached after the preperiod
    int coset = 0;
    std::size_t preperiod = 0;
    std::vector<std::int64_t> period;
    double log_eigenvalue = 0.0;  // log Lambda for one digit period
};

PeriodicStart periodic_start(const QuadraticSurd& beta, const CosetSpace& space) {
    if (beta.is_rational()) throw std::domain_error("limiting symbol: rational endpoint is a cusp");
    const ContinuedFraction cf = cf_expand(beta);
    PeriodicStart st;
    st.x = beta - QuadraticSurd::integer(cf.integer_part);
    st.coset = space.infinity();
    for (std::size_t i = 0; i < cf.preperiod.size(); ++i) std::tie(st.x, st.coset) = contfrac::generalized_shift(st.x, st.coset, space);
    st.preperiod = cf.preperiod.size();
    st.period = cf.period;
    st.log_eigenvalue = std::log(contfrac::surd_period_matrix(st.x).eigenvalue_value);
    return st;
}

}  // namespace

ClosedLimitingSymbol limiting_symbol_closed(const QuadraticSurd& beta, const CosetSpace& space) {
    const PeriodicStart st = periodic_start(beta, space);
    // Repeat the digit period until the coset returns; the resulting period
    // matrix lies in the subgroup fixing the base coset.
    SymbolVector counts(space.size(), BigInt(0));
    int s = st.coset;
    std::size_t reps = 0;
    do {
        for (std::int64_t k : st.period) {
            s = space.shift_step(k, s);
            counts[s] += 1;
        }
        ++reps;
    } while (s != st.coset);

    ClosedLimitingSymbol out;
    out.digit_period = st.period.size();
    out.ell = reps * st.period.size();
    out.preperiod = st.preperiod;
    out.start_coset = st.coset;
    out.log_eigenvalue = static_cast<double>(reps) * st.log_eigenvalue;
    out.eigenvalue = std::exp(out.log_eigenvalue);
    out.symbol.counts = counts;
    out.symbol.length = out.ell;
    out.symbol.lyapunov = 2.0 * out.log_eigenvalue / static_cast<double>(out.ell);
    for (const auto& c : counts) out.by_log_eigenvalue.push_back(static_cast<double>(c) / out.log_eigenvalue);
    out.normalization_ratio = out.symbol.lyapunov * static_cast<double>(out.ell) / out.log_eigenvalue;

    SymbolVector anti(space.size());
    for (int t = 0; t < space.size(); ++t) anti[t] = counts[t] - counts[space.sigma(t)];
    const HomologyPresentation hp = homology_presentation(space);
    bool zero = true;
    for (std::size_t r = 0; r < hp.beta_r.rows(); ++r) {
        BigInt acc = 0;
        for (int t = 0; t < space.size(); ++t) acc += hp.beta_r(r, t) * anti[t];
        zero = zero && acc.is_zero();
    }
    out.antisymmetric_in_kernel = zero;
    return out;
}

LimitingSymbol limiting_symbol_ergodic(const QuadraticSurd& beta, const CosetSpace& space, std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("limiting_symbol_ergodic: n must be >= 1");
    PeriodicStart st = periodic_start(beta, space);
    LimitingSymbol out;
    out.counts.assign(space.size(), BigInt(0));
    out.length = n;
    out.lyapunov = 2.0 * st.log_eigenvalue / static_cast<double>(st.period.size());
    QuadraticSurd x = st.x;
    int s = st.coset;
    for (std::uint64_t k = 0; k < n; ++k) {
        std::tie(x, s) = contfrac::generalized_shift(x, s, space);
        out.counts[s] += 1;
    }
    return out;
}

LimitingSymbol limiting_symbol_ergodic(const std::vector<std::int64_t>& digits, const CosetSpace& space) {
    if (digits.empty()) throw std::invalid_argument("limiting_symbol_ergodic: empty digit stream");
    LimitingSymbol out;
    out.counts.assign(space.size(), BigInt(0));
    out.length = digits.size();
    int s = space.infinity();
    // log q_n = sum log(q_k / q_{k-1}); the ratio r_k = k_k + 1/r_{k-1} stays in [1, k_k + 1].
    double log_q = 0.0, ratio = 0.0;
    for (std::int64_t k : digits) {
        if (k < 1) throw std::invalid_argument("limiting_symbol_ergodic: digits must be >= 1");
        s = space.shift_step(k, s);
        out.counts[s] += 1;
        ratio = static_cast<double>(k) + (ratio == 0.0 ? 0.0 : 1.0 / ratio);
        log_q += std::log(ratio);
    }
    out.lyapunov = 2.0 * log_q / static_cast<double>(digits.size());
    return out;
}

LevyResult levy_average(const LevyInput& in, std::int64_t samples, std::int64_t cutoff) {
    if (!(in.decay > 2.0))
        throw std::domain_error("levy_average: declared decay exponent must exceed 2 for the quadrature bound");
    if (samples < 1 || cutoff < 1) throw std::invalid_argument("levy_average: samples and cutoff must be positive");
    LevyResult r;
    r.samples = samples;
    r.cutoff = cutoff;

    // lhs at alpha = (2i+1)/(2n), digits by the Euclidean algorithm on exact integers
    double lhs = 0.0;
    const std::int64_t den = 2 * samples;
    for (std::int64_t i = 0; i < samples; ++i) {
        std::int64_t num = 2 * i + 1, d = den;  // alpha = num/d
        std::int64_t q_prev = 0, q = 1;
        double ell = 0.0;
        while (num != 0) {
            const std::int64_t k = d / num;
            const std::int64_t rem = d - k * num;
            d = num;
            num = rem;
            const std::int64_t q_next = k * q + q_prev;
            q_prev = q;
            q = q_next;
            ell += in.f(q, q_prev);
        }
        lhs += ell;
    }
    r.lhs = lhs / static_cast<double>(samples);

    // rhs, and the variation sum over all cylinders for the Koksma bound
    double rhs = 0.0, single = 0.0, variation = 0.0;
    for (std::int64_t q = 1; q <= cutoff; ++q)
        for (std::int64_t qp = 1; qp <= q; ++qp) {
            if (std::gcd(q, qp) != 1) continue;
            const double v = in.f(q, qp);
            const double w = 1.0 / (static_cast<double>(q) * static_cast<double>(q + qp));
            const double mult = q == 1 ? 1.0 : 2.0;
            rhs += mult * v * w;
            single += v * w;
            variation += mult * std::abs(v);
        }
    const double qc = static_cast<double>(cutoff);
    // sum_{q > Q} 2 q * B q^{-d} / q^2 and sum_{q > Q} 2 q * B q^{-d}
    const double rhs_tail = 2.0 * in.bound * std::pow(qc, -in.decay) / in.decay;
    const double var_tail = 2.0 * in.bound * std::pow(qc, 2.0 - in.decay) / (in.decay - 2.0);
    r.rhs = rhs;
    r.rhs_single = single;
    r.rhs_error = rhs_tail;
    r.lhs_error = 2.0 * (variation + var_tail) / (2.0 * static_cast<double>(samples));
    return r;
}

}  // namespace arithmos::modsym

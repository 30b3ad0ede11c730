#include "arithmos/intmat.hpp"
#include "arithmos/schottky.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace arithmos::schottky {

namespace {

// Words over 2g letters with no letter followed by its inverse.
std::vector<std::vector<int>> admissible_words(int genus, int length) {
    std::vector<std::vector<int>> words = {{}};
    for (int step = 0; step < length; ++step) {
        std::vector<std::vector<int>> next;
        for (const auto& w : words)
            for (int l = 0; l < 2 * genus; ++l) {
                if (!w.empty() && std::abs(w.back() - l) == genus) continue;
                auto e = w;
                e.push_back(l);
                next.push_back(std::move(e));
            }
        words = std::move(next);
    }
    return words;
}

std::uint64_t formula_rank(int genus, int n) {
    const std::uint64_t two_g = 2 * static_cast<std::uint64_t>(genus);
    if (n == 0) return two_g;
    std::uint64_t r = two_g * (two_g - 2);
    for (int i = 1; i < n; ++i) r *= two_g - 1;
    return r + 1;
}

std::uint64_t state_count(int genus, int n) {
    std::uint64_t c = 2 * static_cast<std::uint64_t>(genus);
    for (int i = 0; i < n; ++i) c *= 2 * static_cast<std::uint64_t>(genus) - 1;
    return c;
}

// Free rank of P_n / delta P_{n-1}, where delta sends a word u to the sum of
// its one-letter right extensions minus its one-letter left extensions.
std::uint64_t explicit_rank(int genus, int n) {
    const auto rows = admissible_words(genus, n + 1);
    if (n == 0) return rows.size();
    const auto cols = admissible_words(genus, n);
    std::map<std::vector<int>, std::size_t> row_index;
    for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;
    IntMatrix delta(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (int l = 0; l < 2 * genus; ++l) {
            auto right = cols[j];
            right.push_back(l);
            if (auto it = row_index.find(right); it != row_index.end()) delta(it->second, j) += 1;
            std::vector<int> left = {l};
            left.insert(left.end(), cols[j].begin(), cols[j].end());
            if (auto it = row_index.find(left); it != row_index.end()) delta(it->second, j) -= 1;
        }
    return cokernel(delta).free_rank;
}

std::uint64_t dirac_multiplicity(int genus, int n) {
    const std::uint64_t two_g = 2 * static_cast<std::uint64_t>(genus);
    if (n == 0) return two_g;
    std::uint64_t m = two_g * (two_g - 2);
    for (int i = 1; i < std::abs(n); ++i) m *= two_g - 1;
    return m;
}

}  // namespace

SolenoidRanks solenoid_ranks(int genus, int n_max, std::uint64_t state_budget) {
    if (genus < 2) throw std::invalid_argument("solenoid_ranks: genus must be >= 2");
    if (n_max < 0) throw std::invalid_argument("solenoid_ranks: n_max must be >= 0");
    SolenoidRanks r;
    r.genus = genus;
    for (int n = 0; n <= n_max; ++n) {
        r.formula.push_back(formula_rank(genus, n));
        if (state_count(genus, n) <= state_budget) {
            r.explicit_rank.push_back(explicit_rank(genus, n));
        } else {
            r.explicit_rank.push_back(std::nullopt);
            r.formula_only = true;
        }
    }
    return r;
}

DiracSpectrum dirac_spectrum(int genus, int n_max, double t, const std::vector<double>& sample_p) {
    if (genus < 1) throw std::invalid_argument("dirac_spectrum: genus must be >= 1");
    if (n_max < 0) throw std::invalid_argument("dirac_spectrum: n_max must be >= 0");
    if (!(t > 0.0)) throw std::invalid_argument("dirac_spectrum: t must be positive");
    DiracSpectrum d;
    d.genus = genus;
    for (int n = 0; n <= n_max; ++n) d.multiplicity.push_back(dirac_multiplicity(genus, n));

    auto term = [&](int n) { return static_cast<double>(dirac_multiplicity(genus, n)) * std::exp(-t * n * n); };
    d.theta_partial = term(0);
    for (int n = 1; n <= n_max; ++n) d.theta_partial += 2.0 * term(n);
    // term(n+1)/term(n) = (2g-1) e^{-t(2n+1)} decreases in n, so from N+1 on
    // the tail is dominated by a geometric series with the first ratio
    const double rho = (2.0 * genus - 1.0) * std::exp(-t * (2.0 * (n_max + 1) + 1.0));
    d.theta_tail_bound = rho < 1.0 ? 2.0 * term(n_max + 1) / (1.0 - rho) : std::numeric_limits<double>::infinity();

    for (double p : sample_p) {
        std::vector<double> partial;
        double s = 0.0;
        for (int n = 1; n <= n_max; ++n) {
            s += static_cast<double>(dirac_multiplicity(genus, n)) * std::pow(n, -p);
            partial.push_back(s);
        }
        d.zeta_partial.push_back({p, partial});
    }
    return d;
}

}  // namespace arithmos::schottky

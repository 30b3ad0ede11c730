#include "arithmos/coset.hpp"

#include <numeric>
#include <stdexcept>

namespace arithmos {

CosetSpace::CosetSpace(int modulus) : n_(modulus) {
    if (modulus < 1) throw std::invalid_argument("CosetSpace: modulus must be positive");
    const int n = n_;
    canonical_.assign(static_cast<std::size_t>(n) * n, -1);
    std::vector<int> units;
    for (int u = 0; u < n; ++u)
        if (std::gcd(u, n) == 1) units.push_back(u);
    if (n == 1) units = {0};

    // Walk pairs in lexicographic order; the first member of each unit orbit
    // becomes its canonical representative.
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (std::gcd(std::gcd(x, y), n) != 1 && n != 1) continue;
            if (canonical_[x * n + y] != -1) continue;
            const int idx = static_cast<int>(points_.size());
            points_.push_back({x, y});
            for (int u : units) canonical_[((u * x) % n) * n + (u * y) % n] = idx;
        }

    const int sz = size();
    sigma_.resize(sz);
    tau_.resize(sz);
    for (int s = 0; s < sz; ++s) {
        sigma_[s] = act(sigma_matrix(), s);
        tau_[s] = act(tau_matrix(), s);
    }
    shift_table_.assign(n, std::vector<int>(sz));
    branch_table_.assign(n, std::vector<int>(sz));
    for (int k = 0; k < n; ++k)
        for (int s = 0; s < sz; ++s) {
            shift_table_[k][s] = act(shift_matrix(k), s);
            branch_table_[k][s] = act(branch_matrix(k), s);
        }
}

std::int64_t CosetSpace::mod(std::int64_t v) const {
    const std::int64_t r = v % n_;
    return r < 0 ? r + n_ : r;
}

int CosetSpace::index_of(std::int64_t x, std::int64_t y) const {
    return canonical_[mod(x) * n_ + mod(y)];
}

int CosetSpace::act(const Mat2i& g, int s) const {
    const auto [x, y] = points_[s];
    const std::int64_t nx = mod(mod(g.a) * x + mod(g.b) * y);
    const std::int64_t ny = mod(mod(g.c) * x + mod(g.d) * y);
    const int r = index_of(nx, ny);
    if (r < 0) throw std::domain_error("CosetSpace: matrix is not invertible mod N");
    return r;
}

int CosetSpace::shift_step(std::int64_t k, int s) const { return shift_table_[mod(k)][s]; }
int CosetSpace::branch_step(std::int64_t k, int s) const { return branch_table_[mod(k)][s]; }

std::string CosetSpace::label(int index) const {
    const auto [x, y] = points_[index];
    if (n_ == 2) {
        if (x == 1 && y == 0) return "inf";
        if (x == 0 && y == 1) return "0";
        return "1";
    }
    return "[" + std::to_string(x) + ":" + std::to_string(y) + "]";
}

}  // namespace arithmos

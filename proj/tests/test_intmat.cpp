#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arithmos/intmat.hpp"

#include <random>

using namespace arithmos;

namespace {

IntMatrix from(const std::vector<std::vector<int>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

// Bareiss fraction-free determinant, an independent oracle for |det| = prod(d_i).
BigInt bareiss_det(IntMatrix m) {
    const std::size_t n = m.rows();
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) {
            std::size_t r = k + 1;
            while (r < n && m(r, k).is_zero()) ++r;
            if (r == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(r, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

}  // namespace

TEST_CASE("known Smith forms") {
    auto s = smith_normal_form(from({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
    CHECK(s.rank == 3);
    CHECK(s.diagonal == std::vector<BigInt>{2, 6, 12});
    auto z = smith_normal_form(from({{0, 0}, {0, 0}}));
    CHECK(z.rank == 0);
    CHECK(z.kernel.size() == 2);
    auto c = cokernel(from({{2, 0}, {0, 3}}));
    CHECK(c.torsion == std::vector<BigInt>{6});
    CHECK(c.free_rank == 0);
}

TEST_CASE("random matrices: divisibility chain, determinant, kernel") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> e(-5, 5), dim(1, 7);
    for (int t = 0; t < 300; ++t) {
        const std::size_t r = dim(rng), k = dim(rng);
        IntMatrix m(r, k);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < k; ++j) m(i, j) = (t % 3 == 0 && j == 0) ? 0 : e(rng);
        const auto s = smith_normal_form(m);
        for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
            REQUIRE(s.diagonal[i] > 0);
            if (i > 0) REQUIRE((s.diagonal[i] % s.diagonal[i - 1]).is_zero());
        }
        REQUIRE(s.kernel.size() == k - s.rank);
        for (const auto& v : s.kernel)
            for (const auto& y : m.apply(v)) REQUIRE(y.is_zero());
        if (r == k) {
            BigInt prod = 1;
            for (const auto& d : s.diagonal) prod *= d;
            const BigInt det = bareiss_det(m);
            REQUIRE(abs(det) == (s.rank == r ? prod : BigInt(0)));
        }
        // relabeling invariance
        IntMatrix p(r, k);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < k; ++j) p(i, j) = m(r - 1 - i, (j + 1) % k);
        REQUIRE(smith_normal_form(p).diagonal == s.diagonal);
    }
}

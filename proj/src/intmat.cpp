#include "arithmos/intmat.hpp"

#include <optional>
#include <utility>

namespace arithmos {

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

std::vector<BigInt> IntMatrix::apply(const std::vector<BigInt>& x) const {
    std::vector<BigInt> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!x[j].is_zero()) y[i] += (*this)(i, j) * x[j];
    return y;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

namespace {

struct Eliminator {
    IntMatrix a;
    IntMatrix v;  // accumulated column operations

    void swap_rows(std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(i, j), a(k, j));
    }
    void swap_cols(std::size_t j, std::size_t k) {
        if (j == k) return;
        for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a(i, j), a(i, k));
        for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v(i, j), v(i, k));
    }
    // row_i -= q * row_k
    void row_axpy(std::size_t i, std::size_t k, const BigInt& q) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(k, j).is_zero()) a(i, j) -= q * a(k, j);
    }
    // col_j -= q * col_k
    void col_axpy(std::size_t j, std::size_t k, const BigInt& q) {
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (!a(i, k).is_zero()) a(i, j) -= q * a(i, k);
        for (std::size_t i = 0; i < v.rows(); ++i)
            if (!v(i, k).is_zero()) v(i, j) -= q * v(i, k);
    }

    std::optional<std::pair<std::size_t, std::size_t>> smallest(std::size_t t) const {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        BigInt best_abs;
        for (std::size_t i = t; i < a.rows(); ++i)
            for (std::size_t j = t; j < a.cols(); ++j) {
                if (a(i, j).is_zero()) continue;
                BigInt m = abs(a(i, j));
                if (!best || m < best_abs) {
                    best = {i, j};
                    best_abs = m;
                    if (best_abs == 1) return best;
                }
            }
        return best;
    }

    // Clears row t and column t outside the pivot; returns false if a
    // nonzero remainder was left and the pivot has to be re-chosen.
    bool clear_cross(std::size_t t) {
        bool clean = true;
        for (std::size_t i = t + 1; i < a.rows(); ++i) {
            if (a(i, t).is_zero()) continue;
            row_axpy(i, t, a(i, t) / a(t, t));
            if (!a(i, t).is_zero()) clean = false;
        }
        for (std::size_t j = t + 1; j < a.cols(); ++j) {
            if (a(t, j).is_zero()) continue;
            col_axpy(j, t, a(t, j) / a(t, t));
            if (!a(t, j).is_zero()) clean = false;
        }
        return clean;
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input) {
    Eliminator e{input, IntMatrix::identity(input.cols())};
    const std::size_t lim = std::min(input.rows(), input.cols());
    std::size_t t = 0;
    for (; t < lim; ++t) {
        auto piv = e.smallest(t);
        if (!piv) break;
        for (;;) {
            e.swap_rows(t, piv->first);
            e.swap_cols(t, piv->second);
            if (!e.clear_cross(t)) {
                piv = e.smallest(t);
                continue;
            }
            // Divisibility: fold a row with a non-multiple entry into row t.
            bool divisible = true;
            for (std::size_t i = t + 1; i < e.a.rows() && divisible; ++i)
                for (std::size_t j = t + 1; j < e.a.cols(); ++j)
                    if (!(e.a(i, j) % e.a(t, t)).is_zero()) {
                        e.row_axpy(t, i, BigInt(-1));
                        divisible = false;
                        break;
                    }
            if (divisible) break;
            piv = e.smallest(t);
        }
        if (e.a(t, t) < 0)
            for (std::size_t j = 0; j < e.a.cols(); ++j) e.a(t, j) = -e.a(t, j);
    }

    SmithForm out;
    out.rank = t;
    for (std::size_t i = 0; i < t; ++i) out.diagonal.push_back(e.a(i, i));
    for (std::size_t j = t; j < input.cols(); ++j) {
        std::vector<BigInt> col(input.cols());
        for (std::size_t i = 0; i < input.cols(); ++i) col[i] = e.v(i, j);
        out.kernel.push_back(std::move(col));
    }
    return out;
}

AbelianGroup cokernel(const IntMatrix& a) {
    const SmithForm s = smith_normal_form(a);
    AbelianGroup g;
    for (const auto& d : s.diagonal)
        if (d != 1) g.torsion.push_back(d);
    g.free_rank = a.rows() - s.rank;
    return g;
}

}  // namespace arithmos

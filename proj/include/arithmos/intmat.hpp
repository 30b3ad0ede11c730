#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <vector>

namespace arithmos {

// Expression templates off so that `auto` and member calls on temporaries behave.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

// Dense integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix transposed() const;
    std::vector<BigInt> apply(const std::vector<BigInt>& x) const;
    static IntMatrix identity(std::size_t n);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BigInt> data_;
};

struct SmithForm {
    std::vector<BigInt> diagonal;            // nonzero invariant factors d1 | d2 | ...
    std::size_t rank = 0;
    std::vector<std::vector<BigInt>> kernel;  // Z-basis of {x : A x = 0}
};

// Smith normal form by pivoted elimination over Z. The column transform is
// tracked so the trailing columns give a kernel basis.
SmithForm smith_normal_form(const IntMatrix& a);

// Cokernel Z^rows / A Z^cols as (torsion coefficients > 1, free rank).
struct AbelianGroup {
    std::vector<BigInt> torsion;
    std::size_t free_rank = 0;
};
AbelianGroup cokernel(const IntMatrix& a);

}  // namespace arithmos

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace arithmos {

// 2x2 integer matrix ((a,b),(c,d)) in machine integers, used for actions mod N.
struct Mat2i {
    std::int64_t a, b, c, d;
    friend Mat2i operator*(const Mat2i& x, const Mat2i& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Mat2i&, const Mat2i&) = default;
};

// Points of P^1(Z/N) with the matrix action g.[x:y] = [ax+by : cx+dy].
// A matrix g is sent to the point g.[1:0], i.e. the class of its first column.
class CosetSpace {
public:
    explicit CosetSpace(int modulus);

    int modulus() const { return n_; }
    int size() const { return static_cast<int>(points_.size()); }
    std::array<int, 2> point(int index) const { return points_[index]; }
    std::string label(int index) const;

    int index_of(std::int64_t x, std::int64_t y) const;  // -1 if not primitive mod N
    int infinity() const { return index_of(1, 0); }
    int zero() const { return index_of(0, 1); }

    int act(const Mat2i& g, int s) const;
    int coset_of(const Mat2i& g) const { return act(g, infinity()); }

    // Cached permutations.
    int sigma(int s) const { return sigma_[s]; }
    int tau(int s) const { return tau_[s]; }
    // ((-k,1),(1,0)).s, the matrix attached to one Gauss-shift step with digit k.
    int shift_step(std::int64_t k, int s) const;
    // ((0,1),(1,k)).s, the inverse of shift_step.
    int branch_step(std::int64_t k, int s) const;

    static Mat2i sigma_matrix() { return {0, -1, 1, 0}; }
    static Mat2i tau_matrix() { return {0, -1, 1, 1}; }
    static Mat2i shift_matrix(std::int64_t k) { return {-k, 1, 1, 0}; }
    static Mat2i branch_matrix(std::int64_t k) { return {0, 1, 1, k}; }

private:
    std::int64_t mod(std::int64_t v) const;

    int n_;
    std::vector<std::array<int, 2>> points_;
    std::vector<int> canonical_;  // index by x*N+y
    std::vector<int> sigma_, tau_;
    std::vector<std::vector<int>> shift_table_, branch_table_;  // [k mod N][s]
};

}  // namespace arithmos

#pragma once

#include "arithmos/coset.hpp"
#include "arithmos/intmat.hpp"
#include "arithmos/surd.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arithmos::mixmaster {

struct KasnerExponents {
    double p1, p2, p3;  // p1 <= p2 <= p3 for u >= 1
};
KasnerExponents kasner_exponents(double u);

// Axis names attached to the points of P^1(F_2): 0 -> z, inf -> y, 1 -> x.
char axis_name(const CosetSpace& p2, int s);

struct Era {
    std::size_t index = 0;
    std::int64_t k = 0;           // floor(u) = number of cycles in the era
    double u = 0.0;               // 1/x at the start of the era
    std::optional<double> v;      // amplitude parameter when tracked
    int coset = 0;                // point of P^1(F_2) labelling the dominant axis
    char axis = '?';
    KasnerExponents exponents{};  // at the era's first cycle
    std::vector<double> cycle_u;  // u, u-1, ..., u-k+1
};

struct Trajectory {
    std::vector<Era> eras;
    std::vector<QuadraticSurd> exact_x;  // x_n for surd input, one per era plus the final state
    bool truncated = false;               // a rational start ran out of digits
};

struct EvolveOptions {
    bool track_v = false;
    double v0 = 1.0;
};

Trajectory evolve(const QuadraticSurd& x0, int s0, std::size_t eras, EvolveOptions opt = {});
// u at era n is rebuilt as k_n + [0; k_{n+1}, ...], truncated at the end of the stream.
Trajectory evolve(const std::vector<std::int64_t>& digits, int s0, EvolveOptions opt = {});

std::string trajectory_csv(const Trajectory& t);

// Draws x with density 1/((1+x) log 2) by inverse CDF: x = 2^U - 1.
double gauss_measure_sample(double uniform01);

struct AxisStatistics {
    std::array<double, 3> frequency{};  // x, y, z
    std::array<std::uint64_t, 3> counts{};
    std::uint64_t steps = 0;
    double binomial_sigma = 0.0;        // sqrt(p(1-p)/n) at p = 1/3
    std::array<double, 3> batch_sigma{};  // spread of per-sample frequencies / sqrt(samples)
    std::uint64_t seed = 0;
};

// Each sample starts at a Gauss-distributed x0 and the base coset [1:0] and
// runs `eras` era steps of the floating-point Gauss map (restarting from a
// fresh draw if an iterate underflows to 0). If `fixed_x0` is given every
// sample starts there instead.
AxisStatistics axis_statistics(std::uint64_t samples, std::uint64_t eras, std::uint64_t seed,
                               std::optional<double> fixed_x0 = std::nullopt);

struct MarkovMatrix {
    int digits = 0;
    std::vector<int> order;  // coset indices in the order 0, 1, inf
    IntMatrix entries;       // row (k,t), column (l,s); index = 3*(k-1) + position
    IntMatrix block(int k, int l) const;
};

MarkovMatrix markov_matrix(int digits);

// The two permutation blocks for even and odd digits, as printed in the text.
IntMatrix even_block_reference();
IntMatrix odd_block_reference();

struct KTheory {
    AbelianGroup k0;
    std::size_t k1_rank = 0;
};
KTheory ck_ktheory(const IntMatrix& a);

// 2g x 2g matrix with A_ij = 1 iff |i-j| != g.
IntMatrix schottky_subshift_matrix(int genus);

struct AxisDescription {
    std::string digit_parity;
    std::array<std::string, 3> label_images;  // images of 0, 1, inf
    std::string axis_permutation;             // e.g. "x->x y->z z->y"
    bool matches_label_rule = false;          // agrees with 0->inf,1->1,inf->0 / 0->inf,1->0,inf->1
    bool matches_cycle_product = false;       // (1)(23), or (12)(3) followed by (1)(23)
};
std::array<AxisDescription, 2> axis_descriptions();

}  // namespace arithmos::mixmaster

#pragma once

#include "arithmos/contfrac.hpp"
#include "arithmos/coset.hpp"
#include "arithmos/intmat.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace arithmos::modsym {

// Integer coefficients indexed by the points of a coset space.
using SymbolVector = std::vector<BigInt>;

SymbolVector delta(const CosetSpace& space, int s);
SymbolVector sigma_reindex(const CosetSpace& space, const SymbolVector& x);  // s -> x[sigma s]

struct HomologyPresentation {
    IntMatrix beta_i;  // one row per sigma-orbit
    IntMatrix beta_r;  // one row per tau-orbit
    std::vector<SymbolVector> kernel;
    std::size_t points = 0, orbits_i = 0, orbits_r = 0;
    std::size_t expected_rank = 0;  // points - orbits_i - orbits_r + 1
    AbelianGroup cokernel_i, cokernel_r, cokernel_both;
    bool torsion_free = true;
};

HomologyPresentation homology_presentation(const CosetSpace& space);

std::int64_t intersection_number(const CosetSpace& space, const SymbolVector& x, int s);

// counts / length, scaled by 1/lyapunov. Counts stay exact; the transcendental
// scale is kept apart so two symbols can be compared exactly.
struct LimitingSymbol {
    SymbolVector counts;
    std::uint64_t length = 0;  // number of shift steps summed
    double lyapunov = 0.0;     // lambda(beta)
    std::vector<double> values() const;
    bool same_rational_part(const LimitingSymbol& other) const;
};

struct ClosedLimitingSymbol {
    LimitingSymbol symbol;          // (1 / (lambda ell)) sum_k delta_{s_k}
    std::vector<double> by_log_eigenvalue;  // same counts divided by |log Lambda_g|
    double log_eigenvalue = 0.0;    // |log Lambda_g| for the period matrix in the subgroup
    double eigenvalue = 0.0;        // Lambda_g
    std::size_t ell = 0;            // digit period of the skew-product orbit
    std::size_t digit_period = 0;   // period of the continued fraction alone
    std::size_t preperiod = 0;
    int start_coset = 0;            // coset after the preperiod has been shifted away
    double normalization_ratio = 0.0;  // lambda ell / |log Lambda_g|
    bool antisymmetric_in_kernel = false;
};

// Base coset t0 is the class of the identity, [1:0].
ClosedLimitingSymbol limiting_symbol_closed(const QuadraticSurd& beta, const CosetSpace& space);
LimitingSymbol limiting_symbol_ergodic(const QuadraticSurd& beta, const CosetSpace& space, std::uint64_t n);
// Digit-stream version; lambda is estimated as 2 log q_n / n from the convergent denominators.
LimitingSymbol limiting_symbol_ergodic(const std::vector<std::int64_t>& digits, const CosetSpace& space);

// v(s) - v(sigma s), with the 1/lambda scale applied.
std::vector<double> antisymmetrize(const CosetSpace& space, const LimitingSymbol& x);

struct LevyInput {
    std::function<double(std::int64_t, std::int64_t)> f;  // on coprime q >= q' >= 1
    double decay = 3.0;        // |f(q, q')| <= bound * q^{-decay}
    double bound = 1.0;
};

struct LevyResult {
    double lhs = 0.0, lhs_error = 0.0;
    double rhs = 0.0, rhs_error = 0.0;
    double rhs_single = 0.0;  // every pair weighted once, see levy_average
    std::int64_t samples = 0, cutoff = 0;
};

// lhs: midpoint rule over exact rational samples (2i+1)/(2n) with the
// Koksma bound V/(2n). rhs: sum over coprime pairs q <= cutoff. A pair with
// q >= 2 is the continuant pair of exactly two digit strings (the two
// expansions of q'/q), so it carries weight 2/(q(q+q')); (1,1) carries 1/2.
LevyResult levy_average(const LevyInput& in, std::int64_t samples = 1 << 20, std::int64_t cutoff = 4000);

}  // namespace arithmos::modsym

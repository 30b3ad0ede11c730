#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace arithmos::qsm {

using cplx = std::complex<double>;

// sigma(k) = sum of divisors, for k = 0..n (entry 0 is unused and zero).
std::vector<std::uint64_t> divisor_sigma_table(std::uint64_t n);

struct PartitionResult {
    double value = 0.0;       // sum_{k <= K} k^{-beta}
    double tail_bound = 0.0;  // K^{1-beta} / (beta - 1)
    double zeta = 0.0;        // special-function value
    double difference = 0.0;  // zeta - value
};
// Throws std::domain_error unless beta > 1.
PartitionResult bc_partition(double beta, std::uint64_t K);

struct Gl2PartitionResult {
    double value = 0.0;  // sum_{k <= K} sigma(k) k^{-beta}
    double tail_bound = 0.0;
    double zeta_product = 0.0;  // zeta(beta) zeta(beta - 1)
    double zeta_product_error = 0.0;
    double difference = 0.0;  // zeta_product - value
    double combined_tail = 0.0;
};
// Throws std::domain_error unless beta > 2.
Gl2PartitionResult gl2_partition(double beta, std::uint64_t K);

struct BCStateQuery {
    double beta = 2.0;
    std::int64_t alpha = 1;  // unit mod b
    std::int64_t a = 0;      // r = a / b in lowest terms
    std::int64_t b = 1;
    std::uint64_t K = 1000000;
};

struct KmsValue {
    cplx value;                // truncated, normalized series
    double tail_bound = 0.0;   // bound on the omitted terms after normalization
    cplx hurwitz_value;        // same quantity through Hurwitz zeta at the b-th roots of unity
};
// Extremal low-temperature state on the phase operator e(r), twisted by alpha.
// r = 0 returns exactly 1. Throws std::domain_error for beta <= 1 and
// std::invalid_argument for a non-reduced fraction or a non-unit alpha.
KmsValue bc_kms_value(const BCStateQuery& q);

struct LowTemperatureIdentity {
    cplx lhs;               // average of bc_kms_value over the units mod b
    double rhs = 0.0;       // b^{-beta} prod_{p | b} (1 - p^{beta-1}) / (1 - 1/p)
    double divisor_form = 0.0;  // (1/phi(b)) sum_{d | b} mu(b/d) d^{1-beta}
    double difference = 0.0;    // |lhs - rhs|
    double tail_bound = 0.0;
};
LowTemperatureIdentity bc_low_temperature_identity(std::int64_t a, std::int64_t b, double beta, std::uint64_t K);

}  // namespace arithmos::qsm

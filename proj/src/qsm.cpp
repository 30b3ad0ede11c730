#include "arithmos/qsm.hpp"

#include "arithmos/special.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace arithmos::qsm {

namespace {

using special::pi;

template <class T>
struct Neumaier {
    T sum{}, c{};
    void add(T x) {
        const T t = sum + x;
        if constexpr (std::is_same_v<T, double>) {
            c += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        } else {
            // componentwise for complex values
            auto fix = [](double s, double v, double tt) { return std::abs(s) >= std::abs(v) ? (s - tt) + v : (v - tt) + s; };
            c += T(fix(sum.real(), x.real(), t.real()), fix(sum.imag(), x.imag(), t.imag()));
        }
        sum = t;
    }
    T total() const { return sum + c; }
};

std::int64_t mod(std::int64_t x, std::int64_t m) {
    const std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

// e(c k / b) with the product reduced exactly before converting to a phase
cplx phase(std::int64_t c, std::uint64_t k, std::int64_t b) {
    const auto j = static_cast<std::int64_t>((static_cast<__int128>(c) * static_cast<__int128>(k % static_cast<std::uint64_t>(b))) % b);
    return std::polar(1.0, 2 * pi * static_cast<double>(j) / static_cast<double>(b));
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> ps;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

int moebius(std::int64_t n) {
    int sign = 1;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            sign = -sign;
        }
    return n > 1 ? -sign : sign;
}

void require_K(std::uint64_t K) {
    if (K == 0) throw std::invalid_argument("truncation K must be >= 1");
}

}  // namespace

std::vector<std::uint64_t> divisor_sigma_table(std::uint64_t n) {
    std::vector<std::uint64_t> s(n + 1, 0);
    for (std::uint64_t d = 1; d <= n; ++d)
        for (std::uint64_t m = d; m <= n; m += d) s[m] += d;
    return s;
}

PartitionResult bc_partition(double beta, std::uint64_t K) {
    if (!(beta > 1.0)) throw std::domain_error("bc_partition: beta must be > 1");
    require_K(K);
    Neumaier<double> acc;
    for (std::uint64_t k = K; k >= 1; --k) acc.add(std::pow(static_cast<double>(k), -beta));
    PartitionResult r;
    r.value = acc.total();
    r.tail_bound = std::pow(static_cast<double>(K), 1.0 - beta) / (beta - 1.0);
    r.zeta = special::riemann_zeta(beta);
    r.difference = r.zeta - r.value;
    return r;
}

Gl2PartitionResult gl2_partition(double beta, std::uint64_t K) {
    if (!(beta > 2.0)) throw std::domain_error("gl2_partition: beta must be > 2");
    require_K(K);
    const auto sigma = divisor_sigma_table(K);
    Neumaier<double> acc;
    for (std::uint64_t k = K; k >= 1; --k)
        acc.add(static_cast<double>(sigma[k]) * std::pow(static_cast<double>(k), -beta));
    Gl2PartitionResult r;
    r.value = acc.total();
    // sigma(k) <= k (1 + log k), and (1 + log x) x^{-1-a} decreases for x >= 1,
    // so the tail is below the integral from K
    const double a = beta - 2.0, Kd = static_cast<double>(K), Ka = std::pow(Kd, -a);
    r.tail_bound = Ka / a + Ka * (std::log(Kd) / a + 1.0 / (a * a));
    r.zeta_product = special::riemann_zeta(beta) * special::riemann_zeta(beta - 1.0);
    r.zeta_product_error = 1e-14 * r.zeta_product;
    r.difference = r.zeta_product - r.value;
    r.combined_tail = r.tail_bound + r.zeta_product_error;
    return r;
}

KmsValue bc_kms_value(const BCStateQuery& q) {
    if (!(q.beta > 1.0)) throw std::domain_error("bc_kms_value: beta must be > 1 (no Gibbs truncation at or below 1)");
    if (q.b < 1) throw std::invalid_argument("bc_kms_value: denominator must be >= 1");
    require_K(q.K);
    const std::int64_t a = mod(q.a, q.b), alpha = mod(q.alpha, q.b);
    if (std::gcd(a, q.b) != 1) throw std::invalid_argument("bc_kms_value: a/b is not in lowest terms");
    if (std::gcd(alpha, q.b) != 1) throw std::invalid_argument("bc_kms_value: alpha is not a unit mod b");

    KmsValue r;
    if (a == 0) {  // only possible for b = 1
        r.value = r.hurwitz_value = 1.0;
        return r;
    }
    const std::int64_t c = static_cast<std::int64_t>((static_cast<__int128>(alpha) * a) % q.b);
    const double zeta = special::riemann_zeta(q.beta);

    Neumaier<cplx> acc;
    for (std::uint64_t k = q.K; k >= 1; --k) acc.add(phase(c, k, q.b) * std::pow(static_cast<double>(k), -q.beta));
    r.value = acc.total() / zeta;
    // partial sums of e(k c / b) over any window are at most 1/|sin(pi c/b)|;
    // summation by parts against the decreasing weights k^{-beta}
    const double window = 1.0 / std::abs(std::sin(pi * static_cast<double>(c) / static_cast<double>(q.b)));
    r.tail_bound = window * std::pow(static_cast<double>(q.K) + 1.0, -q.beta) / zeta;

    // sum_n e(n c / b) n^{-beta} = b^{-beta} sum_{j=1}^{b} e(j c / b) zeta_H(beta, j / b)
    if (q.b <= 4096) {
        Neumaier<cplx> h;
        for (std::int64_t j = 1; j <= q.b; ++j)
            h.add(phase(c, static_cast<std::uint64_t>(j), q.b) *
                  special::hurwitz_zeta(q.beta, static_cast<double>(j) / static_cast<double>(q.b)));
        r.hurwitz_value = h.total() * std::pow(static_cast<double>(q.b), -q.beta) / zeta;
    } else {
        r.hurwitz_value = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    }
    return r;
}

LowTemperatureIdentity bc_low_temperature_identity(std::int64_t a, std::int64_t b, double beta, std::uint64_t K) {
    if (b < 1) throw std::invalid_argument("bc_low_temperature_identity: denominator must be >= 1");
    LowTemperatureIdentity r;
    Neumaier<cplx> avg;
    std::int64_t units = 0;
    for (std::int64_t alpha = 0; alpha < b; ++alpha) {
        if (std::gcd(alpha, b) != 1) continue;
        const auto v = bc_kms_value({beta, alpha, a, b, K});
        avg.add(v.value);
        r.tail_bound = std::max(r.tail_bound, v.tail_bound);
        ++units;
    }
    r.lhs = avg.total() / static_cast<double>(units);

    r.rhs = std::pow(static_cast<double>(b), -beta);
    for (std::int64_t p : prime_factors(b)) {
        const double pd = static_cast<double>(p);
        r.rhs *= (1.0 - std::pow(pd, beta - 1.0)) / (1.0 - 1.0 / pd);
    }

    double s = 0.0;
    for (std::int64_t d = 1; d <= b; ++d)
        if (b % d == 0) s += moebius(b / d) * std::pow(static_cast<double>(d), 1.0 - beta);
    r.divisor_form = s / static_cast<double>(units);

    r.difference = std::abs(r.lhs - r.rhs);
    return r;
}

}  // namespace arithmos::qsm

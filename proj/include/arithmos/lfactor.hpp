#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <utility>
#include <vector>

namespace arithmos::lfactor {

using cplx = std::complex<double>;

cplx gamma_c(cplx s);  // (2 pi)^{-s} Gamma(s)
cplx gamma_r(cplx s);  // 2^{-1/2} pi^{-s/2} Gamma(s/2)

struct GammaFactors {
    cplx complex_factor;
    cplx real_factor;
};
// Throws std::domain_error at a pole of either factor.
GammaFactors gamma_factors(cplx s);

enum class Embedding { real, complex };

struct HodgeData {
    int weight = 0;
    std::map<std::pair<int, int>, int> h;  // (p, q) -> h^{p,q}, p + q = weight
    Embedding embedding = Embedding::complex;
    std::map<int, std::pair<int, int>> h_pm;  // p -> (h^{p,+}, h^{p,-}), real embeddings only

    int dimension() const;
    // Throws std::invalid_argument if the table breaks the Hodge symmetries.
    void validate() const;
};

// Hodge numbers of H^1 of a genus-g curve: h^{1,0} = h^{0,1} = g.
HodgeData curve_h1(int genus, Embedding e = Embedding::complex);

cplx hodge_lfactor(const HodgeData& h, cplx s);

// Eigenvalues -(n + offset) * step, n >= 0, each with the same multiplicity.
struct Ladder {
    cplx offset = 0.0;
    double step = 1.0;
    int multiplicity = 1;
};

struct Spectrum {
    std::vector<std::pair<cplx, int>> finite;  // (eigenvalue, multiplicity)
    std::vector<Ladder> ladders;
    bool truncated = false;  // `finite` is a cut-off piece of an infinite spectrum
    std::size_t total_multiplicity() const;
};

// Two routes to zeta_H(0, a) and its s-derivative.
struct HurwitzAtZero {
    cplx value;
    cplx derivative;
};
HurwitzAtZero hurwitz_at_zero_closed(cplx a);  // 1/2 - a and log Gamma(a) - log(2 pi)/2
HurwitzAtZero hurwitz_at_zero_summed(cplx a);  // Euler-Maclaurin continuation

enum class Continuation { closed_form, euler_maclaurin };

// exp(-d/dz sum_lambda m (s - lambda)^{-z} at z = 0). Ladders reduce to
// Hurwitz zeta; finite eigenvalues contribute (s - lambda)^m. A truncated
// spectrum has no continuation and is refused.
cplx regularized_det(const Spectrum& spec, cplx s, Continuation how = Continuation::closed_form);

struct PhiSpectrum {
    Spectrum truncated;  // eigenvalues 0, -1, ..., -n_max
    Ladder full;         // the whole ladder -n, n >= 0
};
// Spectrum of the logarithm of Frobenius on the weight-one archimedean
// cohomology: every nonpositive integer with multiplicity dim H^1.
PhiSpectrum phi_spectrum(const HodgeData& h, int n_max);

struct RegdetCheck {
    cplx lhs;                    // Gamma_C(s)^{2g}
    cplx rhs;                    // inverse regularized determinant, closed-form continuation
    cplx rhs_summed;             // the same through Euler-Maclaurin
    double relative_error = 0.0; // |lhs - rhs| / |lhs|
    double continuation_gap = 0.0;  // max gap between the two Hurwitz routes at a = s
};
RegdetCheck verify_regdet_identity(int genus, cplx s);

struct BirkhoffResult {
    Eigen::MatrixXcd phi_minus, phi_plus, phi;
    double factorization_residual = 0.0;   // |phi - (phi_minus)^{-1} phi_plus|
    double displayed_product_residual = 0.0;  // |phi - phi_minus phi_plus|
    Eigen::MatrixXcd phi_plus_at_zero;     // exp(log(mu) N)
    double phi_plus_limit_gap = 0.0;       // |phi_plus(z0) - mu^N| at z0 = 1e-6
    double phi_minus_at_infinity_gap = 0.0;  // |phi_minus(1e12) - 1|
    Eigen::MatrixXcd residue;              // d/dz phi_minus(1/z)^{-1} at 0, central difference
    double renormalization_gap = 0.0;      // |phi_minus(e) theta_{t e}(phi_minus(e)^{-1}) - lambda^N|
};

// Exponential series, exact for nilpotent input.
Eigen::MatrixXcd nilpotent_exp(const Eigen::MatrixXcd& x);

// Throws std::invalid_argument unless n is nilpotent.
BirkhoffResult birkhoff_monodromy(const Eigen::MatrixXcd& n, double mu, cplx z, double lambda = 2.0);

}  // namespace arithmos::lfactor

#include "arithmos/lfactor.hpp"

#include "arithmos/special.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace arithmos::lfactor {

namespace {

using special::pi;

bool nonpositive_integer(cplx s) {
    return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::round(s.real());
}

cplx ipow(cplx z, int e) {
    cplx r = 1.0;
    for (int i = 0; i < e; ++i) r *= z;
    return r;
}

}  // namespace

cplx gamma_c(cplx s) {
    if (nonpositive_integer(s)) throw std::domain_error("Gamma_C: pole at s = " + std::to_string(s.real()));
    return std::pow(cplx(2 * pi), -s) * special::gamma(s);
}

cplx gamma_r(cplx s) {
    if (nonpositive_integer(s / 2.0)) throw std::domain_error("Gamma_R: pole at s = " + std::to_string(s.real()));
    return std::sqrt(0.5) * std::pow(cplx(pi), -s / 2.0) * special::gamma(s / 2.0);
}

GammaFactors gamma_factors(cplx s) { return {gamma_c(s), gamma_r(s)}; }

int HodgeData::dimension() const {
    int d = 0;
    for (const auto& [pq, n] : h) d += n;
    return d;
}

void HodgeData::validate() const {
    for (const auto& [pq, n] : h) {
        const auto [p, q] = pq;
        if (n < 0) throw std::invalid_argument("HodgeData: negative Hodge number");
        if (p < 0 || q < 0 || p + q != weight)
            throw std::invalid_argument("HodgeData: (" + std::to_string(p) + "," + std::to_string(q) +
                                        ") does not have weight " + std::to_string(weight));
        auto mirror = h.find({q, p});
        if ((mirror == h.end() ? 0 : mirror->second) != n)
            throw std::invalid_argument("HodgeData: h^{p,q} != h^{q,p} at (" + std::to_string(p) + "," +
                                        std::to_string(q) + ")");
    }
    if (embedding == Embedding::complex) {
        if (!h_pm.empty()) throw std::invalid_argument("HodgeData: signs of h^{p,p} only apply to real embeddings");
        return;
    }
    for (const auto& [p, pm] : h_pm) {
        auto it = h.find({p, p});
        const int hpp = it == h.end() ? 0 : it->second;
        if (pm.first < 0 || pm.second < 0 || pm.first + pm.second != hpp)
            throw std::invalid_argument("HodgeData: h^{p,+} + h^{p,-} != h^{p,p} at p = " + std::to_string(p));
    }
    for (const auto& [pq, n] : h)
        if (pq.first == pq.second && n > 0 && !h_pm.count(pq.first))
            throw std::invalid_argument("HodgeData: real embedding needs the split of h^{p,p} at p = " +
                                        std::to_string(pq.first));
}

HodgeData curve_h1(int genus, Embedding e) {
    if (genus < 0) throw std::invalid_argument("curve_h1: genus must be >= 0");
    HodgeData d;
    d.weight = 1;
    d.embedding = e;
    if (genus > 0) {
        d.h[{1, 0}] = genus;
        d.h[{0, 1}] = genus;
    }
    return d;
}

cplx hodge_lfactor(const HodgeData& h, cplx s) {
    h.validate();
    cplx out = 1.0;
    auto factor = [&](auto fn, cplx arg, int power, const std::string& name) {
        if (power == 0) return;
        try {
            out *= ipow(fn(arg), power);
        } catch (const std::domain_error&) {
            throw std::domain_error("hodge_lfactor: pole in factor " + name);
        }
    };
    if (h.embedding == Embedding::complex) {
        for (const auto& [pq, n] : h.h) {
            const int p = std::min(pq.first, pq.second);
            factor(gamma_c, s - static_cast<double>(p), n, "Gamma_C(s-" + std::to_string(p) + ")");
        }
        return out;
    }
    for (const auto& [pq, n] : h.h)
        if (pq.first < pq.second)
            factor(gamma_c, s - static_cast<double>(pq.first), n, "Gamma_C(s-" + std::to_string(pq.first) + ")");
    for (const auto& [p, pm] : h.h_pm) {
        factor(gamma_r, s - static_cast<double>(p), pm.first, "Gamma_R(s-" + std::to_string(p) + ")");
        factor(gamma_r, s - static_cast<double>(p) + 1.0, pm.second, "Gamma_R(s-" + std::to_string(p) + "+1)");
    }
    return out;
}

std::size_t Spectrum::total_multiplicity() const {
    std::size_t n = 0;
    for (const auto& [l, m] : finite) n += static_cast<std::size_t>(m);
    return n;
}

HurwitzAtZero hurwitz_at_zero_closed(cplx a) { return {0.5 - a, special::log_gamma(a) - 0.5 * std::log(2 * pi)}; }

HurwitzAtZero hurwitz_at_zero_summed(cplx a) {
    const auto h = special::hurwitz_zeta_full(0.0, a);
    return {h.value, h.derivative};
}

cplx regularized_det(const Spectrum& spec, cplx s, Continuation how) {
    if (spec.truncated) throw std::domain_error("regularized_det: no closed-form continuation for a truncated spectrum");
    cplx log_det = 0.0;
    for (const auto& [lambda, m] : spec.finite) {
        if (s == lambda) throw std::domain_error("regularized_det: s is an eigenvalue");
        log_det += static_cast<double>(m) * std::log(s - lambda);
    }
    for (const auto& l : spec.ladders) {
        if (l.multiplicity == 0) continue;
        if (!(l.step > 0.0)) throw std::domain_error("regularized_det: no closed-form continuation (step must be > 0)");
        // s - lambda_n = step * (n + a)
        const cplx a = l.offset + s / l.step;
        if (a.imag() == 0.0 && a.real() <= 0.0)
            throw std::domain_error("regularized_det: s - lambda meets the nonpositive axis");
        const HurwitzAtZero z = how == Continuation::closed_form ? hurwitz_at_zero_closed(a) : hurwitz_at_zero_summed(a);
        // zeta(z) = m step^{-z} zeta_H(z, a)
        log_det -= static_cast<double>(l.multiplicity) * (-std::log(l.step) * z.value + z.derivative);
    }
    return std::exp(log_det);
}

PhiSpectrum phi_spectrum(const HodgeData& h, int n_max) {
    h.validate();
    if (h.weight != 1) throw std::invalid_argument("phi_spectrum: Hodge data must have weight 1");
    if (n_max < 0) throw std::invalid_argument("phi_spectrum: n_max must be >= 0");
    PhiSpectrum out;
    const int dim = h.dimension();
    for (int n = 0; n <= n_max; ++n) out.truncated.finite.push_back({cplx(-n), dim});
    out.truncated.truncated = true;
    out.full = Ladder{0.0, 1.0, dim};
    return out;
}

RegdetCheck verify_regdet_identity(int genus, cplx s) {
    RegdetCheck r;
    r.lhs = hodge_lfactor(curve_h1(genus), s);
    // the operator Phi / 2 pi evaluated at s / 2 pi
    Spectrum scaled;
    const Ladder phi = phi_spectrum(curve_h1(genus), 0).full;
    scaled.ladders.push_back(Ladder{phi.offset, phi.step / (2 * pi), phi.multiplicity});
    r.rhs = 1.0 / regularized_det(scaled, s / (2 * pi), Continuation::closed_form);
    r.rhs_summed = 1.0 / regularized_det(scaled, s / (2 * pi), Continuation::euler_maclaurin);
    r.relative_error = std::abs(r.lhs - r.rhs) / std::abs(r.lhs);
    const auto c = hurwitz_at_zero_closed(s), e = hurwitz_at_zero_summed(s);
    r.continuation_gap = std::max(std::abs(c.value - e.value), std::abs(c.derivative - e.derivative));
    return r;
}

Eigen::MatrixXcd nilpotent_exp(const Eigen::MatrixXcd& x) {
    const auto n = x.rows();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(n, n), term = out;
    for (Eigen::Index k = 1; k <= n; ++k) {
        term = term * x / static_cast<double>(k);
        out += term;
    }
    return out;
}

BirkhoffResult birkhoff_monodromy(const Eigen::MatrixXcd& n, double mu, cplx z, double lambda) {
    if (n.rows() != n.cols()) throw std::invalid_argument("birkhoff_monodromy: matrix must be square");
    if (!(mu > 0.0) || !(lambda > 0.0)) throw std::invalid_argument("birkhoff_monodromy: mu and lambda must be positive");
    if (z == cplx(0.0, 0.0)) throw std::invalid_argument("birkhoff_monodromy: z must be nonzero");
    const auto dim = n.rows();
    Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) power = power * n;
    const double scale = std::pow(1.0 + n.cwiseAbs().maxCoeff(), static_cast<double>(dim));
    if (power.cwiseAbs().maxCoeff() > 1e-12 * scale) throw std::invalid_argument("birkhoff_monodromy: matrix is not nilpotent");

    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    auto phi_minus = [&](cplx w) { return nilpotent_exp(-n / w); };
    auto phi_plus = [&](cplx w) { return nilpotent_exp((std::pow(cplx(mu), w) - 1.0) / w * n); };

    BirkhoffResult r;
    r.phi = nilpotent_exp(std::pow(cplx(mu), z) / z * n);
    r.phi_minus = phi_minus(z);
    r.phi_plus = phi_plus(z);
    r.factorization_residual = (r.phi - r.phi_minus.inverse() * r.phi_plus).cwiseAbs().maxCoeff();
    r.displayed_product_residual = (r.phi - r.phi_minus * r.phi_plus).cwiseAbs().maxCoeff();
    r.phi_plus_at_zero = nilpotent_exp(std::log(mu) * n);
    r.phi_plus_limit_gap = (phi_plus(1e-6) - r.phi_plus_at_zero).cwiseAbs().maxCoeff();
    r.phi_minus_at_infinity_gap = (phi_minus(1e12) - id).cwiseAbs().maxCoeff();

    const double h = 1e-3;
    r.residue = (phi_minus(1.0 / h).inverse() - phi_minus(-1.0 / h).inverse()) / (2 * h);

    // phi_minus(e) theta_{t e}(phi_minus(e)^{-1}) with theta_t(N) = e^t N
    const double t = std::log(lambda), e = 1e-5;
    const Eigen::MatrixXcd rho = phi_minus(e) * nilpotent_exp(std::exp(t * e) / e * n);
    r.renormalization_gap = (rho - nilpotent_exp(t * n)).cwiseAbs().maxCoeff();
    return r;
}

}  // namespace arithmos::lfactor

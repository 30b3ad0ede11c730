#include "arithmos/transfer.hpp"

#include "arithmos/coset.hpp"
#include "arithmos/quad.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace arithmos::transfer {

namespace {

using special::quad_complex;
using special::quad_real;

// Sum over one class of branches k of (x0 + k)^{-s}. Matrix assembly runs in
// quad precision: re-expanding (u - x0)^m in powers of u cancels roughly
// 10 digits at M = 32 and 21 digits at M = 64.
using BranchSum = std::function<quad_complex(quad_complex)>;

BranchSum full_sum(double x0) {
    return [x0](quad_complex s) { return special::hurwitz_zeta_quad(s, quad_complex(quad_real(x0) + 1)).value; };
}

BranchSum partial_sum(double x0, int digits) {
    return [x0, digits](quad_complex s) {
        quad_complex acc = 0;
        for (int k = 1; k <= digits; ++k) acc += exp(-s * log(quad_complex(quad_real(x0) + k)));
        return acc;
    };
}

// k = r, r + N, r + 2N, ...
BranchSum residue_sum(double x0, int n, int r) {
    return [x0, n, r](quad_complex s) {
        const quad_complex a((quad_real(x0) + r) / n);
        return exp(-s * log(quad_complex(n))) * special::hurwitz_zeta_quad(s, a).value;
    };
}

// M x M block of the operator restricted to one branch class.
Eigen::MatrixXcd block_matrix(cplx sigma, int dim, double x0, const BranchSum& z) {
    const quad_complex s0 = quad_complex(quad_real(sigma.real()), quad_real(sigma.imag())) * quad_real(2);
    std::vector<quad_complex> zv(2 * dim - 1);
    for (int n = 0; n < 2 * dim - 1; ++n) zv[n] = z(s0 + quad_real(n));

    // tay[i][j]: j-th Taylor coefficient at x0 of sum_k (x+k)^{-(s0+i)}
    std::vector<std::vector<quad_complex>> tay(dim, std::vector<quad_complex>(dim));
    for (int i = 0; i < dim; ++i) {
        quad_complex binom = 1;
        for (int j = 0; j < dim; ++j) {
            if (j > 0) binom *= (s0 + quad_real(i + j - 1)) / quad_real(j);
            tay[i][j] = (j % 2 == 0 ? binom : -binom) * zv[i + j];
        }
    }
    // (u - x0)^m with u = 1/(x+k) re-expanded in powers of u
    const quad_real qx0(x0);
    Eigen::MatrixXcd out(dim, dim);
    for (int m = 0; m < dim; ++m) {
        std::vector<quad_real> coef(m + 1);
        quad_real c = 1;
        for (int i = m; i >= 0; --i) {
            coef[i] = c;
            c *= -qx0 * quad_real(i) / quad_real(m - i + 1);
        }
        for (int j = 0; j < dim; ++j) {
            quad_complex acc = 0;
            for (int i = 0; i <= m; ++i) acc += quad_complex(coef[i]) * tay[i][j];
            out(j, m) = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
        }
    }
    return out;
}

bool is_real(cplx z) { return z.imag() == 0.0; }

std::vector<cplx> sorted(std::vector<cplx> v) {
    std::stable_sort(v.begin(), v.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
    return v;
}

double top_modulus(const TransferSpec& spec) {
    const auto ev = eigenvalues(build_matrix(spec));
    return ev.front().real();
}

}  // namespace

std::string TransferSpec::describe() const {
    switch (variant) {
        case Variant::full: return "full";
        case Variant::coset: return "coset(" + std::to_string(level) + ")";
        case Variant::hensley: return "hensley(" + std::to_string(digit_bound) + ")";
    }
    return "?";
}

TransferMatrix build_matrix(const TransferSpec& spec) {
    if (spec.dim < 1) throw std::invalid_argument("transfer: basis dimension must be positive");
    if (spec.dim > max_dim)
        throw std::invalid_argument("transfer: basis dimension " + std::to_string(spec.dim) +
                                    " exceeds working precision; use at most " + std::to_string(max_dim));
    if (spec.x0 < 0.0 || spec.x0 >= 1.0) throw std::invalid_argument("transfer: expansion point must lie in [0,1)");
    if (spec.variant != Variant::hensley && (2.0 * spec.sigma).real() <= 1.0)
        throw std::domain_error("transfer: the full branch sum needs Re(2 sigma) > 1");
    if (spec.variant == Variant::hensley && spec.digit_bound < 1)
        throw std::invalid_argument("transfer: digit bound must be >= 1");
    if (spec.variant == Variant::coset && spec.level < 1) throw std::invalid_argument("transfer: level must be >= 1");

    TransferMatrix t;
    t.spec = spec;
    const int m = spec.dim;
    switch (spec.variant) {
        case Variant::full:
            t.entries = block_matrix(spec.sigma, m, spec.x0, full_sum(spec.x0));
            break;
        case Variant::hensley:
            t.entries = block_matrix(spec.sigma, m, spec.x0, partial_sum(spec.x0, spec.digit_bound));
            break;
        case Variant::coset: {
            const CosetSpace space(spec.level);
            t.blocks = space.size();
            t.entries = Eigen::MatrixXcd::Zero(m * t.blocks, m * t.blocks);
            for (int r = 1; r <= spec.level; ++r) {
                const Eigen::MatrixXcd b = block_matrix(spec.sigma, m, spec.x0, residue_sum(spec.x0, spec.level, r));
                // (L f)_t collects f_s with s = ((0,1),(1,k)).t
                for (int row = 0; row < t.blocks; ++row) {
                    const int col = space.branch_step(r, row);
                    t.entries.block(row * m, col * m, m, m) += b;
                }
            }
            break;
        }
    }
    if (!t.entries.allFinite()) throw std::runtime_error("transfer: non-finite matrix entries");
    return t;
}

std::vector<cplx> eigenvalues(const TransferMatrix& t) {
    std::vector<cplx> out;
    if (t.entries.imag().isZero(0.0)) {
        Eigen::EigenSolver<Eigen::MatrixXd> es(t.entries.real(), false);
        for (int i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i]);
    } else {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(t.entries, false);
        for (int i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i]);
    }
    return sorted(out);
}

double eval_block(const Eigen::VectorXd& c, int dim, int block, double x0, double x) {
    double acc = 0.0;
    for (int m = dim - 1; m >= 0; --m) acc = acc * (x - x0) + c[block * dim + m];
    return acc;
}

Spectrum top_eigen(const TransferMatrix& t) {
    if (!is_real(t.spec.sigma)) throw std::domain_error("top_eigen: sigma must be real");
    Eigen::EigenSolver<Eigen::MatrixXd> es(t.entries.real(), true);
    const auto& vals = es.eigenvalues();
    int lead = 0;
    for (int i = 1; i < vals.size(); ++i)
        if (std::abs(vals[i]) > std::abs(vals[lead])) lead = i;

    Spectrum out;
    for (int i = 0; i < vals.size(); ++i) out.eigenvalues.push_back(vals[i]);
    out.eigenvalues = sorted(out.eigenvalues);

    const Eigen::VectorXcd v = es.eigenvectors().col(lead);
    const int m = t.spec.dim;
    cplx at_zero = 0.0;
    for (int k = m - 1; k >= 0; --k) at_zero = at_zero * (-t.spec.x0) + v[k];
    out.leading_coefficients = (v / at_zero).real();
    if (out.eigenvalues.size() > 1) out.gap = std::abs(out.eigenvalues[0]) - std::abs(out.eigenvalues[1]);
    out.gap_warning = out.eigenvalues.size() > 1 && out.gap < gap_threshold;
    return out;
}

Derivative lyapunov_exponent(TransferSpec spec, double sigma_star, double h) {
    auto lambda_at = [&](double s) {
        TransferSpec sp = spec;
        sp.sigma = s;
        return top_modulus(sp);
    };
    auto central = [&](double step) { return (lambda_at(sigma_star + step) - lambda_at(sigma_star - step)) / (2 * step); };
    const double coarse = central(h);
    const double fine = central(h / 2);
    const double richardson = (4.0 * fine - coarse) / 3.0;
    const double err = std::abs(richardson - fine);
    if (!std::isfinite(richardson) || err > 1e-3 * std::max(1.0, std::abs(richardson)))
        throw std::runtime_error("lyapunov_exponent: difference quotient did not settle");
    return {std::abs(richardson), err};
}

GaussKuzmin gauss_kuzmin_iterate(int n, int dim, double x0) {
    if (n < 1) throw std::invalid_argument("gauss_kuzmin_iterate: n must be >= 1");
    TransferSpec spec;
    spec.dim = dim;
    spec.x0 = x0;
    const Eigen::MatrixXd l = build_matrix(spec).real();
    GaussKuzmin out;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v[0] = 1.0;
    for (int k = 0; k <= n; ++k) {
        double sup = 0.0;
        for (int g = 0; g <= 100; ++g) {
            const double x = g / 100.0;
            sup = std::max(sup, std::abs(eval_block(v, dim, 0, x0, x) - 1.0 / ((1.0 + x) * std::log(2.0))));
        }
        out.iterates.push_back(v);
        out.sup_distance.push_back(sup);
        v = l * v;
    }
    return out;
}

SelbergValue selberg_zeta(cplx s, Group group, int dim, int level, double x0) {
    if ((2.0 * s).real() <= 1.0) throw std::domain_error("selberg_zeta: need Re(2s) > 1");
    auto det_at = [&](int m, cplx* eig_prod) {
        TransferSpec spec;
        spec.sigma = s;
        spec.dim = m;
        spec.x0 = x0;
        if (group == Group::coset) {
            spec.variant = Variant::coset;
            spec.level = level;
        }
        TransferMatrix t = build_matrix(spec);
        if (group == Group::sl2z) t.entries = (t.entries * t.entries).eval();
        const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(t.entries.rows(), t.entries.cols()) - t.entries;
        if (eig_prod) {
            cplx p = 1.0;
            for (cplx l : eigenvalues(t)) p *= 1.0 - l;
            *eig_prod = p;
        }
        return cplx(a.partialPivLu().determinant());
    };
    SelbergValue out{};
    out.value = det_at(dim, &out.eigen_product);
    out.value_refined = det_at(std::min(dim + 8, max_dim), nullptr);
    out.stability = std::abs(out.value - out.value_refined);
    return out;
}

Dimension hensley_dimension(int digit_bound, int dim, double tol, double x0) {
    if (digit_bound < 2) throw std::invalid_argument("hensley_dimension: digit bound must be >= 2");
    TransferSpec spec;
    spec.variant = Variant::hensley;
    spec.digit_bound = digit_bound;
    spec.dim = dim;
    spec.x0 = x0;
    auto excess = [&](double s) {
        spec.sigma = s;
        return top_modulus(spec) - 1.0;
    };
    double lo = 0.1, hi = 1.0;
    if (!(excess(lo) > 0.0 && excess(hi) < 0.0)) throw std::runtime_error("hensley_dimension: bracket (0.1, 1) failed");
    int it = 0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0.0 ? lo : hi) = mid;
        ++it;
    }
    return {0.5 * (lo + hi), it, hi - lo};
}

}  // namespace arithmos::transfer

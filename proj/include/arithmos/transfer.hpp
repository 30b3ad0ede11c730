#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace arithmos::transfer {

using cplx = std::complex<double>;

// Expansion centre for the monomial basis: the fixed point of the digit-1
// branch, where the basis converges fastest for the full operator.
constexpr double default_x0 = 0.6180339887498949;

enum class Variant { full, coset, hensley };

struct TransferSpec {
    cplx sigma = 1.0;
    Variant variant = Variant::full;
    int level = 2;        // coset variant: modulus N
    int digit_bound = 2;  // hensley variant: digits 1..D
    int dim = 24;         // basis size M per block
    double x0 = default_x0;  // Taylor expansion point

    std::string describe() const;
};

struct TransferMatrix {
    TransferSpec spec;
    int blocks = 1;
    Eigen::MatrixXcd entries;  // (dim*blocks) square; block (t, s) at rows t*dim, cols s*dim
    Eigen::MatrixXd real() const { return entries.real(); }
};

struct Spectrum {
    std::vector<cplx> eigenvalues;          // sorted by modulus, descending
    Eigen::VectorXd leading_coefficients;   // leading eigenvector, value at x = 0 normalized to 1
    double gap = 0.0;                       // |lambda_1| - |lambda_2|
    bool gap_warning = false;
};

constexpr int max_dim = 64;
constexpr double gap_threshold = 1e-6;

TransferMatrix build_matrix(const TransferSpec& spec);
Spectrum top_eigen(const TransferMatrix& t);
std::vector<cplx> eigenvalues(const TransferMatrix& t);

// Evaluate the function with coefficients c (block b) at x.
double eval_block(const Eigen::VectorXd& c, int dim, int block, double x0, double x);

struct Derivative {
    double value;
    double error_estimate;
};
// |d lambda_sigma / d sigma| at sigma_star, central differences plus one Richardson step.
Derivative lyapunov_exponent(TransferSpec spec, double sigma_star, double h = 1e-4);

struct GaussKuzmin {
    std::vector<Eigen::VectorXd> iterates;  // coefficients of L^k 1, k = 0..n
    std::vector<double> sup_distance;       // to 1/((1+x) log 2) on the 0.01 grid
};
GaussKuzmin gauss_kuzmin_iterate(int n, int dim, double x0 = default_x0);

enum class Group { pgl2z, sl2z, coset };

struct SelbergValue {
    cplx value;
    cplx value_refined;  // same with dim + 8
    double stability;    // |value - value_refined|
    cplx eigen_product;  // prod (1 - lambda_i), or (1 - lambda_i^2) for SL(2,Z)
};
SelbergValue selberg_zeta(cplx s, Group group, int dim = 24, int level = 2, double x0 = default_x0);

struct Dimension {
    double value;
    int iterations;
    double bracket_width;
};
Dimension hensley_dimension(int digit_bound, int dim = 24, double tol = 1e-10, double x0 = default_x0);

}  // namespace arithmos::transfer

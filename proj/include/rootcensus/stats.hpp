#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace rcs {

// Dense row-major matrix, sized for the small systems used here
// (covariances of a handful of motifs, GLM information matrices).
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> v;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), v(r * c, fill) {}

    double& at(std::size_t i, std::size_t j) { return v[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return v[i * cols + j]; }

    static Matrix identity(std::size_t n);
    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    std::vector<double> apply(const std::vector<double>& x) const;
};

// Eigendecomposition of a symmetric matrix (cyclic Jacobi). Eigenvalues
// ascending; columns of `vectors` are the matching eigenvectors.
struct EigenSym {
    std::vector<double> values;
    Matrix vectors;
};
EigenSym eigen_symmetric(const Matrix& a);

// Symmetric inverse square root. Throws error::code::domain when the
// smallest eigenvalue is below `rel_tol` times the largest.
Matrix inverse_sqrt_symmetric(const Matrix& a, double rel_tol = 1e-10);

// Solves a x = b by Gaussian elimination with partial pivoting. Throws
// error::code::domain on (near-)singular a.
std::vector<double> solve_linear(Matrix a, std::vector<double> b);
Matrix invert(const Matrix& a);

// Distributions.
double normal_cdf(double x);
double chi_square_cdf(double x, int dof);
double chi_square_quantile(double p, int dof);

// Two-sided Kolmogorov-Smirnov test of `sorted_sample` against a CDF given
// as a callable; returns the statistic and asymptotic p-value.
struct KsResult {
    double statistic;
    double p_value;
};
double ks_p_value(double d, std::size_t n);
template <typename Cdf>
KsResult ks_test_sorted(const std::vector<double>& sorted_sample, Cdf&& cdf) {
    const std::size_t n = sorted_sample.size();
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(sorted_sample[i]);
        const double lo = f - static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n - f;
        if (lo > d) d = lo;
        if (hi > d) d = hi;
    }
    return {d, ks_p_value(d, n)};
}

// Moments of a sample.
double mean(const std::vector<double>& x);
double variance(const std::vector<double>& x); // unbiased
Matrix covariance(const std::vector<std::vector<double>>& rows); // unbiased, rows = observations

// k-th empirical moment of pre-standardized values.
double standardized_moment(const std::vector<double>& z, int k);

// Standard error of a statistic via batch means: the sample is split into
// `batches` contiguous blocks, the statistic is computed per block, and the
// spread of block values gives the error estimate.
template <typename Stat>
double batch_se(const std::vector<double>& x, int batches, Stat&& stat) {
    const std::size_t b = static_cast<std::size_t>(batches);
    const std::size_t per = x.size() / b;
    std::vector<double> vals;
    for (std::size_t t = 0; t < b; ++t) {
        std::vector<double> block(x.begin() + t * per, x.begin() + (t + 1) * per);
        vals.push_back(stat(block));
    }
    return std::sqrt(variance(vals) / static_cast<double>(b));
}

// Order statistic quantile: the ceil(p*n)-th smallest value (1-indexed).
double quantile_order_stat(std::vector<double> x, double p);

} // namespace rcs

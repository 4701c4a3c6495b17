#include "rootcensus/glm.hpp"

#include <algorithm>
#include <cmath>

#include "rootcensus/errors.hpp"

namespace rcs {
namespace {

constexpr double kGradTol = 1e-8;
constexpr int kMaxIter = 100;
constexpr double kSeparationNorm = 1e3;

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

double bernoulli_loglik(const Matrix& x, const std::vector<int>& y,
                        const std::vector<double>& beta) {
    double ll = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) {
        double eta = 0.0;
        for (std::size_t j = 0; j < x.cols; ++j) eta += x.at(i, j) * beta[j];
        // log sigma(eta) or log(1 - sigma(eta)), numerically stable.
        ll += y[i] ? -std::log1p(std::exp(-eta)) : -std::log1p(std::exp(eta));
    }
    return ll;
}

// Inverse of the standard normal CDF (Acklam's rational approximation),
// ample for confidence multipliers.
double normal_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) return -normal_quantile(1.0 - p);
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

} // namespace

RegressionFit logistic_fit(const Matrix& x, const std::vector<int>& y, double ci_level) {
    const std::size_t n = x.rows, p = x.cols;
    require(n == y.size(), error::code::invalid_argument, "design/label size mismatch");
    require(p >= 1 && n >= p, error::code::invalid_argument,
            "need at least as many observations as coefficients");
    for (std::size_t j = 0; j < p; ++j) {
        bool nonzero = false;
        for (std::size_t i = 0; i < n && !nonzero; ++i) nonzero = x.at(i, j) != 0.0;
        require(nonzero, error::code::invalid_argument,
                "design column " + std::to_string(j) + " is identically zero");
    }
    for (int v : y)
        require(v == 0 || v == 1, error::code::invalid_argument, "labels must be 0/1");

    RegressionFit fit;
    fit.beta.assign(p, 0.0);
    double ll = bernoulli_loglik(x, y, fit.beta);

    std::vector<double> mu(n), grad(p);
    Matrix info(p, p);
    for (fit.iterations = 0; fit.iterations < kMaxIter; ++fit.iterations) {
        for (std::size_t i = 0; i < n; ++i) {
            double eta = 0.0;
            for (std::size_t j = 0; j < p; ++j) eta += x.at(i, j) * fit.beta[j];
            mu[i] = sigmoid(eta);
        }
        std::fill(grad.begin(), grad.end(), 0.0);
        std::fill(info.v.begin(), info.v.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - mu[i];
            const double w = mu[i] * (1.0 - mu[i]);
            for (std::size_t j = 0; j < p; ++j) {
                grad[j] += x.at(i, j) * r;
                for (std::size_t l = j; l < p; ++l) info.at(j, l) += w * x.at(i, j) * x.at(i, l);
            }
        }
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t l = 0; l < j; ++l) info.at(j, l) = info.at(l, j);

        fit.gradient_norm = 0.0;
        for (double gj : grad) fit.gradient_norm = std::max(fit.gradient_norm, std::abs(gj));
        if (fit.gradient_norm < kGradTol) {
            fit.converged = true;
            break;
        }

        std::vector<double> step;
        try {
            step = solve_linear(info, grad);
        } catch (const error&) {
            fail(error::code::domain, "singular information matrix: collinear design");
        }

        // Step halving until the likelihood does not decrease.
        double scale = 1.0;
        std::vector<double> trial(p);
        double trial_ll = -1e308;
        for (int h = 0; h < 40; ++h, scale *= 0.5) {
            for (std::size_t j = 0; j < p; ++j) trial[j] = fit.beta[j] + scale * step[j];
            trial_ll = bernoulli_loglik(x, y, trial);
            if (trial_ll >= ll - 1e-12) break;
        }
        fit.beta = trial;
        ll = trial_ll;

        double norm = 0.0;
        for (double bj : fit.beta) norm = std::max(norm, std::abs(bj));
        if (norm > kSeparationNorm)
            fail(error::code::domain, "perfect separation: coefficients diverge");
    }
    fit.log_likelihood = ll;

    // Complete separation drives the optimum to infinity; in practice the
    // gradient tolerance is met at a finite beta that already classifies
    // every observation perfectly. Treat that as separation too.
    double worst_fit = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double eta = 0.0;
        for (std::size_t j = 0; j < p; ++j) eta += x.at(i, j) * fit.beta[j];
        worst_fit = std::max(worst_fit, std::abs(y[i] - sigmoid(eta)));
    }
    if (worst_fit < 1e-6)
        fail(error::code::domain, "perfect separation: fitted probabilities are all 0/1");

    try {
        fit.covariance = invert(info);
    } catch (const error&) {
        fail(error::code::domain, "singular information matrix: collinear design");
    }
    const double zq = normal_quantile(1.0 - (1.0 - ci_level) / 2.0);
    fit.se.resize(p);
    fit.z.resize(p);
    fit.ci_lo.resize(p);
    fit.ci_hi.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        fit.se[j] = std::sqrt(fit.covariance.at(j, j));
        fit.z[j] = fit.beta[j] / fit.se[j];
        fit.ci_lo[j] = fit.beta[j] - zq * fit.se[j];
        fit.ci_hi[j] = fit.beta[j] + zq * fit.se[j];
    }
    return fit;
}

} // namespace rcs

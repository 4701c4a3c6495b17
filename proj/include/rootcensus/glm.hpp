#pragma once

#include <vector>

#include "rootcensus/stats.hpp"

namespace rcs {

struct RegressionFit {
    std::vector<double> beta;
    Matrix covariance;        // inverse observed Fisher information at beta
    std::vector<double> se;
    std::vector<double> z;    // Wald
    std::vector<double> ci_lo, ci_hi;
    double log_likelihood = 0.0;
    double gradient_norm = 0.0; // infinity norm at the optimum
    int iterations = 0;
    bool converged = false;
};

// Bernoulli/logit maximum likelihood by Newton-Raphson with step halving.
// Converged when the gradient infinity norm drops below 1e-8 (at most 100
// iterations). Signals separation when |beta| exceeds 1e3 and collinearity
// when the information matrix is singular. `ci_level` is the two-sided
// confidence level for the Wald intervals.
RegressionFit logistic_fit(const Matrix& x, const std::vector<int>& y, double ci_level = 0.95);

} // namespace rcs

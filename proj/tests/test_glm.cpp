#include <doctest.h>

#include <cmath>

#include "rootcensus/errors.hpp"
#include "rootcensus/glm.hpp"
#include "rootcensus/rng.hpp"

using namespace rcs;

namespace {

struct Synthetic {
    Matrix x;
    std::vector<int> y;
};

Synthetic make_logit_data(std::size_t n, double b0, double b1, std::uint64_t seed) {
    Rng rng(seed);
    Synthetic s{Matrix(n, 2), std::vector<int>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = rng.normal();
        s.x.at(i, 0) = 1.0;
        s.x.at(i, 1) = xi;
        const double p = 1.0 / (1.0 + std::exp(-(b0 + b1 * xi)));
        s.y[i] = rng.uniform() < p ? 1 : 0;
    }
    return s;
}

double loglik(const Matrix& x, const std::vector<int>& y, const std::vector<double>& beta) {
    double ll = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) {
        double eta = 0.0;
        for (std::size_t j = 0; j < x.cols; ++j) eta += x.at(i, j) * beta[j];
        ll += y[i] ? -std::log1p(std::exp(-eta)) : -std::log1p(std::exp(eta));
    }
    return ll;
}

} // namespace

TEST_CASE("logistic fit recovers planted coefficients") {
    const Synthetic s = make_logit_data(5000, 0.4, 1.5, 11);
    const RegressionFit fit = logistic_fit(s.x, s.y);
    CHECK(fit.converged);
    CHECK(fit.gradient_norm < 1e-8);
    CHECK(std::abs(fit.beta[0] - 0.4) < 4 * fit.se[0]);
    CHECK(std::abs(fit.beta[1] - 1.5) < 4 * fit.se[1]);
}

TEST_CASE("information matrix matches a finite-difference hessian") {
    const Synthetic s = make_logit_data(800, -0.2, 0.8, 3);
    const RegressionFit fit = logistic_fit(s.x, s.y);
    const double h = 1e-4;
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            std::vector<double> bpp = fit.beta, bpm = fit.beta, bmp = fit.beta, bmm = fit.beta;
            bpp[a] += h; bpp[b] += h;
            bpm[a] += h; bpm[b] -= h;
            bmp[a] -= h; bmp[b] += h;
            bmm[a] -= h; bmm[b] -= h;
            const double hess = (loglik(s.x, s.y, bpp) - loglik(s.x, s.y, bpm) -
                                 loglik(s.x, s.y, bmp) + loglik(s.x, s.y, bmm)) /
                                (4 * h * h);
            // covariance = inverse information; compare information entries
            const Matrix info = invert(fit.covariance);
            CHECK(info.at(a, b) == doctest::Approx(-hess).epsilon(1e-4));
        }
}

TEST_CASE("error conditions") {
    SUBCASE("single observation separates") {
        Matrix x(1, 1);
        x.at(0, 0) = 1.0;
        try {
            logistic_fit(x, {1});
            FAIL("expected separation");
        } catch (const error& e) {
            CHECK(e.kind() == error::code::domain);
        }
    }
    SUBCASE("complete separation detected") {
        Matrix x(20, 2);
        std::vector<int> y(20);
        for (int i = 0; i < 20; ++i) {
            x.at(i, 0) = 1.0;
            x.at(i, 1) = i < 10 ? -1.0 - i * 0.1 : 1.0 + i * 0.1;
            y[i] = i < 10 ? 0 : 1;
        }
        CHECK_THROWS_AS(logistic_fit(x, y), error);
    }
    SUBCASE("collinear design rejected") {
        Synthetic s = make_logit_data(100, 0.0, 0.5, 7);
        Matrix x(100, 3);
        for (std::size_t i = 0; i < 100; ++i) {
            x.at(i, 0) = s.x.at(i, 0);
            x.at(i, 1) = s.x.at(i, 1);
            x.at(i, 2) = 2.0 * s.x.at(i, 1);
        }
        CHECK_THROWS_AS(logistic_fit(x, s.y), error);
    }
    SUBCASE("zero column rejected") {
        Matrix x(10, 2);
        std::vector<int> y(10, 0);
        for (int i = 0; i < 10; ++i) {
            x.at(i, 0) = 1.0;
            y[i] = i % 2;
        }
        CHECK_THROWS_AS(logistic_fit(x, y), error);
    }
    SUBCASE("labels must be binary") {
        Matrix x(3, 1);
        x.at(0, 0) = x.at(1, 0) = x.at(2, 0) = 1.0;
        CHECK_THROWS_AS(logistic_fit(x, {0, 1, 2}), error);
    }
}

TEST_CASE("wald test size under the null") {
    // Slope truly zero: |z| < 2.58 should hold in ~99% of fits.
    int ok = 0;
    const int seeds = 300;
    for (int s = 0; s < seeds; ++s) {
        const Synthetic d = make_logit_data(2000, 0.3, 0.0, 1000 + s);
        const RegressionFit fit = logistic_fit(d.x, d.y);
        if (std::abs(fit.z[1]) < 2.58) ++ok;
    }
    CHECK(static_cast<double>(ok) / seeds >= 0.98);
}

TEST_CASE("confidence interval coverage, small run") {
    int covered = 0;
    const int seeds = 60;
    for (int s = 0; s < seeds; ++s) {
        const Synthetic d = make_logit_data(2000, 0.5, 2.0, 5000 + s);
        const RegressionFit fit = logistic_fit(d.x, d.y);
        if (fit.ci_lo[1] <= 2.0 && 2.0 <= fit.ci_hi[1]) ++covered;
    }
    CHECK(covered >= 51); // 85%+ in a 60-seed smoke check
}

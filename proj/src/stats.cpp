#include "rootcensus/stats.hpp"

#include <algorithm>
#include <cmath>

#include "rootcensus/errors.hpp"

namespace rcs {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
    require(cols == o.rows, error::code::internal, "matrix shape mismatch");
    Matrix r(rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) {
            const double a = at(i, k);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < o.cols; ++j) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

std::vector<double> Matrix::apply(const std::vector<double>& x) const {
    require(cols == x.size(), error::code::internal, "matrix/vector shape mismatch");
    std::vector<double> y(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) y[i] += at(i, j) * x[j];
    return y;
}

EigenSym eigen_symmetric(const Matrix& a) {
    require(a.rows == a.cols, error::code::internal, "eigen: matrix not square");
    const std::size_t n = a.rows;
    Matrix d = a;
    Matrix q = Matrix::identity(n);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += d.at(i, j) * d.at(i, j);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t qi = p + 1; qi < n; ++qi) {
                const double apq = d.at(p, qi);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (d.at(qi, qi) - d.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double dkp = d.at(k, p), dkq = d.at(k, qi);
                    d.at(k, p) = c * dkp - s * dkq;
                    d.at(k, qi) = s * dkp + c * dkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double dpk = d.at(p, k), dqk = d.at(qi, k);
                    d.at(p, k) = c * dpk - s * dqk;
                    d.at(qi, k) = s * dpk + c * dqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double qkp = q.at(k, p), qkq = q.at(k, qi);
                    q.at(k, p) = c * qkp - s * qkq;
                    q.at(k, qi) = s * qkp + c * qkq;
                }
            }
    }

    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t x, std::size_t y) { return d.at(x, x) < d.at(y, y); });
    EigenSym out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = d.at(idx[j], idx[j]);
        for (std::size_t i = 0; i < n; ++i) out.vectors.at(i, j) = q.at(i, idx[j]);
    }
    return out;
}

Matrix inverse_sqrt_symmetric(const Matrix& a, double rel_tol) {
    const EigenSym es = eigen_symmetric(a);
    const double max_ev = *std::max_element(es.values.begin(), es.values.end());
    require(max_ev > 0.0, error::code::domain, "covariance has no positive eigenvalue");
    const std::size_t n = a.rows;
    Matrix r(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        require(es.values[j] >= rel_tol * max_ev, error::code::domain,
                "near-singular covariance (eigenvalue ratio below tolerance)");
        const double w = 1.0 / std::sqrt(es.values[j]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                r.at(i, k) += es.vectors.at(i, j) * w * es.vectors.at(k, j);
    }
    return r;
}

std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
    require(a.rows == a.cols && a.rows == b.size(), error::code::internal, "solve: shape mismatch");
    const std::size_t n = a.rows;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a.at(r, col)) > std::abs(a.at(piv, col))) piv = r;
        require(std::abs(a.at(piv, col)) > 1e-12, error::code::domain, "singular linear system");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a.at(r, col) / a.at(col, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a.at(i, j) * x[j];
        x[i] = s / a.at(i, i);
    }
    return x;
}

Matrix invert(const Matrix& a) {
    const std::size_t n = a.rows;
    Matrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        const auto col = solve_linear(a, std::move(e));
        for (std::size_t i = 0; i < n; ++i) inv.at(i, j) = col[i];
    }
    return inv;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace {

// Regularized lower incomplete gamma P(a,x): series for x < a+1, continued
// fraction otherwise.
double gamma_p(double a, double x) {
    if (x <= 0.0) return 0.0;
    const double gln = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - gln);
    }
    double b = x + 1.0 - a, c = 1e308, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return 1.0 - std::exp(-x + a * std::log(x) - gln) * h;
}

} // namespace

double chi_square_cdf(double x, int dof) {
    require(dof >= 1, error::code::invalid_argument, "chi-square dof must be >= 1");
    if (x <= 0.0) return 0.0;
    return gamma_p(dof / 2.0, x / 2.0);
}

double chi_square_quantile(double p, int dof) {
    require(p >= 0.0 && p < 1.0, error::code::invalid_argument, "quantile level in [0,1)");
    if (p == 0.0) return 0.0;
    double lo = 0.0, hi = dof + 10.0;
    while (chi_square_cdf(hi, dof) < p) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (chi_square_cdf(mid, dof) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double ks_p_value(double d, std::size_t n) {
    const double sn = std::sqrt(static_cast<double>(n));
    const double lambda = (sn + 0.12 + 0.11 / sn) * d;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = 2.0 * (j % 2 == 1 ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double mean(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double variance(const std::vector<double>& x) {
    require(x.size() >= 2, error::code::invalid_argument, "variance needs >= 2 samples");
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

Matrix covariance(const std::vector<std::vector<double>>& rows) {
    require(rows.size() >= 2, error::code::invalid_argument, "covariance needs >= 2 samples");
    const std::size_t d = rows.front().size();
    std::vector<double> mu(d, 0.0);
    for (const auto& r : rows)
        for (std::size_t j = 0; j < d; ++j) mu[j] += r[j];
    for (auto& v : mu) v /= static_cast<double>(rows.size());
    Matrix c(d, d);
    for (const auto& r : rows)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                c.at(i, j) += (r[i] - mu[i]) * (r[j] - mu[j]);
    for (auto& v : c.v) v /= static_cast<double>(rows.size() - 1);
    return c;
}

double standardized_moment(const std::vector<double>& z, int k) {
    double s = 0.0;
    for (double v : z) s += std::pow(v, k);
    return s / static_cast<double>(z.size());
}

double quantile_order_stat(std::vector<double> x, double p) {
    require(!x.empty(), error::code::invalid_argument, "quantile of empty sample");
    std::sort(x.begin(), x.end());
    const double rank = std::ceil(p * static_cast<double>(x.size()));
    std::size_t idx = rank <= 1.0 ? 0 : static_cast<std::size_t>(rank) - 1;
    if (idx >= x.size()) idx = x.size() - 1;
    return x[idx];
}

} // namespace rcs

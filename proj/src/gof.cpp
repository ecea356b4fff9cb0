#include "llrel/gof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace llrel {

double ks_statistic(const Sample& sample, const LogLogisticParams& params) {
    if (sample.has_censoring())
        throw std::invalid_argument("the KS statistic is defined for complete samples only");
    std::vector<double> sorted(sample.times());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = ll_cdf(sorted[i], params);
        const double step_hi = static_cast<double>(i + 1) / n;
        const double step_lo = static_cast<double>(i) / n;
        d = std::max(d, std::max(step_hi - f, f - step_lo));
    }
    return d;
}

double ks_pvalue(double d, std::size_t n) {
    if (d < 0.0 || d > 1.0)
        throw std::domain_error("KS statistic must lie in [0, 1]");
    if (n == 0)
        throw std::invalid_argument("KS p-value requires n >= 1");
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    // The series is an upper-tail expansion; below lambda ~ 0.2 the true
    // complementary CDF is 1 to more than twelve digits.
    if (lambda < 0.2)
        return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 10000; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-12)
            break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

// P(D_n < d) by the Durbin matrix representation, evaluated as in
// Marsaglia, Tsang & Wang (2003), "Evaluating Kolmogorov's Distribution":
// the CDF is n!/n^n times a central entry of the n-th power of a banded
// matrix built from h = ceil(n d) - n d.  Powers are taken by repeated
// squaring with decimal rescaling to dodge overflow.
class DurbinMatrix {
public:
    DurbinMatrix(std::size_t m) : m_(m), a_(m * m, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return a_[i * m_ + j]; }
    double at(std::size_t i, std::size_t j) const { return a_[i * m_ + j]; }
    std::size_t dim() const { return m_; }

    void multiply(const DurbinMatrix& lhs, const DurbinMatrix& rhs) {
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < m_; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < m_; ++k)
                    s += lhs.at(i, k) * rhs.at(k, j);
                at(i, j) = s;
            }
    }

private:
    std::size_t m_;
    std::vector<double> a_;
};

void matrix_power(const DurbinMatrix& h, int e_h, DurbinMatrix& out, int& e_out,
                  std::size_t power) {
    if (power == 1) {
        out = h;
        e_out = e_h;
        return;
    }
    DurbinMatrix half(h.dim());
    int e_half = 0;
    matrix_power(h, e_h, half, e_half, power / 2);
    DurbinMatrix sq(h.dim());
    sq.multiply(half, half);
    int e_sq = 2 * e_half;
    if (power % 2 == 0) {
        out = sq;
        e_out = e_sq;
    } else {
        out.multiply(h, sq);
        e_out = e_h + e_sq;
    }
    const std::size_t mid = h.dim() / 2;
    if (out.at(mid, mid) > 1e140) {
        for (std::size_t i = 0; i < h.dim(); ++i)
            for (std::size_t j = 0; j < h.dim(); ++j)
                out.at(i, j) *= 1e-140;
        e_out += 140;
    }
}

double kolmogorov_cdf_exact(double d, std::size_t n) {
    const double nd = static_cast<double>(n) * d;
    if (d <= 0.0 || nd <= 0.5)
        return 0.0;
    if (d >= 1.0)
        return 1.0;

    const std::size_t k = static_cast<std::size_t>(std::ceil(nd));
    const std::size_t m = 2 * k - 1;
    const double h = static_cast<double>(k) - nd;

    DurbinMatrix H(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            H.at(i, j) = (static_cast<long>(i) - static_cast<long>(j) + 1 < 0) ? 0.0 : 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        H.at(i, 0) -= std::pow(h, static_cast<double>(i + 1));
        H.at(m - 1, i) -= std::pow(h, static_cast<double>(m - i));
    }
    H.at(m - 1, 0) += (2.0 * h - 1.0 > 0.0 ? std::pow(2.0 * h - 1.0, static_cast<double>(m)) : 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (static_cast<long>(i) - static_cast<long>(j) + 1 > 0)
                for (long g = 1; g <= static_cast<long>(i) - static_cast<long>(j) + 1; ++g)
                    H.at(i, j) /= static_cast<double>(g);

    DurbinMatrix Hn(m);
    int e_hn = 0;
    matrix_power(H, 0, Hn, e_hn, n);

    double s = Hn.at(k - 1, k - 1);
    for (std::size_t i = 1; i <= n; ++i) {
        s *= static_cast<double>(i) / static_cast<double>(n);
        if (s < 1e-140) {
            s *= 1e140;
            e_hn -= 140;
        }
    }
    return std::clamp(s * std::pow(10.0, static_cast<double>(e_hn)), 0.0, 1.0);
}

} // namespace

double ks_pvalue_exact(double d, std::size_t n) {
    if (d < 0.0 || d > 1.0)
        throw std::domain_error("KS statistic must lie in [0, 1]");
    if (n == 0)
        throw std::invalid_argument("KS p-value requires n >= 1");
    return std::clamp(1.0 - kolmogorov_cdf_exact(d, n), 0.0, 1.0);
}

GofReport ks_test(const Sample& sample, const FitResult& fit) {
    const double d = ks_statistic(sample, fit.params);
    const std::size_t n = sample.size();
    const double p = n <= 100 ? ks_pvalue_exact(d, n) : ks_pvalue(d, n);
    return GofReport{d, p, fit.method, n};
}

} // namespace llrel

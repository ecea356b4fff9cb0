#include "llrel/distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace llrel {

namespace {

void require_positive_finite(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0)
        throw std::domain_error(std::string(name) + " must be positive and finite, got " +
                                std::to_string(v));
}

// log(1 + exp(z)) without overflow.
double softplus(double z) {
    if (z > 0.0)
        return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

} // namespace

LogLogisticParams::LogLogisticParams(double alpha_in, double beta_in)
    : alpha(alpha_in), beta(beta_in) {
    require_positive_finite(alpha, "shape alpha");
    require_positive_finite(beta, "scale beta");
}

LocScaleParams::LocScaleParams(double mu_in, double s_in) : mu(mu_in), s(s_in) {
    if (!std::isfinite(mu))
        throw std::domain_error("location mu must be finite");
    require_positive_finite(s, "scale s");
}

LogLogisticParams to_log_logistic(const LocScaleParams& p) {
    return LogLogisticParams(1.0 / p.s, std::exp(p.mu));
}

LocScaleParams to_loc_scale(const LogLogisticParams& p) {
    return LocScaleParams(std::log(p.beta), 1.0 / p.alpha);
}

double logistic_cdf(double z) {
    if (z >= 0.0)
        return 1.0 / (1.0 + std::exp(-z));
    const double ez = std::exp(z);
    return ez / (1.0 + ez);
}

double logit(double p) {
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0)
        throw std::domain_error("logit requires p strictly inside (0, 1), got " +
                                std::to_string(p));
    return std::log(p / (1.0 - p));
}

double ll_log_pdf(double t, const LogLogisticParams& p) {
    if (!std::isfinite(t) || t <= 0.0)
        throw std::domain_error("ll_pdf requires t > 0, got " + std::to_string(t));
    const double d = std::log(t) - std::log(p.beta);
    const double z = p.alpha * d;
    // log f = log(alpha) - log(beta) + (alpha-1)*d - 2*log(1+e^z)
    return std::log(p.alpha) - std::log(p.beta) + (p.alpha - 1.0) * d - 2.0 * softplus(z);
}

double ll_pdf(double t, const LogLogisticParams& p) {
    return std::exp(ll_log_pdf(t, p));
}

double ll_cdf(double t, const LogLogisticParams& p) {
    if (t <= 0.0)
        return 0.0; // support is (0, inf)
    const double z = p.alpha * (std::log(t) - std::log(p.beta));
    return logistic_cdf(z);
}

double ll_reliability(double t, const LogLogisticParams& p) {
    if (t <= 0.0)
        return 1.0;
    const double z = p.alpha * (std::log(t) - std::log(p.beta));
    return logistic_cdf(-z);
}

double ll_log_reliability(double t, const LogLogisticParams& p) {
    if (t <= 0.0)
        return 0.0;
    const double z = p.alpha * (std::log(t) - std::log(p.beta));
    return -softplus(z);
}

double ll_quantile(double p, const LogLogisticParams& params) {
    const double z = logit(p); // validates p in (0,1)
    return params.beta * std::exp(z / params.alpha);
}

} // namespace llrel

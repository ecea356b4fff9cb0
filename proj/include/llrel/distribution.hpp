#ifndef LLREL_DISTRIBUTION_HPP
#define LLREL_DISTRIBUTION_HPP

namespace llrel {

// Log-logistic distribution with shape alpha > 0 and scale beta > 0.
// The scale is the median: F(beta) = 1/2 for every alpha.
struct LogLogisticParams {
    double alpha;
    double beta;

    LogLogisticParams(double alpha_in, double beta_in);
};

// Location-scale parameters of log T, which is logistic with location mu
// and scale s > 0.  The two parameterizations are linked by
// mu = log(beta), s = 1/alpha.
struct LocScaleParams {
    double mu;
    double s;

    LocScaleParams(double mu_in, double s_in);
};

LogLogisticParams to_log_logistic(const LocScaleParams& p);
LocScaleParams to_loc_scale(const LogLogisticParams& p);

// Standard logistic CDF 1 / (1 + exp(-z)).
double logistic_cdf(double z);

// log(p / (1 - p)); the inverse of logistic_cdf.  Throws std::domain_error
// at the boundary values 0 and 1 -- plotting positions must stay strictly
// inside (0, 1).
double logit(double p);

// Density, distribution, reliability and quantile functions.  All are
// evaluated through the logistic representation z = alpha*(log t - log beta)
// so extreme shapes (alpha up to ~100) and extreme times stay finite.
double ll_pdf(double t, const LogLogisticParams& p);
double ll_log_pdf(double t, const LogLogisticParams& p);
double ll_cdf(double t, const LogLogisticParams& p);   // t <= 0 returns 0
double ll_reliability(double t, const LogLogisticParams& p);
double ll_log_reliability(double t, const LogLogisticParams& p);
double ll_quantile(double p, const LogLogisticParams& params);

} // namespace llrel

#endif

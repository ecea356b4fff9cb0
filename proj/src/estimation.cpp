#include "llrel/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "llrel/errors.hpp"
#include "llrel/stats_util.hpp"

namespace llrel {

std::vector<double> benard_positions(std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("benard_positions requires n >= 1");
    std::vector<double> p(n);
    const double denom = static_cast<double>(n) + 0.4;
    for (std::size_t i = 0; i < n; ++i)
        p[i] = (static_cast<double>(i + 1) - 0.3) / denom;
    return p;
}

namespace {

struct Obs {
    double time;
    bool censored;
};

// Sorted by time; at tied times failures come first, so a censored
// observation tied with a failure stays in the risk set for that failure.
std::vector<Obs> sorted_observations(const Sample& sample) {
    std::vector<Obs> obs;
    obs.reserve(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i)
        obs.push_back({sample.time(i), sample.is_censored(i)});
    std::sort(obs.begin(), obs.end(), [](const Obs& a, const Obs& b) {
        if (a.time != b.time)
            return a.time < b.time;
        return !a.censored && b.censored;
    });
    return obs;
}

} // namespace

std::vector<KmStep> km_cdf_estimate(const Sample& sample) {
    if (sample.failure_count() == 0)
        throw too_few_failures(0, 1, "Kaplan-Meier estimate");

    const auto obs = sorted_observations(sample);
    const double n = static_cast<double>(obs.size());
    std::vector<KmStep> steps;
    double survival = 1.0;
    std::size_t at_risk = obs.size();
    std::size_t cum_failures = 0;
    bool censoring_seen = false;
    std::size_t i = 0;
    while (i < obs.size()) {
        const double t = obs[i].time;
        std::size_t d = 0, c = 0;
        for (; i < obs.size() && obs[i].time == t; ++i)
            (obs[i].censored ? c : d)++;
        if (d > 0) {
            cum_failures += d;
            double cdf;
            if (!censoring_seen) {
                // No censored unit has left the risk set yet, so the product
                // telescopes; a single division keeps the ECDF reduction exact.
                cdf = static_cast<double>(cum_failures) / n;
                survival = static_cast<double>(obs.size() - cum_failures) / n;
            } else {
                survival *= 1.0 - static_cast<double>(d) / static_cast<double>(at_risk);
                cdf = 1.0 - survival;
            }
            steps.push_back({t, d, at_risk, cdf});
        }
        if (c > 0)
            censoring_seen = true;
        at_risk -= d + c;
    }
    return steps;
}

PlottingDesign::PlottingDesign(std::vector<double> y_in, std::vector<double> positions_in,
                               std::vector<std::size_t> ranks_in, std::size_t total_n_in)
    : y(std::move(y_in)), positions(std::move(positions_in)), ranks(std::move(ranks_in)),
      total_n(total_n_in) {
    if (y.size() != positions.size() || y.size() != ranks.size())
        throw std::invalid_argument("plotting design fields differ in length");
    if (y.size() < 3)
        throw too_few_failures(y.size(), 3, "probability-plot regression");
    x.resize(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        x[i] = logit(positions[i]); // rejects positions at 0 or 1
        if (i > 0 && x[i] <= x[i - 1])
            throw std::invalid_argument("plotting positions must be strictly increasing");
        if (i > 0 && ranks[i] <= ranks[i - 1])
            throw std::invalid_argument("design ranks must be strictly increasing");
    }
    if (ranks.back() >= total_n)
        throw std::invalid_argument("design rank exceeds the sample size");
}

double PlottingDesign::x_mean() const {
    return mean(x);
}

PlottingDesign plotting_design_complete(const Sample& sample) {
    if (sample.has_censoring())
        throw std::invalid_argument(
            "complete-data plotting design cannot be built from a censored sample");
    const std::size_t n = sample.size();
    std::vector<double> y(sample.times());
    std::sort(y.begin(), y.end());
    for (auto& v : y)
        v = std::log(v);
    std::vector<std::size_t> ranks(n);
    for (std::size_t i = 0; i < n; ++i)
        ranks[i] = i;
    return PlottingDesign(std::move(y), benard_positions(n), std::move(ranks), n);
}

PlottingDesign plotting_design_censored(const Sample& sample) {
    if (sample.failure_count() < 3)
        throw too_few_failures(sample.failure_count(), 3, "censored probability plot");

    const auto steps = km_cdf_estimate(sample);
    const auto obs = sorted_observations(sample);

    std::vector<double> y, positions;
    std::vector<std::size_t> ranks;
    y.reserve(sample.failure_count());
    positions.reserve(sample.failure_count());
    ranks.reserve(sample.failure_count());

    for (std::size_t i = 0; i < obs.size(); ++i)
        if (!obs[i].censored)
            ranks.push_back(i);

    // Midpoints between consecutive KM CDF values at the failures; tied
    // failures share a step and subdivide it uniformly.
    double f_prev = 0.0;
    for (const auto& step : steps) {
        for (std::size_t l = 1; l <= step.failures; ++l) {
            const double frac = (static_cast<double>(l) - 0.5) / static_cast<double>(step.failures);
            positions.push_back(f_prev + frac * (step.cdf - f_prev));
            y.push_back(std::log(step.time));
        }
        f_prev = step.cdf;
    }
    return PlottingDesign(std::move(y), std::move(positions), std::move(ranks), sample.size());
}

FitResult::FitResult(LocScaleParams ls, FitMethod m, std::optional<PlottingDesign> d)
    : loc_scale(ls), params(to_log_logistic(ls)), method(m), design(std::move(d)) {}

FitResult lse_fit(const PlottingDesign& design) {
    const double xbar = mean(design.x);
    const double ybar = mean(design.y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < design.points(); ++i) {
        const double dx = design.x[i] - xbar;
        sxx += dx * dx;
        sxy += dx * (design.y[i] - ybar);
    }
    if (sxx == 0.0)
        throw degenerate_design("plotting design has zero regressor variance");
    const double slope = sxy / sxx;
    if (slope <= 0.0)
        throw non_positive_slope(slope);
    return FitResult(LocScaleParams(ybar - slope * xbar, slope), FitMethod::lse, design);
}

double loglik(const LogLogisticParams& params, const Sample& sample) {
    NeumaierSum acc;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double t = sample.time(i);
        acc.add(sample.is_censored(i) ? ll_log_reliability(t, params)
                                      : ll_log_pdf(t, params));
    }
    return acc.value();
}

std::array<double, 2> loglik_gradient_log(const LogLogisticParams& params, const Sample& sample) {
    const double log_beta = std::log(params.beta);
    double g_la = 0.0, g_lb_sum = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double z = params.alpha * (std::log(sample.time(i)) - log_beta);
        const double sig = logistic_cdf(z);
        if (sample.is_censored(i)) {
            g_la += z * (-sig);
            g_lb_sum += -sig;
        } else {
            g_la += 1.0 + z * (1.0 - 2.0 * sig);
            g_lb_sum += 1.0 - 2.0 * sig;
        }
    }
    return {g_la, -params.alpha * g_lb_sum};
}

namespace {

constexpr double kLogParamBound = 50.0; // |log alpha|, |log beta - log t_med| beyond this is divergence
constexpr std::size_t kMaxIterations = 500;
constexpr double kParamTol = 1e-8;
constexpr double kObjectiveTol = 1e-10;

struct Point2 {
    double a; // log alpha
    double b; // log beta
};

double neg_loglik_log(const Point2& p, const Sample& sample) {
    if (std::abs(p.a) > kLogParamBound || std::abs(p.b) > kLogParamBound)
        return std::numeric_limits<double>::infinity();
    return -loglik(LogLogisticParams(std::exp(p.a), std::exp(p.b)), sample);
}

Point2 initial_point(const Sample& sample) {
    if (sample.failure_count() >= 3) {
        try {
            const auto design = sample.has_censoring() ? plotting_design_censored(sample)
                                                       : plotting_design_complete(sample);
            const auto fit = lse_fit(design);
            return {std::log(fit.params.alpha), fit.loc_scale.mu};
        } catch (const fit_error&) {
            // fall through to the default start
        }
    }
    const double med = empirical_quantile(sample.times(), 0.5);
    return {0.0, std::log(med)};
}

// Nelder-Mead on the negative log-likelihood in (log alpha, log beta);
// standard reflection/expansion/contraction coefficients.
Point2 nelder_mead(const Sample& sample, Point2 start) {
    std::array<Point2, 3> v{start, {start.a + 0.25, start.b}, {start.a, start.b + 0.25}};
    std::array<double, 3> f;
    for (int i = 0; i < 3; ++i)
        f[i] = neg_loglik_log(v[i], sample);

    auto order = [&] {
        if (f[0] > f[1]) { std::swap(f[0], f[1]); std::swap(v[0], v[1]); }
        if (f[1] > f[2]) { std::swap(f[1], f[2]); std::swap(v[1], v[2]); }
        if (f[0] > f[1]) { std::swap(f[0], f[1]); std::swap(v[0], v[1]); }
    };
    order();

    for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
        const double scale = std::max({1.0, std::abs(v[0].a), std::abs(v[0].b)});
        const double spread = std::max(
            std::max(std::abs(v[1].a - v[0].a), std::abs(v[2].a - v[0].a)),
            std::max(std::abs(v[1].b - v[0].b), std::abs(v[2].b - v[0].b)));
        if (spread < kParamTol * scale && std::abs(f[2] - f[0]) < kObjectiveTol)
            return v[0];
        if (std::abs(v[0].a) >= kLogParamBound || std::abs(v[0].b) >= kLogParamBound ||
            !std::isfinite(f[0]))
            throw non_convergence("likelihood maximization diverged to the parameter boundary",
                                  std::exp(v[0].a), std::exp(v[0].b));

        const Point2 centroid{(v[0].a + v[1].a) / 2.0, (v[0].b + v[1].b) / 2.0};
        auto along = [&](double coef) {
            return Point2{centroid.a + coef * (centroid.a - v[2].a),
                          centroid.b + coef * (centroid.b - v[2].b)};
        };

        const Point2 refl = along(1.0);
        const double f_refl = neg_loglik_log(refl, sample);
        if (f_refl < f[0]) {
            const Point2 exp_pt = along(2.0);
            const double f_exp = neg_loglik_log(exp_pt, sample);
            if (f_exp < f_refl) { v[2] = exp_pt; f[2] = f_exp; }
            else { v[2] = refl; f[2] = f_refl; }
        } else if (f_refl < f[1]) {
            v[2] = refl;
            f[2] = f_refl;
        } else {
            const Point2 contr = f_refl < f[2] ? along(0.5) : along(-0.5);
            const double f_contr = neg_loglik_log(contr, sample);
            if (f_contr < std::min(f_refl, f[2])) {
                v[2] = contr;
                f[2] = f_contr;
            } else {
                for (int i = 1; i < 3; ++i) {
                    v[i] = {v[0].a + 0.5 * (v[i].a - v[0].a), v[0].b + 0.5 * (v[i].b - v[0].b)};
                    f[i] = neg_loglik_log(v[i], sample);
                }
            }
        }
        order();
    }
    throw non_convergence("likelihood maximization exhausted its iteration budget",
                          std::exp(v[0].a), std::exp(v[0].b));
}

// Newton refinement of the Nelder-Mead solution: analytic gradient,
// finite-difference Hessian, backtracking on the objective.
Point2 newton_polish(const Sample& sample, Point2 p) {
    auto grad_at = [&](const Point2& q) {
        return loglik_gradient_log(LogLogisticParams(std::exp(q.a), std::exp(q.b)), sample);
    };
    double value = -neg_loglik_log(p, sample);

    for (int iter = 0; iter < 40; ++iter) {
        const auto g = grad_at(p);
        const double gscale = std::max(1.0, std::abs(value));
        if (std::max(std::abs(g[0]), std::abs(g[1])) < 1e-10 * gscale)
            break;

        const double h = 1e-6;
        const auto gpa = grad_at({p.a + h, p.b});
        const auto gma = grad_at({p.a - h, p.b});
        const auto gpb = grad_at({p.a, p.b + h});
        const auto gmb = grad_at({p.a, p.b - h});
        const double haa = (gpa[0] - gma[0]) / (2 * h);
        const double hbb = (gpb[1] - gmb[1]) / (2 * h);
        const double hab = ((gpa[1] - gma[1]) / (2 * h) + (gpb[0] - gmb[0]) / (2 * h)) / 2.0;
        const double det = haa * hbb - hab * hab;
        if (det == 0.0 || !std::isfinite(det))
            break;
        // Newton step solves H d = -g.
        double da = (-g[0] * hbb + g[1] * hab) / det;
        double db = (-g[1] * haa + g[0] * hab) / det;

        bool improved = false;
        for (int back = 0; back < 30; ++back) {
            const Point2 trial{p.a + da, p.b + db};
            const double trial_value = -neg_loglik_log(trial, sample);
            if (trial_value >= value - 1e-13 * std::abs(value)) {
                improved = trial_value > value;
                p = trial;
                value = trial_value;
                break;
            }
            da *= 0.5;
            db *= 0.5;
        }
        if (!improved && iter > 0)
            break;
    }
    return p;
}

} // namespace

FitResult mle_fit(const Sample& sample) {
    if (sample.failure_count() < 2)
        throw too_few_failures(sample.failure_count(), 2, "maximum likelihood");

    Point2 opt = newton_polish(sample, nelder_mead(sample, initial_point(sample)));

    const LogLogisticParams params(std::exp(opt.a), std::exp(opt.b));
    const auto g = loglik_gradient_log(params, sample);
    const double scale = std::max(1.0, std::abs(loglik(params, sample)));
    if (std::max(std::abs(g[0]), std::abs(g[1])) >= 1e-6 * scale)
        throw non_convergence("stationarity check failed after polishing", params.alpha,
                              params.beta);
    return FitResult(to_loc_scale(params), FitMethod::mle);
}

ObservedInformation observed_information(const LogLogisticParams& params, const Sample& sample) {
    const double ha = 1e-5 * params.alpha;
    const double hb = 1e-5 * params.beta;
    auto f = [&](double a, double b) { return loglik(LogLogisticParams(a, b), sample); };

    const double f0 = f(params.alpha, params.beta);
    const double haa =
        (f(params.alpha + ha, params.beta) - 2.0 * f0 + f(params.alpha - ha, params.beta)) /
        (ha * ha);
    const double hbb =
        (f(params.alpha, params.beta + hb) - 2.0 * f0 + f(params.alpha, params.beta - hb)) /
        (hb * hb);
    const double hab = (f(params.alpha + ha, params.beta + hb) -
                        f(params.alpha + ha, params.beta - hb) -
                        f(params.alpha - ha, params.beta + hb) +
                        f(params.alpha - ha, params.beta - hb)) /
                       (4.0 * ha * hb);

    ObservedInformation info{};
    info.matrix = {{{-haa, -hab}, {-hab, -hbb}}};

    const double tr = info.matrix[0][0] + info.matrix[1][1];
    const double det = info.matrix[0][0] * info.matrix[1][1] - hab * hab;
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    const double l1 = (tr + disc) / 2.0;
    const double l2 = (tr - disc) / 2.0;
    info.positive_definite = l1 > 0.0 && l2 > 0.0;
    const double lo = std::min(std::abs(l1), std::abs(l2));
    const double hi = std::max(std::abs(l1), std::abs(l2));
    info.condition = lo == 0.0 ? std::numeric_limits<double>::infinity() : hi / lo;
    return info;
}

} // namespace llrel

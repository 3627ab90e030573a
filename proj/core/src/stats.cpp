#include "ramalab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ramalab/errors.hpp"

namespace ramalab {

SampleStats standardize(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw std::invalid_argument("standardize: need at least 2 values");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double var = ss / static_cast<double>(n - 1);
    if (var <= 0.0) throw DegenerateSampleError("standardize: sample has zero variance");
    const double sd = std::sqrt(var);

    SampleStats out;
    out.n = n;
    out.mean = mean;
    out.stddev = sd;
    out.values.reserve(n);
    for (double v : values) out.values.push_back((v - mean) / sd);
    return out;
}

ChiSquareReport chi_square_gof(std::span<const double> normalized_values,
                               const NormalizedReference& ref) {
    const std::size_t n = normalized_values.size();
    if (n < 100) throw std::invalid_argument("chi_square_gof: need at least 100 samples");

    ChiSquareReport report;
    report.reference = ref.name();

    std::vector<double> edges(static_cast<std::size_t>(report.bins) - 1);
    for (int k = 1; k < report.bins; ++k) {
        edges[static_cast<std::size_t>(k - 1)] =
            ref.quantile(static_cast<double>(k) / report.bins);
    }
    std::vector<std::size_t> observed(static_cast<std::size_t>(report.bins), 0);
    for (double v : normalized_values) {
        const auto it = std::upper_bound(edges.begin(), edges.end(), v);
        ++observed[static_cast<std::size_t>(it - edges.begin())];
    }
    const double expected = static_cast<double>(n) / report.bins;
    double stat = 0.0;
    for (std::size_t o : observed) {
        const double d = static_cast<double>(o) - expected;
        stat += d * d / expected;
    }
    report.statistic = stat;
    return report;
}

ChiSquareReport chi_square_gof(const SampleStats& stats, const NormalizedReference& ref) {
    return chi_square_gof(std::span<const double>(stats.values), ref);
}

double z_statistic(double theta_obs, double theta_pred, std::size_t n) {
    if (!(theta_pred > 0.0 && theta_pred < 1.0)) {
        throw std::invalid_argument("z_statistic: theta_pred must be in (0,1)");
    }
    const double se = std::sqrt(theta_pred * (1.0 - theta_pred) / static_cast<double>(n));
    return (theta_obs - theta_pred) / se;
}

ZReport z_mass_left(std::span<const double> values, double theta_pred) {
    if (values.empty()) throw std::invalid_argument("z_mass_left: empty sample");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    std::size_t below = 0;
    for (double v : values) below += v < mean ? 1 : 0;

    ZReport report;
    report.n = values.size();
    report.theta_pred = theta_pred;
    report.theta_obs = static_cast<double>(below) / static_cast<double>(values.size());
    report.z = z_statistic(report.theta_obs, theta_pred, values.size());
    return report;
}

CorrelationReport correlation(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("correlation: need two equal-length samples of size >= 2");
    }
    const std::size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    CorrelationReport report;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        report.s_xx += dx * dx;
        report.s_yy += dy * dy;
        report.s_xy += dx * dy;
    }
    if (report.s_xx <= 0.0 || report.s_yy <= 0.0) {
        throw DegenerateSampleError("correlation: a sample has zero variance");
    }
    report.r = report.s_xy / std::sqrt(report.s_xx * report.s_yy);
    return report;
}

namespace {

// Ordinary least squares y = a + b x; returns (a, b).
std::pair<double, double> ols(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double a = (sy - b * sx) / n;
    return {a, b};
}

}  // namespace

FitReport fit_exponents(std::span<const double> n_values, std::span<const double> means,
                        std::span<const double> stds, int degree) {
    const std::size_t k = n_values.size();
    if (k < 3 || means.size() != k || stds.size() != k) {
        throw std::invalid_argument("fit_exponents: need >= 3 aligned points");
    }
    const double limit = ramanujan_threshold(degree);

    std::vector<double> log_n(k), log_gap(k), log_std(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (!(means[i] < limit)) {
            throw FitDomainError("fit_exponents: sample mean at or above 2 sqrt(d-1)");
        }
        if (!(stds[i] > 0.0)) throw std::invalid_argument("fit_exponents: stds must be positive");
        log_n[i] = std::log(n_values[i]);
        log_gap[i] = std::log(limit - means[i]);
        log_std[i] = std::log(stds[i]);
    }

    FitReport fit;
    const auto [a_mu, m] = ols(log_n, log_gap);
    const auto [a_sigma, s] = ols(log_n, log_std);
    fit.c_mu = -std::exp(a_mu);
    fit.m = m;
    fit.c_sigma = std::exp(a_sigma);
    fit.s = s;
    fit.mean_residuals.resize(k);
    fit.std_residuals.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        fit.mean_residuals[i] = log_gap[i] - (a_mu + m * log_n[i]);
        fit.std_residuals[i] = log_std[i] - (a_sigma + s * log_n[i]);
    }
    return fit;
}

double threshold_sigma_distance(const FitReport& fit, double n_vertices) {
    return (-fit.c_mu / fit.c_sigma) * std::pow(n_vertices, fit.m - fit.s);
}

double percent_ramanujan(std::span<const SpectralSummary> summaries, int degree) {
    const double limit = ramanujan_threshold(degree);
    std::size_t converged = 0, ramanujan = 0;
    for (const auto& s : summaries) {
        if (!s.converged) continue;
        ++converged;
        ramanujan += s.lambda_abs <= limit ? 1 : 0;
    }
    if (converged == 0) {
        throw std::invalid_argument("percent_ramanujan: no converged summaries");
    }
    return static_cast<double>(ramanujan) / static_cast<double>(converged);
}

IndependenceReport independence_product_check(std::span<const SpectralSummary> summaries,
                                              int degree) {
    const double limit = ramanujan_threshold(degree);
    std::size_t converged = 0, plus = 0, minus = 0, joint = 0;
    for (const auto& s : summaries) {
        if (!s.converged) continue;
        ++converged;
        plus += s.lambda_plus <= limit ? 1 : 0;
        minus += std::abs(s.lambda_minus) <= limit ? 1 : 0;
        joint += s.lambda_abs <= limit ? 1 : 0;
    }
    if (converged == 0) {
        throw std::invalid_argument("independence_product_check: no converged summaries");
    }
    IndependenceReport report;
    report.p_plus = static_cast<double>(plus) / static_cast<double>(converged);
    report.p_minus = static_cast<double>(minus) / static_cast<double>(converged);
    report.p_product = report.p_plus * report.p_minus;
    report.p_joint = static_cast<double>(joint) / static_cast<double>(converged);
    return report;
}

}  // namespace ramalab

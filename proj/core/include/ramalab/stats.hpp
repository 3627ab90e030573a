#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ramalab/reference.hpp"
#include "ramalab/spectra.hpp"

namespace ramalab {

// Sample shifted and scaled to mean 0, standard deviation 1
// (n-1 denominator).
struct SampleStats {
    std::size_t n = 0;
    double mean = 0.0;
    double stddev = 0.0;
    std::vector<double> values;  // standardized data
};

// Throws std::invalid_argument for n < 2, DegenerateSampleError for a
// constant sample.
SampleStats standardize(std::span<const double> values);

// 20 equiprobable bins under the normalized reference, so every expected
// count is n/20 and the null is chi^2 with 19 degrees of freedom.
struct ChiSquareReport {
    double statistic = 0.0;
    int bins = 20;
    int dof = 19;
    double crit_05 = 30.1435;
    double crit_01 = 36.1908;
    std::string reference;

    bool rejected_05() const { return statistic > crit_05; }
    bool rejected_01() const { return statistic > crit_01; }
};

// Requires n >= 100 so the expected bin counts stay comfortably large.
ChiSquareReport chi_square_gof(const SampleStats& stats, const NormalizedReference& ref);

// Same test for values already on the reference's normalized scale
// (calibration draws from the reference itself; re-standardizing those would
// shift the null mean from 19 to about 17).
ChiSquareReport chi_square_gof(std::span<const double> normalized_values,
                               const NormalizedReference& ref);

// z-statistic for the observed fraction of data strictly below the sample
// mean against a predicted mass-left value.
struct ZReport {
    double theta_obs = 0.0;
    double theta_pred = 0.0;
    std::size_t n = 0;
    double z = 0.0;
};

double z_statistic(double theta_obs, double theta_pred, std::size_t n);
ZReport z_mass_left(std::span<const double> values, double theta_pred);

// Sample correlation r = S_xy / sqrt(S_xx S_yy) with centered sums.
struct CorrelationReport {
    double r = 0.0;
    double s_xx = 0.0;
    double s_yy = 0.0;
    double s_xy = 0.0;
};

CorrelationReport correlation(std::span<const double> xs, std::span<const double> ys);

// Least-squares fits of the power-law model for the gap to 2 sqrt(d-1):
//   mean(N)  ~ 2 sqrt(d-1) + c_mu N^m      (c_mu < 0)
//   std(N)   ~ c_sigma N^s
// obtained from straight lines in log-log variables.
struct FitReport {
    double c_mu = 0.0;     // negative
    double m = 0.0;
    double c_sigma = 0.0;  // positive
    double s = 0.0;
    std::vector<double> mean_residuals;  // log-scale, per point
    std::vector<double> std_residuals;
};

// Requires >= 3 points, every mean below 2 sqrt(d-1) (FitDomainError
// otherwise) and positive stds.
FitReport fit_exponents(std::span<const double> n_values, std::span<const double> means,
                        std::span<const double> stds, int degree);

// (-c_mu / c_sigma) N^(m-s): how many standard deviations the Ramanujan
// threshold sits to the right of the mean at size N.
double threshold_sigma_distance(const FitReport& fit, double n_vertices);

// Fraction of converged summaries with lambda_abs <= 2 sqrt(d-1);
// unconverged entries are excluded from the denominator.
double percent_ramanujan(std::span<const SpectralSummary> summaries, int degree);

// Empirical check that lambda_plus and lambda_minus behave independently:
// compares P(lambda <= T) with P(lambda_plus <= T) * P(|lambda_minus| <= T)
// at T = 2 sqrt(d-1).
struct IndependenceReport {
    double p_plus = 0.0;
    double p_minus = 0.0;
    double p_product = 0.0;
    double p_joint = 0.0;
};

IndependenceReport independence_product_check(std::span<const SpectralSummary> summaries,
                                              int degree);

}  // namespace ramalab

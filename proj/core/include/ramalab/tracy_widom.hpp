#pragma once

#include <vector>

namespace ramalab {

// Airy function from its large-s asymptotic series, summed to optimal
// truncation (~1e-15 relative at s = 10, ~3e-9 at s = 6). Used as boundary
// data at the right end of the integration grid, where that accuracy is
// required for the backward integration to stay on the Hastings-McLeod
// branch through the region that matters.
double airy_ai_asymptotic(double s);
double airy_ai_prime_asymptotic(double s);

// Hastings-McLeod solution of q'' = s q + 2 q^3 (the solution with
// q ~ Ai(s) as s -> +inf), tabulated on a uniform grid descending from s_hi,
// together with the running integrals used to assemble the distributions:
//   I1(s) = int_s^inf q(x) dx
//   J(s)  = int_s^inf q(x)^2 dx
//   I2(s) = int_s^inf (x - s) q(x)^2 dx
struct PainleveSolution {
    double s_hi = 0.0;
    double s_lo = 0.0;
    double step = 0.0;
    std::vector<double> s;   // descending, s[0] = s_hi
    std::vector<double> q;
    std::vector<double> q_prime;
    std::vector<double> i1;
    std::vector<double> j;
    std::vector<double> i2;
};

// Fixed-step classical RK4 integration downward from s_hi with Airy
// asymptotic boundary data, switching to the solution's left asymptotic
// series q ~ sqrt(-s/2)(1 + s^-3/8 - ...) below s = -7 (backward shooting
// cannot track the separatrix further in double precision; the series is
// the more accurate representation there and the integrals accumulate
// smoothly through the seam). Throws IntegrationFailureError if |q| exceeds
// 10 (the trajectory left the Hastings-McLeod branch).
// Preconditions: s_hi >= 6, s_lo < 0, 0 < step <= 0.005.
PainleveSolution solve_painleve_ii(double s_hi = 10.0, double s_lo = -13.0, double step = 0.002);

// Same integration from caller-supplied boundary values q(s_hi), q'(s_hi).
// Exists so that alternative boundary data (and failure modes) are testable.
PainleveSolution solve_painleve_ii_with_boundary(double s_hi, double s_lo, double step,
                                                 double q_hi, double q_prime_hi);

// One of the three Tracy-Widom laws assembled from a Painleve solution:
//   F2(s) = exp(-I2(s))
//   F1(s) = sqrt(F2(s)) exp(-I1(s)/2)
//   F4(s) = sqrt(F2(x)) cosh(I1(x)/2) at x = s sqrt(2)
// The beta = 4 argument convention is the one whose mean/std/mass-left match
// (-2.3069, 0.71953, 0.511072); without the sqrt(2) rescaling the mean would
// be -3.2624.
class TWDistribution {
  public:
    TWDistribution(int beta, const PainleveSolution& solution);

    int beta() const { return beta_; }

    // Linear interpolation on the tabulated grid. Outside the grid the cdf
    // clamps to 0/1 and the pdf to 0; *clamped reports when that happened.
    double cdf(double s, bool* clamped = nullptr) const;
    double pdf(double s, bool* clamped = nullptr) const;

    // Quadrature moments of the tabulated density. The constructor verifies
    // that the tail mass beyond the grid ends is below 1e-9
    // (GridCoverageError otherwise).
    double mean() const { return mean_; }
    double stddev() const { return stddev_; }
    double mass_left_of_mean() const { return cdf(mean_); }

    // Monotone inverse of the cdf by bisection (to 1e-10 in s); p in (0,1).
    double quantile(double p) const;

    // Mean-0 variance-1 view: cdf_n(x) = cdf(sigma x + mu), etc.
    double cdf_normalized(double x) const { return cdf(stddev_ * x + mean_); }
    double pdf_normalized(double x) const { return stddev_ * pdf(stddev_ * x + mean_); }
    double quantile_normalized(double p) const { return (quantile(p) - mean_) / stddev_; }

    const std::vector<double>& grid() const { return s_; }

  private:
    int beta_;
    std::vector<double> s_;  // ascending native grid
    std::vector<double> cdf_;
    std::vector<double> pdf_;
    double mean_ = 0.0;
    double stddev_ = 0.0;
};

}  // namespace ramalab

#include "ramalab/tracy_widom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "ramalab/errors.hpp"

namespace ramalab {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Sums the divergent asymptotic series sum (-1)^k u_k / zeta^k (and the
// primed variant with v_k) to its optimal truncation. At s = 10 the smallest
// term is ~1e-15 relative; at the s >= 6 floor it is ~3e-9. That accuracy at
// the boundary matters: backward integration amplifies any deviation from
// the Hastings-McLeod branch by exp((2 sqrt(2)/3) |s|^{3/2}) on the left.
void airy_asymptotic_sums(double zeta, double& sum_u, double& sum_v) {
    sum_u = 1.0;
    sum_v = 1.0;
    double uk = 1.0;
    double sign = 1.0;
    double prev = 1.0;
    for (int k = 1; k < 60; ++k) {
        uk *= static_cast<double>((6 * k - 5)) * (6 * k - 3) * (6 * k - 1) /
              (216.0 * k * (2 * k - 1));
        const double vk = uk * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
        sign = -sign;
        const double tu = sign * uk / std::pow(zeta, k);
        if (std::abs(tu) >= prev) break;  // past the optimal truncation point
        prev = std::abs(tu);
        sum_u += tu;
        sum_v += sign * vk / std::pow(zeta, k);
        if (std::abs(tu) < 1e-17) break;
    }
}

}  // namespace

double airy_ai_asymptotic(double s) {
    const double zeta = 2.0 / 3.0 * s * std::sqrt(s);
    double su, sv;
    airy_asymptotic_sums(zeta, su, sv);
    return std::exp(-zeta) / (2.0 * kSqrtPi * std::pow(s, 0.25)) * su;
}

double airy_ai_prime_asymptotic(double s) {
    const double zeta = 2.0 / 3.0 * s * std::sqrt(s);
    double su, sv;
    airy_asymptotic_sums(zeta, su, sv);
    return -std::pow(s, 0.25) * std::exp(-zeta) / (2.0 * kSqrtPi) * sv;
}

namespace {

// State: (q, q', I1, J, K) with K = int_s^inf x q(x)^2 dx, all integrals
// running from s to +inf, so each derivative in s carries a minus sign.
using State = std::array<double, 5>;

State derivative(double s, const State& y) {
    const double q = y[0];
    return {y[1], s * q + 2.0 * q * q * q, -q, -q * q, -s * q * q};
}

// Below this point the solution is taken from its left asymptotic series
// instead of the shot trajectory. Backward shooting in doubles cannot stay
// on the Hastings-McLeod separatrix much past here: boundary and roundoff
// deviations grow like exp((2 sqrt(2)/3) |s|^{3/2}) and reach O(1) around
// s = -10 even with 1e-15 boundary data, while the series below is already
// accurate to ~1e-6 at the switch and improves leftward.
constexpr double kLeftSwitch = -7.0;

double q_left_series(double s) {
    const double i3 = 1.0 / (s * s * s);
    const double p = 1.0 + i3 * (1.0 / 8.0 + i3 * (-73.0 / 128.0 + i3 * (10657.0 / 1024.0)));
    return std::sqrt(-0.5 * s) * p;
}

double q_left_series_prime(double s) {
    const double i3 = 1.0 / (s * s * s);
    const double p = 1.0 + i3 * (1.0 / 8.0 + i3 * (-73.0 / 128.0 + i3 * (10657.0 / 1024.0)));
    const double dp = (-3.0 / 8.0 + i3 * (6.0 * 73.0 / 128.0 + i3 * (-9.0 * 10657.0 / 1024.0))) /
                      (s * s * s * s);
    const double root = std::sqrt(-0.5 * s);
    return -p / (4.0 * root) + root * dp;
}

// Derivatives of the integral states alone, with q prescribed by the series.
State derivative_left(double s, const State&) {
    const double q = q_left_series(s);
    return {0.0, 0.0, -q, -q * q, -s * q * q};
}

template <typename Deriv>
State rk4_step(double s, const State& y, double h, const Deriv& derivative_at) {
    const State k1 = derivative_at(s, y);
    State y2;
    for (int i = 0; i < 5; ++i) y2[i] = y[i] + 0.5 * h * k1[i];
    const State k2 = derivative_at(s + 0.5 * h, y2);
    State y3;
    for (int i = 0; i < 5; ++i) y3[i] = y[i] + 0.5 * h * k2[i];
    const State k3 = derivative_at(s + 0.5 * h, y3);
    State y4;
    for (int i = 0; i < 5; ++i) y4[i] = y[i] + h * k3[i];
    const State k4 = derivative_at(s + h, y4);
    State out;
    for (int i = 0; i < 5; ++i) {
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

}  // namespace

PainleveSolution solve_painleve_ii_with_boundary(double s_hi, double s_lo, double step,
                                                 double q_hi, double q_prime_hi) {
    if (s_hi < 6.0) throw std::invalid_argument("solve_painleve_ii: s_hi must be >= 6");
    if (s_lo >= 0.0) throw std::invalid_argument("solve_painleve_ii: s_lo must be negative");
    if (step <= 0.0 || step > 0.005) {
        throw std::invalid_argument("solve_painleve_ii: step must be in (0, 0.005]");
    }

    // Snap the node count so the grid has an even number of intervals
    // (composite Simpson quadrature downstream).
    long n_steps = static_cast<long>(std::ceil((s_hi - s_lo) / step - 1e-9));
    if (n_steps % 2 != 0) ++n_steps;

    PainleveSolution sol;
    sol.s_hi = s_hi;
    sol.step = step;
    sol.s_lo = s_hi - static_cast<double>(n_steps) * step;
    sol.s.reserve(n_steps + 1);
    sol.q.reserve(n_steps + 1);
    sol.q_prime.reserve(n_steps + 1);
    sol.i1.reserve(n_steps + 1);
    sol.j.reserve(n_steps + 1);
    sol.i2.reserve(n_steps + 1);

    // Tail integrals above s_hi, leading order of the Airy decay
    // (int_s e^{-2/3 x^{3/2}} g ~ e^{-2/3 s^{3/2}} g(s) / sqrt(s)).
    const double root = std::sqrt(s_hi);
    State y = {q_hi, q_prime_hi, q_hi / root, q_hi * q_hi / (2.0 * root),
               s_hi * q_hi * q_hi / (2.0 * root)};

    double s = s_hi;
    for (long i = 0;; ++i) {
        sol.s.push_back(s);
        sol.q.push_back(y[0]);
        sol.q_prime.push_back(y[1]);
        sol.i1.push_back(y[2]);
        sol.j.push_back(y[3]);
        sol.i2.push_back(y[4] - s * y[3]);  // I2 = K - s J
        if (i == n_steps) break;
        const bool left_region = s <= kLeftSwitch + 1e-12;
        if (left_region) {
            y = rk4_step(s, y, -step, derivative_left);
        } else {
            y = rk4_step(s, y, -step, derivative);
        }
        s = s_hi - static_cast<double>(i + 1) * step;
        if (left_region || s <= kLeftSwitch + 1e-12) {
            // Hand the trajectory over to the series once it crosses the
            // switch; integrals keep accumulating through the seam.
            y[0] = q_left_series(s);
            y[1] = q_left_series_prime(s);
        }
        if (std::abs(y[0]) > 10.0) {
            throw IntegrationFailureError(
                "solve_painleve_ii: |q| > 10; boundary data or step left the "
                "Hastings-McLeod branch");
        }
    }
    return sol;
}

PainleveSolution solve_painleve_ii(double s_hi, double s_lo, double step) {
    return solve_painleve_ii_with_boundary(s_hi, s_lo, step, airy_ai_asymptotic(s_hi),
                                           airy_ai_prime_asymptotic(s_hi));
}

namespace {

double simpson(const std::vector<double>& f, double h) {
    // f.size() odd (even interval count), guaranteed by the grid snap
    double odd = 0.0, even = 0.0;
    const std::size_t n = f.size() - 1;
    for (std::size_t i = 1; i < n; i += 2) odd += f[i];
    for (std::size_t i = 2; i < n; i += 2) even += f[i];
    return h / 3.0 * (f.front() + f.back() + 4.0 * odd + 2.0 * even);
}

}  // namespace

TWDistribution::TWDistribution(int beta, const PainleveSolution& solution) : beta_(beta) {
    if (beta != 1 && beta != 2 && beta != 4) {
        throw std::invalid_argument("TWDistribution: beta must be 1, 2 or 4");
    }
    const std::size_t m = solution.s.size();
    if (m < 3) throw GridCoverageError("TWDistribution: empty Painleve solution");

    const double arg_scale = (beta == 4) ? std::sqrt(2.0) : 1.0;
    s_.resize(m);
    cdf_.resize(m);
    pdf_.resize(m);
    // solution arrays are descending in s; native tables ascend
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t r = m - 1 - i;
        const double q = solution.q[r];
        const double i1 = solution.i1[r];
        const double j = solution.j[r];
        const double i2 = solution.i2[r];
        double f = 0.0, fp = 0.0;
        switch (beta) {
            case 1:
                f = std::exp(-0.5 * (i2 + i1));
                fp = 0.5 * f * (j + q);
                break;
            case 2:
                f = std::exp(-i2);
                fp = f * j;
                break;
            case 4: {
                const double e = std::exp(-0.5 * i2);
                f = e * std::cosh(0.5 * i1);
                fp = e * (0.5 * j * std::cosh(0.5 * i1) - 0.5 * q * std::sinh(0.5 * i1));
                break;
            }
        }
        s_[i] = solution.s[r] / arg_scale;
        cdf_[i] = f;
        pdf_[i] = fp * arg_scale;
    }

    if (cdf_.front() > 1e-9 || 1.0 - cdf_.back() > 1e-9) {
        throw GridCoverageError("TWDistribution: tail mass beyond the grid exceeds 1e-9");
    }

    const double h = solution.step / arg_scale;
    std::vector<double> sf(m), ssf(m);
    for (std::size_t i = 0; i < m; ++i) {
        sf[i] = s_[i] * pdf_[i];
        ssf[i] = s_[i] * s_[i] * pdf_[i];
    }
    const double mass = simpson(pdf_, h);
    mean_ = simpson(sf, h) / mass;
    stddev_ = std::sqrt(simpson(ssf, h) / mass - mean_ * mean_);
}

double TWDistribution::cdf(double s, bool* clamped) const {
    if (clamped) *clamped = false;
    if (s <= s_.front()) {
        if (clamped) *clamped = true;
        return 0.0;
    }
    if (s >= s_.back()) {
        if (clamped) *clamped = true;
        return 1.0;
    }
    const double t = (s - s_.front()) / (s_.back() - s_.front()) * static_cast<double>(s_.size() - 1);
    const std::size_t i = std::min(static_cast<std::size_t>(t), s_.size() - 2);
    const double w = (s - s_[i]) / (s_[i + 1] - s_[i]);
    return cdf_[i] + w * (cdf_[i + 1] - cdf_[i]);
}

double TWDistribution::pdf(double s, bool* clamped) const {
    if (clamped) *clamped = false;
    if (s <= s_.front() || s >= s_.back()) {
        if (clamped) *clamped = true;
        return 0.0;
    }
    const double t = (s - s_.front()) / (s_.back() - s_.front()) * static_cast<double>(s_.size() - 1);
    const std::size_t i = std::min(static_cast<std::size_t>(t), s_.size() - 2);
    const double w = (s - s_[i]) / (s_[i + 1] - s_[i]);
    return pdf_[i] + w * (pdf_[i + 1] - pdf_[i]);
}

double TWDistribution::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("TWDistribution::quantile: p must be in (0,1)");
    }
    double lo = s_.front();
    double hi = s_.back();
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace ramalab

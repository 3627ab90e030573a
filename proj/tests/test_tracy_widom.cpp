#include <doctest.h>

#include <cmath>
#include <vector>

#include "ramalab/errors.hpp"
#include "ramalab/reference.hpp"
#include "ramalab/tracy_widom.hpp"

using namespace ramalab;

namespace {

const PainleveSolution& shared_solution() {
    static const PainleveSolution sol = solve_painleve_ii();
    return sol;
}

const TWDistribution& shared_tw(int beta) {
    static const TWDistribution tw1(1, shared_solution());
    static const TWDistribution tw2(2, shared_solution());
    static const TWDistribution tw4(4, shared_solution());
    switch (beta) {
        case 1: return tw1;
        case 2: return tw2;
        default: return tw4;
    }
}

double solution_q_at(const PainleveSolution& sol, double s) {
    const double idx = (sol.s_hi - s) / sol.step;
    return sol.q[static_cast<std::size_t>(std::llround(idx))];
}

// Independent second-order (midpoint) integration of q'' = s q + 2 q^3 from
// the same boundary data; a different order and step from the production
// integrator, used only to corroborate its output.
double q_at_zero_by_midpoint(double step) {
    double s = 10.0;
    double q = airy_ai_asymptotic(s);
    double p = airy_ai_prime_asymptotic(s);
    const long steps = std::lround(s / step);
    for (long i = 0; i < steps; ++i) {
        const double h = -step;
        const double k1q = p;
        const double k1p = s * q + 2.0 * q * q * q;
        const double qm = q + 0.5 * h * k1q;
        const double pm = p + 0.5 * h * k1p;
        const double sm = s + 0.5 * h;
        q += h * pm;
        p += h * (sm * qm + 2.0 * qm * qm * qm);
        s = 10.0 - static_cast<double>(i + 1) * step;
    }
    return q;
}

double simpson_over(const std::vector<double>& f, double h) {
    double odd = 0.0, even = 0.0;
    for (std::size_t i = 1; i + 1 < f.size(); i += 2) odd += f[i];
    for (std::size_t i = 2; i + 1 < f.size(); i += 2) even += f[i];
    return h / 3.0 * (f.front() + f.back() + 4.0 * odd + 2.0 * even);
}

// Frozen Table-1 values: (mean, std, mass left of mean) per beta.
struct TableRow {
    int beta;
    double mean, stddev, mass_left;
};
constexpr TableRow kTable[] = {
    {1, -1.2065, 1.26798, 0.519652},
    {2, -1.7711, 0.90177, 0.515016},
    {4, -2.3069, 0.71953, 0.511072},
};

}  // namespace

TEST_CASE("hastings-mcleod value at the origin") {
    const double q0 = solution_q_at(shared_solution(), 0.0);
    CHECK(std::abs(q0 - 0.36706) <= 5e-4);
    // converged value from two independent integrators
    CHECK(std::abs(q0 - 0.3670615515) <= 1e-6);
    const double q0_rk2 = q_at_zero_by_midpoint(0.00025);
    CHECK(std::abs(q0 - q0_rk2) <= 1e-6);
}

TEST_CASE("solution matches the Airy asymptote at s = 5") {
    const double ratio = solution_q_at(shared_solution(), 5.0) / airy_ai_asymptotic(5.0);
    CHECK(std::abs(ratio - 1.0) <= 1e-4);
}

TEST_CASE("backward integration does not depend on s_lo") {
    const PainleveSolution a = solve_painleve_ii(10.0, -8.0, 0.002);
    const PainleveSolution b = solve_painleve_ii(10.0, -10.0, 0.002);
    for (std::size_t i = 0; i < a.s.size(); ++i) {
        CHECK(std::abs(a.q[i] - b.q[i]) <= 1e-8);
    }
}

TEST_CASE("hastings-mcleod solution is positive and decreasing in s") {
    const PainleveSolution& sol = shared_solution();
    for (std::size_t i = 0; i < sol.q.size(); ++i) {
        CHECK(sol.q[i] > 0.0);
        if (i > 0) CHECK(sol.q[i] > sol.q[i - 1]);  // grid is descending in s
    }
    // running integrals are nonnegative and nonincreasing in s
    for (std::size_t i = 1; i < sol.q.size(); ++i) {
        CHECK(sol.i1[i] >= sol.i1[i - 1]);
        CHECK(sol.i2[i] >= sol.i2[i - 1]);
    }
}

TEST_CASE("bad boundary data blows up and is reported") {
    CHECK_THROWS_AS(solve_painleve_ii_with_boundary(10.0, -13.0, 0.002, 1.0, 0.0),
                    IntegrationFailureError);
}

TEST_CASE("solver precondition checks") {
    CHECK_THROWS_AS(solve_painleve_ii(5.0, -13.0, 0.002), std::invalid_argument);
    CHECK_THROWS_AS(solve_painleve_ii(10.0, -13.0, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(solve_painleve_ii(10.0, 1.0, 0.002), std::invalid_argument);
}

TEST_CASE("moments and mass-left reproduce the reference table") {
    for (const auto& row : kTable) {
        const TWDistribution& tw = shared_tw(row.beta);
        CAPTURE(row.beta);
        CHECK(std::abs(tw.mean() - row.mean) <= 1e-3);
        CHECK(std::abs(tw.stddev() - row.stddev) <= 1e-3);
        CHECK(std::abs(tw.mass_left_of_mean() - row.mass_left) <= 1e-3);
        CHECK(std::abs(tw.cdf(row.mean) - row.mass_left) <= 1e-3);
    }
}

TEST_CASE("densities are normalized and vanish at the grid ends") {
    for (int beta : {1, 2, 4}) {
        const TWDistribution& tw = shared_tw(beta);
        const auto& grid = tw.grid();
        std::vector<double> f(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) f[i] = tw.pdf(grid[i]);
        const double h = grid[1] - grid[0];
        CAPTURE(beta);
        CHECK(std::abs(simpson_over(f, h) - 1.0) <= 1e-6);
        CHECK(tw.pdf(grid.front() + 1e-9) < 1e-8);
        CHECK(tw.pdf(grid.back() - 1e-9) < 1e-7);
    }
}

TEST_CASE("peak heights order as f1 < f2 < f4") {
    double peaks[3] = {0, 0, 0};
    const int betas[3] = {1, 2, 4};
    for (int k = 0; k < 3; ++k) {
        const TWDistribution& tw = shared_tw(betas[k]);
        for (double s : tw.grid()) peaks[k] = std::max(peaks[k], tw.pdf(s));
    }
    CHECK(peaks[0] < peaks[1]);
    CHECK(peaks[1] < peaks[2]);
}

TEST_CASE("cdf is monotone wherever the density is visible") {
    for (int beta : {1, 2, 4}) {
        const TWDistribution& tw = shared_tw(beta);
        const auto& grid = tw.grid();
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            if (tw.pdf(grid[i]) > 1e-12) {
                CHECK(tw.cdf(grid[i + 1]) > tw.cdf(grid[i]));
            }
        }
    }
}

TEST_CASE("quantile inverts the cdf") {
    const TWDistribution& tw1 = shared_tw(1);
    for (double s : {-3.0, -1.0, 0.5, 2.0}) {
        CHECK(std::abs(tw1.quantile(tw1.cdf(s)) - s) <= 1e-8);
    }
    CHECK(std::abs(tw1.quantile(0.519652) - (-1.2065)) <= 2e-3);
    CHECK_THROWS_AS(tw1.quantile(0.0), std::invalid_argument);
    CHECK_THROWS_AS(tw1.quantile(1.0), std::invalid_argument);

    // across the grid interior (where the density is alive, so the inverse
    // is well-conditioned)
    for (int beta : {1, 2, 4}) {
        const TWDistribution& tw = shared_tw(beta);
        const auto& grid = tw.grid();
        for (std::size_t i = 200; i + 200 < grid.size(); i += 587) {
            if (tw.pdf(grid[i]) < 1e-6) continue;
            CHECK(std::abs(tw.quantile(tw.cdf(grid[i])) - grid[i]) <= 1e-8);
        }
    }
}

TEST_CASE("normalized view has mean 0, variance 1 and the table mass at x = 0") {
    for (const auto& row : kTable) {
        const TWDistribution& tw = shared_tw(row.beta);
        // quadrature over the normalized density
        const double h = (tw.grid()[1] - tw.grid()[0]) / tw.stddev();
        std::vector<double> f(tw.grid().size()), xf(tw.grid().size()), xxf(tw.grid().size());
        for (std::size_t i = 0; i < tw.grid().size(); ++i) {
            const double x = (tw.grid()[i] - tw.mean()) / tw.stddev();
            f[i] = tw.pdf_normalized(x);
            xf[i] = x * f[i];
            xxf[i] = x * x * f[i];
        }
        CAPTURE(row.beta);
        CHECK(std::abs(simpson_over(xf, h)) <= 1e-6);
        CHECK(std::abs(simpson_over(xxf, h) - 1.0) <= 1e-6);
        CHECK(std::abs(tw.cdf_normalized(0.0) - row.mass_left) <= 1e-3);
    }
}

TEST_CASE("halving the integration step leaves the moments unchanged") {
    const PainleveSolution coarse = solve_painleve_ii(10.0, -13.0, 0.004);
    const PainleveSolution fine = solve_painleve_ii(10.0, -13.0, 0.002);
    for (int beta : {1, 2, 4}) {
        const TWDistribution a(beta, coarse);
        const TWDistribution b(beta, fine);
        CAPTURE(beta);
        CHECK(std::abs(a.mean() - b.mean()) < 1e-6);
        CHECK(std::abs(a.stddev() - b.stddev()) < 1e-6);
    }
}

TEST_CASE("cdf clamps outside the grid and reports it") {
    const TWDistribution& tw = shared_tw(1);
    bool clamped = false;
    CHECK(tw.cdf(-50.0, &clamped) == 0.0);
    CHECK(clamped);
    CHECK(tw.cdf(50.0, &clamped) == 1.0);
    CHECK(clamped);
    tw.cdf(0.0, &clamped);
    CHECK_FALSE(clamped);
}

TEST_CASE("insufficient grid coverage is rejected") {
    // at s_hi = 6 the beta = 1 right tail still holds ~2e-6 of mass
    const PainleveSolution narrow = solve_painleve_ii(6.0, -13.0, 0.002);
    CHECK_THROWS_AS(TWDistribution(1, narrow), GridCoverageError);
}

TEST_CASE("normal reference quantile round-trips") {
    const StandardNormalReference normal;
    CHECK(normal.cdf(0.0) == doctest::Approx(0.5));
    CHECK(std::abs(normal.quantile(0.975) - 1.959964) <= 1e-5);
    for (double p : {0.05, 0.3, 0.99}) {
        CHECK(std::abs(normal.cdf(normal.quantile(p)) - p) <= 1e-12);
    }
    CHECK_THROWS_AS(normal.quantile(0.0), std::invalid_argument);
    CHECK(normal.mass_left_of_mean() == 0.5);
}

#include "ramalab/spectra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ramalab/errors.hpp"
#include "ramalab/rng.hpp"

namespace ramalab {

double ramanujan_threshold(int degree) {
    if (degree < 1) throw std::invalid_argument("degree must be positive");
    return 2.0 * std::sqrt(static_cast<double>(degree - 1));
}

bool ramanujan_check(const SpectralSummary& summary, int degree) {
    if (!summary.converged) {
        throw std::invalid_argument("ramanujan_check: summary did not converge");
    }
    return summary.lambda_abs <= ramanujan_threshold(degree);
}

std::vector<double> dense_spectrum(const RegularGraph& g) {
    const int n = g.n_vertices;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [u, v] : g.edges) {
        if (u == v) {
            a(u - 1, u - 1) += 2.0;
        } else {
            a(u - 1, v - 1) += 1.0;
            a(v - 1, u - 1) += 1.0;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    std::vector<double> values(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

AdjacencyOperator::AdjacencyOperator(const RegularGraph& g) : n_(g.n_vertices) {
    from_.reserve(g.edges.size());
    to_.reserve(g.edges.size());
    for (const auto& [u, v] : g.edges) {
        from_.push_back(u - 1);
        to_.push_back(v - 1);
    }
}

void AdjacencyOperator::apply(const double* x, double* y) const {
    std::fill(y, y + n_, 0.0);
    const std::size_t m = from_.size();
    for (std::size_t e = 0; e < m; ++e) {
        const int u = from_[e];
        const int v = to_[e];
        // u == v adds 2 x[v], matching a_vv = 2 for a self-loop
        y[u] += x[v];
        y[v] += x[u];
    }
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd pseudo_random_vector(int n, std::uint64_t& state) {
    VectorXd v(n);
    for (int i = 0; i < n; ++i) {
        state = mix64(state);
        v[i] = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
    }
    return v;
}

// Two-pass classical Gram-Schmidt against the deflation block and the first
// j basis columns. Returns the measured projection coefficients onto the
// basis columns (the Galerkin entries of the new column).
VectorXd orthogonalize(VectorXd& w, const MatrixXd& deflate, const MatrixXd& basis, int j) {
    VectorXd coeffs = VectorXd::Zero(j);
    for (int pass = 0; pass < 2; ++pass) {
        if (deflate.cols() > 0) {
            VectorXd dc = deflate.transpose() * w;
            w.noalias() -= deflate * dc;
        }
        if (j > 0) {
            VectorXd c = basis.leftCols(j).transpose() * w;
            w.noalias() -= basis.leftCols(j) * c;
            coeffs += c;
        }
    }
    return coeffs;
}

}  // namespace

ExtremalEigenResult lanczos_extremal(const LinearOperator& op,
                                     std::span<const std::vector<double>> deflate,
                                     const LanczosOptions& options) {
    const int n = op.dim();
    const int n_deflate = static_cast<int>(deflate.size());
    const int sub_dim = n - n_deflate;
    if (sub_dim <= 0) {
        throw std::invalid_argument("lanczos_extremal: deflation spans the whole space");
    }
    if (!options.want_largest && !options.want_smallest) {
        throw std::invalid_argument("lanczos_extremal: nothing requested");
    }

    const int m_cap = std::max(3, std::min(options.max_basis, sub_dim));
    const int ends = (options.want_largest ? 1 : 0) + (options.want_smallest ? 1 : 0);
    const long budget = options.max_matvecs > 0
                            ? options.max_matvecs
                            : ends * static_cast<long>(std::ceil(300.0 * std::log(std::max(n, 3))));

    MatrixXd deflate_block(n, n_deflate);
    for (int k = 0; k < n_deflate; ++k) {
        deflate_block.col(k) = Eigen::Map<const VectorXd>(deflate[static_cast<std::size_t>(k)].data(), n);
    }

    MatrixXd basis(n, m_cap);
    MatrixXd h = MatrixXd::Zero(m_cap, m_cap);
    std::uint64_t state = options.start_seed;

    const auto fresh_orthonormal = [&](int j) -> VectorXd {
        for (int tries = 0; tries < 64; ++tries) {
            VectorXd v = pseudo_random_vector(n, state);
            orthogonalize(v, deflate_block, basis, j);
            const double norm = v.norm();
            if (norm > 1e-8) return v / norm;
        }
        throw std::runtime_error("lanczos_extremal: could not build an orthogonal start vector");
    };

    basis.col(0) = fresh_orthonormal(0);
    int j = 1;

    ExtremalEigenResult result;
    VectorXd w(n);
    double h_scale = 1.0;

    while (true) {
        if (result.matvecs >= budget) break;

        // Expand the newest basis column.
        const int k = j - 1;
        op.apply(basis.col(k).data(), w.data());
        ++result.matvecs;
        VectorXd coeffs = orthogonalize(w, deflate_block, basis, j);
        for (int i = 0; i < j; ++i) {
            h(i, k) = coeffs[i];
            h(k, i) = coeffs[i];
        }
        const double beta = w.norm();
        h_scale = std::max({h_scale, std::abs(coeffs[k]), beta});

        // The projected eigensolve costs about as much as a reorthogonalized
        // step, so once the basis is warm it runs on a small cadence; it is
        // forced at restart and exhaustion boundaries, whose branches consume
        // the decomposition.
        const bool check_now = j <= 8 || j % 3 == 0 || j == m_cap || j >= sub_dim;
        Eigen::SelfAdjointEigenSolver<MatrixXd> eig;
        if (check_now) {
            eig.compute(h.topLeftCorner(j, j));
            const VectorXd& theta = eig.eigenvalues();  // ascending
            result.smallest = theta[0];
            result.largest = theta[j - 1];
            const double scale =
                std::max(1.0, std::max(std::abs(theta[0]), std::abs(theta[j - 1])));
            const double res_top = beta * std::abs(eig.eigenvectors()(k, j - 1));
            const double res_bot = beta * std::abs(eig.eigenvectors()(k, 0));
            result.largest_converged = res_top <= options.tol * scale;
            result.smallest_converged = res_bot <= options.tol * scale;

            const bool top_done = !options.want_largest || result.largest_converged;
            const bool bot_done = !options.want_smallest || result.smallest_converged;
            if (top_done && bot_done) break;
        }

        if (j >= sub_dim) {
            // The basis spans the whole deflated complement, so the Ritz
            // values are the exact eigenvalues.
            result.largest_converged = true;
            result.smallest_converged = true;
            break;
        }

        const bool breakdown = beta <= 1e-13 * h_scale;

        if (j == m_cap) {
            // Thick restart: compress to the extremal Ritz vectors and carry
            // the current residual direction.
            int keep_top = options.want_largest ? options.keep_per_end : 2;
            int keep_bot = options.want_smallest ? options.keep_per_end : 2;
            while (keep_top + keep_bot > m_cap - 2) {
                if (keep_top >= keep_bot) --keep_top; else --keep_bot;
            }
            const int lo_end = keep_bot;             // indices [0, lo_end)
            const int hi_start = std::max(lo_end, j - keep_top);
            std::vector<int> kept;
            for (int i = 0; i < lo_end; ++i) kept.push_back(i);
            for (int i = hi_start; i < j; ++i) kept.push_back(i);

            const int k_total = static_cast<int>(kept.size());
            MatrixXd compressed(n, k_total);
            VectorXd kept_theta(k_total);
            for (int c = 0; c < k_total; ++c) {
                compressed.col(c) =
                    basis.leftCols(j) * eig.eigenvectors().col(kept[static_cast<std::size_t>(c)]);
                kept_theta[c] = eig.eigenvalues()[kept[static_cast<std::size_t>(c)]];
            }
            basis.leftCols(k_total) = compressed;
            h.setZero();
            for (int c = 0; c < k_total; ++c) h(c, c) = kept_theta[c];
            basis.col(k_total) = breakdown ? fresh_orthonormal(k_total) : VectorXd(w / beta);
            j = k_total + 1;
            continue;
        }

        basis.col(j) = breakdown ? fresh_orthonormal(j) : VectorXd(w / beta);
        ++j;
    }

    return result;
}

namespace {

std::uint64_t graph_content_seed(const RegularGraph& g) {
    std::uint64_t h = hash_combine(static_cast<std::uint64_t>(g.n_vertices),
                                   static_cast<std::uint64_t>(g.degree));
    for (const auto& [u, v] : g.edges) {
        h = hash_combine(h, static_cast<std::uint64_t>(u) << 20 | static_cast<std::uint64_t>(v));
    }
    return h;
}

}  // namespace

SpectralSummary extremal_nontrivial_seeded(const RegularGraph& g, double tol,
                                           std::uint64_t start_seed) {
    if (tol <= 0) throw std::invalid_argument("extremal_nontrivial: tol must be positive");
    if (g.n_vertices < 2) throw std::invalid_argument("extremal_nontrivial: graph too small");
    if (!is_connected(g)) {
        throw std::invalid_argument(
            "extremal_nontrivial: graph must be connected (d is a multiple eigenvalue otherwise)");
    }

    const int n = g.n_vertices;
    std::vector<std::vector<double>> deflate;
    deflate.emplace_back(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
    // -d is an eigenvalue exactly when the graph is bipartite; deflating the
    // signed bipartition removes that trivial end as well. Detected
    // structurally so that incidentally bipartite graphs from non-bipartite
    // families are treated correctly.
    std::vector<double> signs = bipartition_signs(g);
    if (!signs.empty()) {
        const double inv = 1.0 / std::sqrt(static_cast<double>(n));
        for (double& s : signs) s *= inv;
        deflate.push_back(std::move(signs));
    }

    AdjacencyOperator op(g);
    LanczosOptions options;
    options.tol = tol;
    options.start_seed = start_seed;
    const ExtremalEigenResult r = lanczos_extremal(op, deflate, options);

    SpectralSummary summary;
    summary.lambda_plus = r.largest;
    summary.lambda_minus = r.smallest;
    summary.lambda_abs = std::max(std::abs(r.largest), std::abs(r.smallest));
    summary.converged = r.largest_converged && r.smallest_converged;
    summary.is_ramanujan =
        summary.converged && summary.lambda_abs <= ramanujan_threshold(g.degree);
    return summary;
}

SpectralSummary extremal_nontrivial(const RegularGraph& g, double tol) {
    return extremal_nontrivial_seeded(g, tol, graph_content_seed(g));
}

CheegerReport cheeger_bruteforce(const RegularGraph& g) {
    const int n = g.n_vertices;
    if (n > 20) throw SizeLimitError("cheeger_bruteforce: N > 20");
    if (n < 2) throw std::invalid_argument("cheeger_bruteforce: need at least 2 vertices");

    std::vector<std::uint32_t> edge_bits;
    edge_bits.reserve(g.edges.size());
    for (const auto& [u, v] : g.edges) {
        if (u == v) continue;  // self-loops never cross a cut
        edge_bits.push_back((1u << (u - 1)) | (1u << (v - 1)));
    }

    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_mask = 1;
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    // Restricting to subsets containing vertex 1 covers every {U, V\U} pair.
    for (std::uint32_t mask = 1; mask < full; mask += 2) {
        const int size = std::popcount(mask);
        int boundary = 0;
        for (std::uint32_t eb : edge_bits) {
            const std::uint32_t overlap = mask & eb;
            boundary += (overlap != 0 && overlap != eb) ? 1 : 0;
        }
        const double ratio = static_cast<double>(boundary) / std::min(size, n - size);
        if (ratio < best) {
            best = ratio;
            best_mask = mask;
        }
    }

    CheegerReport report;
    report.h = best;
    for (int v = 0; v < n; ++v) {
        if (best_mask & (1u << v)) report.witness_set.push_back(v + 1);
    }
    const double lambda2 = dense_spectrum(g)[1];
    const double gap = static_cast<double>(g.degree) - lambda2;
    report.lower_bound = gap / 2.0;
    report.upper_bound = 2.0 * std::sqrt(2.0 * g.degree * gap);
    return report;
}

}  // namespace ramalab

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ramalab/graph.hpp"

namespace ramalab {

// Extremal non-trivial eigenvalues of a connected d-regular graph.
//
// lambda_plus is the largest eigenvalue after deflating the trivial ones
// (always d; also -d when the graph is bipartite), i.e. the second-largest
// eigenvalue of the adjacency matrix. lambda_minus is the smallest eigenvalue
// after the same deflation. For graphs whose non-trivial spectrum is entirely
// negative (K4: {-1,-1,-1}) lambda_plus is simply the largest non-trivial
// value, which keeps lambda_abs = max(|lambda_plus|, |lambda_minus|) correct.
struct SpectralSummary {
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    double lambda_abs = 0.0;
    bool is_ramanujan = false;
    bool converged = false;
};

double ramanujan_threshold(int degree);  // 2 sqrt(d-1)

// Exact threshold comparison on the computed value; requires a converged
// summary (throws std::invalid_argument otherwise).
bool ramanujan_check(const SpectralSummary& summary, int degree);

// All N eigenvalues of the adjacency matrix, descending. Dense
// eigendecomposition; intended as the oracle at small N.
std::vector<double> dense_spectrum(const RegularGraph& g);

// Iterative path used for large N. Throws std::invalid_argument on
// disconnected graphs (d would be a multiple eigenvalue). tol bounds the
// Ritz residual; the matvec budget is 300 ln N per spectrum end, and a graph
// whose solve does not converge within it is reported with converged=false.
SpectralSummary extremal_nontrivial(const RegularGraph& g, double tol = 1e-10);

// Variant with an explicit seed for the solver's start vector, for callers
// that need the whole computation to be a pure function of their stream.
SpectralSummary extremal_nontrivial_seeded(const RegularGraph& g, double tol,
                                           std::uint64_t start_seed);

// --- expanding constant -----------------------------------------------------

// h(G) = min over nonempty proper U of |boundary(U)| / min(|U|, |V\U|),
// with the spectral bounds (d - lambda2)/2 <= h <= 2 sqrt(2 d (d - lambda2)).
struct CheegerReport {
    double h = 0.0;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    std::vector<int> witness_set;  // 1-based vertices of a minimizing U
};

// Exact enumeration over all 2^N vertex subsets; N <= 20 (SizeLimitError).
CheegerReport cheeger_bruteforce(const RegularGraph& g);

// --- building blocks (shared with the GOE validation path) ------------------

class LinearOperator {
  public:
    virtual ~LinearOperator() = default;
    virtual int dim() const = 0;
    virtual void apply(const double* x, double* y) const = 0;  // y = A x
};

// Matrix-free y = A(G) x in one fused pass over the edge multiset.
class AdjacencyOperator final : public LinearOperator {
  public:
    explicit AdjacencyOperator(const RegularGraph& g);
    int dim() const override { return n_; }
    void apply(const double* x, double* y) const override;

  private:
    int n_;
    std::vector<int> from_;  // 0-based endpoints, one entry per edge copy
    std::vector<int> to_;
};

struct LanczosOptions {
    double tol = 1e-10;
    long max_matvecs = 0;  // 0: 300 ln(dim) per requested spectrum end
    int max_basis = 96;    // restart when the basis reaches this size
    int keep_per_end = 12; // Ritz vectors carried across a restart, per end
    bool want_largest = true;
    bool want_smallest = true;
    std::uint64_t start_seed = 0x243f6a8885a308d3ull;
};

struct ExtremalEigenResult {
    double largest = 0.0;
    double smallest = 0.0;
    bool largest_converged = false;
    bool smallest_converged = false;
    long matvecs = 0;
};

// Thick-restart Lanczos with full reorthogonalization, restricted to the
// orthogonal complement of `deflate` (each deflation vector must be a unit
// eigenvector of the operator; the complement is then invariant). Resolves
// both ends of the restricted spectrum from one Krylov basis.
ExtremalEigenResult lanczos_extremal(const LinearOperator& op,
                                     std::span<const std::vector<double>> deflate,
                                     const LanczosOptions& options = {});

}  // namespace ramalab

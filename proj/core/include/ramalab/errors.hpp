#pragma once

#include <stdexcept>
#include <string>

namespace ramalab {

// Rejection sampling hit its cap; the (N, d, constraint) combination is too
// constrained to produce graphs at a useful rate.
class SamplingExhaustedError : public std::runtime_error {
  public:
    explicit SamplingExhaustedError(const std::string& what) : std::runtime_error(what) {}
};

// ODE integration blew up (bad boundary data or step size).
class IntegrationFailureError : public std::runtime_error {
  public:
    explicit IntegrationFailureError(const std::string& what) : std::runtime_error(what) {}
};

// Tabulated solution does not cover the requested evaluation.
class GridCoverageError : public std::runtime_error {
  public:
    explicit GridCoverageError(const std::string& what) : std::runtime_error(what) {}
};

// Sample has zero variance (or is otherwise unusable for standardization).
class DegenerateSampleError : public std::invalid_argument {
  public:
    explicit DegenerateSampleError(const std::string& what) : std::invalid_argument(what) {}
};

// Data violates the fitted model's domain (e.g. a sample mean at or above the
// asymptotic limit, which the power-law form cannot represent).
class FitDomainError : public std::invalid_argument {
  public:
    explicit FitDomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Input exceeds a hard enumeration limit.
class SizeLimitError : public std::invalid_argument {
  public:
    explicit SizeLimitError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace ramalab

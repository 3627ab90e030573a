#include "ramalab/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace ramalab {

double StandardNormalReference::cdf(double x) const {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double StandardNormalReference::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("normal quantile: p must be in (0,1)");
    }
    double lo = -10.0, hi = 10.0;
    for (int i = 0; i < 80; ++i) {
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

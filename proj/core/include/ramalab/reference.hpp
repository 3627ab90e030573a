#pragma once

#include <string>

#include "ramalab/tracy_widom.hpp"

namespace ramalab {

// A candidate law in its mean-0 variance-1 form, as used by the
// goodness-of-fit and mass-left-of-mean tests.
class NormalizedReference {
  public:
    virtual ~NormalizedReference() = default;
    virtual const std::string& name() const = 0;
    virtual double cdf(double x) const = 0;
    virtual double quantile(double p) const = 0;
    // Mass of the un-normalized law left of its own mean; invariant under
    // the normalization, so this equals cdf(0).
    virtual double mass_left_of_mean() const = 0;
};

class TWReference final : public NormalizedReference {
  public:
    explicit TWReference(const TWDistribution& tw)
        : tw_(&tw), name_("tw" + std::to_string(tw.beta())) {}

    const std::string& name() const override { return name_; }
    double cdf(double x) const override { return tw_->cdf_normalized(x); }
    double quantile(double p) const override { return tw_->quantile_normalized(p); }
    double mass_left_of_mean() const override { return tw_->mass_left_of_mean(); }

  private:
    const TWDistribution* tw_;
    std::string name_;
};

class StandardNormalReference final : public NormalizedReference {
  public:
    StandardNormalReference() : name_("normal") {}

    const std::string& name() const override { return name_; }
    double cdf(double x) const override;
    double quantile(double p) const override;
    double mass_left_of_mean() const override { return 0.5; }

  private:
    std::string name_;
};

}  // namespace ramalab

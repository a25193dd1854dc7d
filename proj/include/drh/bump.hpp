#pragma once

#include <cmath>

#include "drh/errors.hpp"

namespace drh {

/// C-infinity step: 0 for y <= 0, 1 for y >= 1, h(y)/(h(y)+h(1-y)) with h(y) = exp(-1/y) between.
inline double smooth_step(double y) {
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    const double p = std::exp(-1.0 / y);
    const double q = std::exp(-1.0 / (1.0 - y));
    return p / (p + q);
}

/// Even C-infinity bump: 1 on |x| <= plateau, 0 on |x| >= support.
class BumpFunction {
  public:
    BumpFunction(double plateau, double support) : plateau_(plateau), support_(support) {
        if (!(plateau > 0.0) || !(support > plateau)) throw PreconditionError("bump needs 0 < plateau < support");
    }

    /// eta: plateau 1/2, support 1.
    static BumpFunction eta() { return {0.5, 1.0}; }
    /// chi: plateau 1, support 2.
    static BumpFunction chi() { return {1.0, 2.0}; }

    double operator()(double x) const { return smooth_step((support_ - std::abs(x)) / (support_ - plateau_)); }

    double plateau() const noexcept { return plateau_; }
    double support() const noexcept { return support_; }

  private:
    double plateau_;
    double support_;
};

}  // namespace drh

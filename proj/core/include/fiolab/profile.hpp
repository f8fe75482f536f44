// Smooth radial step profiles sigma: [0,inf) -> [0,1] with sigma = 1 on [0,1]
// and sigma = 0 on [2,inf), the single scalar ingredient behind every dyadic
// and conic cutoff in this library.
#pragma once

#include <memory>
#include <vector>

namespace fiolab {

class BumpProfile {
  public:
    enum class Kind {
        // Frozen default: on [1,2], sigma(t) = (int_u^1 rho) / (int_{-1}^1 rho)
        // with rho(v) = exp(-1/(1-v^2)) and u = 2t - 3.  The cumulative
        // integral is tabulated once (composite Simpson on 2^16 panels) and
        // evaluated with cubic Hermite interpolation using the exact
        // derivative rho; absolute evaluation error stays below 1e-14.
        Mollifier,
        // Alternative admissible profile, used by the norm-equivalence tests:
        // sigma(t) = g(2-t) / (g(2-t) + g(t-1)) with g(u) = exp(-1/u).
        RationalExp,
    };

    static BumpProfile mollifier();
    static BumpProfile rational_exp();

    double operator()(double t) const;  // clamped: exactly 1 for t<=1, 0 for t>=2
    Kind kind() const { return kind_; }

  private:
    explicit BumpProfile(Kind kind);
    Kind kind_;
    std::shared_ptr<const std::vector<double>> table_;  // cumulative, Mollifier only
};

}  // namespace fiolab

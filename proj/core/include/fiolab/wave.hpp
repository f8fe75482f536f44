// Constant-coefficient wave propagation on the periodic grid via the exact
// Fourier formula, plus regularity-ratio diagnostics in B/F quasi-norms.
#pragma once

#include "fiolab/grid.hpp"
#include "fiolab/spaces.hpp"

namespace fiolab {

struct CauchyData {
    GridFunction f0;  // position data
    GridFunction f1;  // velocity data

    CauchyData(GridFunction position, GridFunction velocity);
    const GridSpec& spec() const { return f0.spec; }
};

// Multiplier e^{sign * i t |xi|}.
GridFunction half_wave(const GridFunction& f, double t, int sign);

// u_hat(t) = cos(t|xi|) f0_hat + sin(t|xi|)/|xi| f1_hat, with the zero mode
// f0_hat(0) + t f1_hat(0) (the limit of sin(t|xi|)/|xi|).
GridFunction solve_wave(const CauchyData& data, double t);

// d/dt u, computed spectrally: -|xi| sin(t|xi|) f0_hat + cos(t|xi|) f1_hat.
GridFunction wave_time_derivative(const CauchyData& data, double t);

// L^{-n} sum_k (|xi_k|^2 |u_hat|^2 + |u_t_hat|^2); conserved in t.
double wave_energy(const CauchyData& data, double t);

// || u(t) ||_{X^s_{p,q}} / (|| f0 ||_{X^{s+nu}_{p,q}} + || f1 ||_{X^{s+nu-1}_{p,q}})
// with nu = (n-1)|1/p - 1/2|.  Returns the ratio; the caller decides what
// counts as "bounded".
double besov_estimate_ratio(const CauchyData& data, double t, const SpaceParams& params,
                            const DyadicCutoffFamily& family);

// nu = (n-1)|1/p - 1/2|, with 1/inf = 0.
double wave_data_shift(double p, int n);

// true when p is inside the range where the global estimate is claimed.
bool wave_p_in_claimed_range(double p, int n);

}  // namespace fiolab

// Besov-Lipschitz and Triebel-Lizorkin quasi-norms over the dyadic family,
// Bessel-potential lifts, and local Hardy space atoms.
#pragma once

#include <cstdint>

#include "fiolab/grid.hpp"
#include "fiolab/littlewood.hpp"

namespace fiolab {

enum class SpaceKind { Besov, TriebelLizorkin };

struct SpaceParams {
    SpaceKind kind = SpaceKind::Besov;
    double s = 0.0;
    double p = 2.0;  // in (0, inf]
    double q = 2.0;  // in (0, inf]

    static SpaceParams make(SpaceKind kind, double s, double p, double q);
    bool p_infinite() const;
    bool q_infinite() const;
};

// (sum_{j<=J} 2^{jqs} ||psi_j(D)f||_p^q)^{1/q}; sup over j at q = inf.  The
// sum is truncated at the grid's resolvable level J.
double besov_norm(const GridFunction& f, const SpaceParams& params,
                  const DyadicCutoffFamily& family);

// || (sum_j 2^{jqs} |psi_j(D)f|^q)^{1/q} ||_p; inner sup at q = inf.  At
// p = inf only q = 2 is accepted.
double triebel_norm(const GridFunction& f, const SpaceParams& params,
                    const DyadicCutoffFamily& family);

double space_norm(const GridFunction& f, const SpaceParams& params,
                  const DyadicCutoffFamily& family);

// Fourier multiplier <xi>^{s'} = (1+|xi|^2)^{s'/2}.
GridFunction bessel_lift(const GridFunction& f, double s_prime);

struct Atom {
    Vec center{0.0, 0.0};
    double radius = 1.0;
    double exponent_p = 1.0;  // in (0, 1]
    int moment_order = 0;     // M = floor(n(1/p - 1)_+)
    GridFunction values;
};

// Pseudorandom smooth bump supported in B(x0, r), sup |a| <= |B|^{-1/p}; for
// r <= 1 all discrete moments of order <= M are projected out (two sweeps of
// a windowed polynomial projection).  The ball must sit inside the torus with
// margin r.
Atom make_atom(const GridSpec& spec, Vec x0, double r, double p, std::uint64_t seed);

}  // namespace fiolab

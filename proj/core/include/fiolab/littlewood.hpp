// Dyadic frequency cutoffs psi_0, psi_j, Psi_j and the associated band/ball
// Fourier projections.
#pragma once

#include <string>
#include <vector>

#include "fiolab/grid.hpp"
#include "fiolab/profile.hpp"

namespace fiolab {

// Scalar cutoff values as functions of |xi|; the multiplier tables and the
// operator windows sample exactly these, so both stay consistent.
inline double psi0_radial(const BumpProfile& prof, double r) { return prof(r); }

inline double psi_level_radial(const BumpProfile& prof, int j, double r) {
    if (j == 0) return prof(r);
    return prof(std::ldexp(r, -j)) - prof(std::ldexp(r, -(j - 1)));
}

// Psi_j = psi_{j+1} + psi_j + psi_{j-1}.  The j = 0 neighbour below is
// dropped: re-adding psi_0 there would push Psi_0 to 2 at the origin and
// break Psi_j = 1 on supp psi_j, which the projections rely on.
inline double psi_wide_radial(const BumpProfile& prof, int j, double r) {
    double low = (j == 0) ? 0.0 : psi_level_radial(prof, j - 1, r);
    return psi_level_radial(prof, j + 1, r) + psi_level_radial(prof, j, r) + low;
}

class DyadicCutoffFamily {
  public:
    // Precomputes psi_j and Psi_j on the frequency lattice for j = 0..J.
    DyadicCutoffFamily(const GridSpec& spec, BumpProfile profile);

    const GridSpec& spec() const { return spec_; }
    const BumpProfile& profile() const { return profile_; }
    int max_level() const { return J_; }

    const std::vector<double>& psi(int j) const;       // psi_j on the lattice
    const std::vector<double>& psi_wide(int j) const;  // Psi_j on the lattice

    void export_csv(const std::string& path) const;  // columns |xi|, psi_0..psi_J

  private:
    GridSpec spec_;
    BumpProfile profile_;
    int J_;
    std::vector<std::vector<double>> psi_;
    std::vector<std::vector<double>> wide_;
};

DyadicCutoffFamily build_cutoffs(const GridSpec& spec, BumpProfile profile);

// inverse(psi_j . forward(f)).  0 <= j <= J.
GridFunction band_project(const GridFunction& f, int j, const DyadicCutoffFamily& family);

enum class BallMode {
    Psi0,           // psi_0(xi)
    Psi0Half,       // psi_0(2 xi)
    OneMinusPsi0Half,  // 1 - psi_0(2 xi)
};

GridFunction ball_project(const GridFunction& f, const DyadicCutoffFamily& family,
                          BallMode mode = BallMode::Psi0);

}  // namespace fiolab

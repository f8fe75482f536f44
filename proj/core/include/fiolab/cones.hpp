// Second dyadic decomposition: level-j direction sets on the unit sphere,
// conic cutoffs (simple partition of unity and its quadratic variant),
// localized kernels and their decay-envelope fits.
#pragma once

#include <string>
#include <vector>

#include "fiolab/fio.hpp"
#include "fiolab/grid.hpp"
#include "fiolab/littlewood.hpp"
#include "fiolab/profile.hpp"

namespace fiolab {

enum class ConeNormalization { Simple, Quadratic };

class ConeCover {
  public:
    // n = 2: uniform angular grid with spacing 2*pi/ceil(2*pi*2^{j/2}), i.e.
    // arc separation just below 2^{-j/2}; n = 1 degenerates to {+1, -1}.
    static ConeCover build(int j, int n, BumpProfile profile = BumpProfile::mollifier());

    int level() const { return j_; }
    int dimension() const { return n_; }
    std::size_t count() const { return directions_.size(); }
    const std::vector<Vec>& directions() const { return directions_; }

    // eta_j^nu(xi) = profile(2^{j/2} |xi/|xi| - xi_j^nu|).
    double eta(std::size_t nu, const Vec& xi) const;
    // Simple: eta / sum_nu eta; Quadratic: eta / sqrt(sum_nu eta^2).
    double cutoff(std::size_t nu, const Vec& xi,
                  ConeNormalization norm = ConeNormalization::Simple) const;

    void export_csv(const std::string& path) const;  // {j, nu, d1, d2}

  private:
    ConeCover(int j, int n, BumpProfile profile, std::vector<Vec> directions);
    int j_;
    int n_;
    BumpProfile profile_;
    std::vector<Vec> directions_;
};

ConeCover build_directions(int j, int n, BumpProfile profile = BumpProfile::mollifier());

// K_j^nu(x, y_ref) = L^{-n} sum_k psi_j chi_j^nu a(x,xi_k)
// e^{i(phi(x,xi_k) - y_ref.xi_k)}, sampled over the x-grid.  Direct
// quadrature in general; one inverse transform when the phase is
// x.xi + phi0(xi), the amplitude is x-independent and y_ref is a lattice
// point.
GridFunction cone_kernel(const Amplitude& amplitude, const Phase& phase, int j, std::size_t nu,
                         Vec y_ref, const DyadicCutoffFamily& family, const ConeCover& cover,
                         QuadratureMode mode = QuadratureMode::Auto);

// Adjoint variant: the phase carries the other sign pattern,
// x_ref.xi - phi(y, xi), sampled over the y-grid at fixed x_ref.  Same
// quadrature with the roles of the two spatial arguments swapped.
GridFunction cone_kernel_adjoint(const Amplitude& amplitude, const Phase& phase, int j,
                                 std::size_t nu, Vec x_ref, const DyadicCutoffFamily& family,
                                 const ConeCover& cover);

// Minimal constant C such that |K| <= C 2^{j(m+(n+1)/2)} / W(x) on the fit
// window, where W stacks (1+|2^j u1|^2)^{N_env} (1+|2^{j/2} u'|^2)^{N_env}
// and u = grad_xi Phi(x, y_ref, xi_j^nu), split along/across the cone
// direction.  The window keeps the weighted coordinates below
// `weighted_window`: outside it, the preasymptotic tails of mollifier-type
// cutoffs sit above any fixed-N_env polynomial envelope until far beyond
// desk-scale j, and the torus periodization floors |K|, so the whole-grid
// max would measure those artifacts instead of the kernel shape.
double envelope_fit(const GridFunction& K, int j, std::size_t nu, const Phase& phase, double m,
                    int N_env, Vec y_ref, const ConeCover& cover, double weighted_window = 8.0);

// Finite-difference estimate of sup |xi|^{|alpha|} 2^{-j|alpha|/2}
// |d^alpha chi_j^nu| over shell samples, |alpha| <= 2.
double cutoff_derivative_probe(const ConeCover& cover, std::size_t nu, std::array<int, 2> alpha,
                               ConeNormalization norm = ConeNormalization::Simple);

}  // namespace fiolab

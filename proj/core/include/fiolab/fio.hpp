// Oscillatory-integral operators T f(x) = sum_k w(xi_k) a(x,xi_k)
// e^{i phi(x,xi_k)} F(xi_k) / L^n over the frequency lattice: amplitudes with
// an order, degree-1 homogeneous phases, non-degeneracy probes, frequency
// windows, direct quadrature with a multiplier fast path, and the classical
// 1D operators (Hilbert transform, the e^{i|xi|} multiplier).
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fiolab/grid.hpp"
#include "fiolab/littlewood.hpp"
#include "fiolab/phase_expr.hpp"
#include "fiolab/profile.hpp"

namespace fiolab {

struct Amplitude {
    double order = 0.0;
    bool x_independent = false;
    std::string name;
    std::function<cd(const Vec& x, const Vec& xi)> eval;

    static Amplitude one();
    static Amplitude jap(double m);  // <xi>^m
    // <xi>^m times a smooth spatial window supported in |x| <= radius.
    static Amplitude compact_x(double m, double radius);
    static Amplitude from_expr(const std::string& text, double m);
};

struct Phase {
    std::string name;
    bool linear_in_x = false;  // phi(x,xi) = x.xi + phi(0,xi)
    std::function<double(const Vec& x, const Vec& xi)> eval;  // defined for xi != 0
    // Optional closed forms; finite differences otherwise (relative step
    // 1e-5 |xi| in xi, absolute 1e-5 in x).
    std::function<Vec(const Vec& x, const Vec& xi)> grad_xi;
    std::function<std::array<double, 4>(const Vec& x, const Vec& xi)> mixed_hessian;  // row-major

    static Phase linear();                                // x.xi
    static Phase wave(double t);                          // x.xi + t|xi|
    static Phase anisotropic(double a00, double a11);     // x.(A xi) + |xi|, A diagonal
    static Phase from_expr(const std::string& text);

    Vec grad_xi_at(const Vec& x, const Vec& xi, int n) const;
};

// max over probes and lambda in {1/2, 2} of
// |phi(x, l xi) - l phi(x, xi)| / (l |xi| max(1, |phi(x, xi)|)).
double phase_homogeneity_defect(const Phase& phase, const std::vector<Vec>& x_probes,
                                const std::vector<Vec>& xi_probes, int n);

// Reported sup of |xi|^{|a|-1} |d_xi^a d_x^b phi| over the probe set for
// 2 <= |a|+|b| <= 3 (finite differences).
double phase_phi2_probe(const Phase& phase, const std::vector<Vec>& x_probes,
                        const std::vector<Vec>& xi_probes, int n);

// Reported sup of |d_xi^a a(x, xi)| <xi>^{|a|-m} over probes, |a| <= 2.
double amplitude_seminorm_probe(const Amplitude& amp, const std::vector<Vec>& x_probes,
                                const std::vector<Vec>& xi_probes, int n);

// min over probes of |det d2_{x xi} phi|; by 0-homogeneity of the mixed
// Hessian, unit-sphere frequency probes suffice.
double snd_margin(const Phase& phase, const std::vector<Vec>& x_probes,
                  const std::vector<Vec>& sphere_probes, int n);

enum class FreqWindow { All, Low, High, Band };

struct FioOperator {
    Amplitude amplitude;
    Phase phase;
    FreqWindow window = FreqWindow::All;
    int band_level = -1;  // used when window == Band
    BumpProfile profile = BumpProfile::mollifier();

    // All: 1; Low: psi_0; High: 1 - psi_0; Band: psi_j (1 - psi_0(2 xi)).
    double window_weight(double abs_xi) const;
};

enum class QuadratureMode {
    Direct,  // always the O(N^{2n}) lattice sum
    Auto,    // multiplier fast path when amplitude is x-independent and the
             // phase is x.xi + phi0(xi); direct quadrature otherwise
};

GridFunction apply_fio(const FioOperator& op, const GridFunction& f,
                       QuadratureMode mode = QuadratureMode::Auto);

// inverse(symbol . forward(f)); symbol indexed like a Spectrum.
GridFunction apply_multiplier(const std::vector<cd>& symbol, const GridFunction& f);

// Frequency-lattice symbol table of an x-separable operator (throws if the
// operator has an x-dependent amplitude or phase).
std::vector<cd> multiplier_symbol(const FioOperator& op, const GridSpec& spec);

std::pair<FioOperator, FioOperator> split_low_high(const FioOperator& op);

// Multiplier -i sgn(xi), sgn(0) = 0; the unpaired Nyquist mode is zeroed so
// real input maps to real output.  n = 1 only.
GridFunction hilbert_transform(const GridFunction& f);

// Multiplier e^{i|xi|}.  n = 1 only.
GridFunction sharpness_operator_1d(const GridFunction& f);

struct KernelDecayFit {
    double slope = 0.0;      // least-squares slope of log|K| vs log<y>
    double intercept = 0.0;
    double sup_weighted = 0.0;  // sup over fit window of <y>^{n+1/2} |K|
    std::size_t points = 0;
};

// Samples K(y) = L^{-n} sum_k psi_0 a(x0,xi_k) e^{i phi(x0,xi_k) - i y.xi_k}
// over the y-grid and fits the decay on 4 <= <y> <= L/4.  Requires a
// Low-windowed operator.
KernelDecayFit low_freq_kernel_decay(const FioOperator& op_low, const GridSpec& spec, Vec x0);

}  // namespace fiolab

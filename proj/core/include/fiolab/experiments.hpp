// Experiment drivers: band-scaling slope fits, wave-estimate sweeps, atom
// uniformity, the 1D divergence study, and the CLI entry point.  Every run is
// seeded, cell-order independent, and emits CSV rows tagged with a git-style
// hash of the config block.
#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fiolab/cones.hpp"
#include "fiolab/fio.hpp"
#include "fiolab/grid.hpp"
#include "fiolab/spaces.hpp"
#include "fiolab/wave.hpp"

namespace fiolab {

// m_c(p) = -(n-1)|1/p - 1/2|, 1/inf = 0.
double critical_order(double p, int n);

struct ExperimentConfig {
    std::string experiment = "scaling";
    int n = 2;
    int N = 256;
    double L = 3.141592653589793;  // holds the unit focusing ring, J = 7
    std::string phase = "wave";     // linear | wave | anisotropic | expr:<...>
    double phase_t = 1.0;
    std::string amplitude = "jap";  // one | jap | compact_x | expr:<...>
    double amplitude_radius = 1.0;  // compact_x window radius
    double m = 0.0;
    double p = 2.0;
    double q = 2.0;
    double s = 0.0;
    int j_min = 3;
    int j_max = 7;
    std::string corpus = "random";  // random | focusing | knapp
    int corpus_size = 10;
    std::uint64_t seed = 42;
    std::string out_dir = ".";
    int threads = 0;
    double tol_slope = 0.15;
    bool stability = false;  // wave sweep: rerun with doubled N and doubled L
    std::vector<double> sweep_p{0.8, 1.0, 2.0, 4.0, std::numeric_limits<double>::infinity()};
    std::vector<double> sweep_s{0.0, 1.0};
    std::vector<double> sweep_t{0.5, 1.0};

    static ExperimentConfig load(const std::string& path);  // JSON file
    static ExperimentConfig from_json_text(const std::string& text);
    std::string to_json_text() const;  // canonical form (sorted keys)
    std::string hash() const;          // git blob SHA-1 of to_json_text()

    Phase make_phase() const;
    Amplitude make_amplitude() const;
    GridSpec make_grid() const;
};

// --------------------------------------------------------------------------
// Corpora (all continuum-defined or lattice-masked, reproducible by seed).
// --------------------------------------------------------------------------

// Random coefficients masked by psi_j: spectrum supported on shell j.
GridFunction shell_random(const DyadicCutoffFamily& family, int j, std::uint64_t seed);
// psi_j(xi) e^{-i t0 |xi|} e^{-i xc.xi}: phase-conjugate data focusing at xc.
GridFunction shell_focusing(const DyadicCutoffFamily& family, int j, double t0, Vec xc);
// psi_j(xi) chi_j^nu(xi) e^{-i xc.xi}: one-cone slab.
GridFunction shell_knapp(const DyadicCutoffFamily& family, const ConeCover& cover, int j,
                         std::size_t nu, Vec xc);
// Superposition of Gaussian wave packets with centers in shells
// [j_lo, j_hi]; defined in continuum frequency space so that values are
// comparable across N- and L-refined grids.  Unit L2 normalization.
GridFunction random_band_function(const GridSpec& spec, int j_lo, int j_hi, std::uint64_t seed);

// --------------------------------------------------------------------------
// Scaling experiment.
// --------------------------------------------------------------------------

struct ScalingReport {
    std::vector<int> levels;
    std::vector<double> ratios;  // per-j corpus max of ||T_j f||_p / ||Psi_j(D) f||_p
    double slope = 0.0;
    double intercept = 0.0;
    double target = 0.0;  // m - m_c(p)
    bool upper_bound_ok = false;
    bool attainment_observed = false;
    std::string config_hash;
};

ScalingReport scaling_experiment(const ExperimentConfig& cfg);
void write_scaling_report(const ScalingReport& report, const ExperimentConfig& cfg);

// --------------------------------------------------------------------------
// Wave sweep.
// --------------------------------------------------------------------------

struct WaveSweepCell {
    SpaceKind kind;
    double s, p, q, t;
    int corpus_id;
    double ratio;
};

struct WaveSweepReport {
    std::vector<WaveSweepCell> cells;
    std::map<std::string, double> cell_max;  // key "X|s|p|q|t"
    std::string config_hash;
};

WaveSweepReport wave_sweep(const ExperimentConfig& cfg);
// Base plus doubled-N plus doubled-(L,N) runs; returns worst relative change
// of the per-cell max under each doubling.
struct WaveStability {
    WaveSweepReport base, n_doubled, l_doubled;
    double worst_change_n = 0.0;
    double worst_change_l = 0.0;
};
WaveStability wave_sweep_stability(const ExperimentConfig& cfg);
void write_wave_report(const WaveSweepReport& report, const ExperimentConfig& cfg,
                       const std::string& stem);

// --------------------------------------------------------------------------
// Atom uniformity.
// --------------------------------------------------------------------------

struct AtomUniformityReport {
    double p = 1.0;
    double m = 0.0;
    double snd = 0.0;
    std::vector<double> radii;
    std::vector<double> norms;  // ||T_high a||_p per atom
    double max_norm = 0.0;
    double median_norm = 0.0;
    double max_over_median = 0.0;
    std::string config_hash;
};

AtomUniformityReport atom_uniformity(const ExperimentConfig& cfg);
void write_atom_report(const AtomUniformityReport& report, const ExperimentConfig& cfg);

// --------------------------------------------------------------------------
// 1D sharpness experiment.
// --------------------------------------------------------------------------

struct SharpnessReport {
    double tail_constant = 0.0;        // mean of x^2 Im Tf over [20, 60]
    double tail_target = -0.6366197723675814;  // -2/pi
    std::vector<double> boxes;         // L values
    struct GrowthRow {
        double p;
        std::vector<double> norms;              // ||Tf||_{B^0_{p,p}} per box
        std::vector<double> measured_factors;   // norms[i+1]/norms[i]
        std::vector<double> predicted_factors;  // tail-integral oracle
    };
    std::vector<GrowthRow> growth;
    std::string config_hash;
};

SharpnessReport sharpness_experiment_1d(const ExperimentConfig& cfg);
void write_sharpness_report(const SharpnessReport& report, const ExperimentConfig& cfg);

// --------------------------------------------------------------------------
// CLI.
// --------------------------------------------------------------------------

// Subcommands: norm, decompose, fio-apply, cones, scaling, wave-sweep, atoms,
// sharpness-1d, selftest.  Returns 0 on success, 1 on usage/config errors,
// 2 on assertion failure.
int cli_run(const std::vector<std::string>& args);

}  // namespace fiolab

#include "fiolab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace fiolab {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
using nlohmann::json;

double norm2(const Vec& v) { return std::hypot(v[0], v[1]); }

std::string window_key(SpaceKind kind, double s, double p, double q, double t) {
    std::ostringstream os;
    os << (kind == SpaceKind::Besov ? "B" : "F") << '|' << format_double(s) << '|'
       << format_double(p) << '|' << format_double(q) << '|' << format_double(t);
    return os.str();
}

void least_squares(const std::vector<double>& xs, const std::vector<double>& ys, double& slope,
                   double& intercept) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = xs.size();
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = double(n) * sxx - sx * sx;
    slope = (double(n) * sxy - sx * sy) / denom;
    intercept = (sy - slope * sx) / double(n);
}

}  // namespace

double critical_order(double p, int n) {
    if (!(p > 0.0)) throw ParameterError("critical_order: p must be positive");
    double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    return -(n - 1) * std::abs(inv_p - 0.5);
}

// ---------------------------------------------------------------------------
// Config.
// ---------------------------------------------------------------------------

namespace {

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["experiment"] = c.experiment;
    j["n"] = c.n;
    j["N"] = c.N;
    j["L"] = c.L;
    j["phase"] = c.phase;
    j["phase_t"] = c.phase_t;
    j["amplitude"] = c.amplitude;
    j["amplitude_radius"] = c.amplitude_radius;
    j["m"] = c.m;
    j["p"] = std::isinf(c.p) ? json("inf") : json(c.p);
    j["q"] = std::isinf(c.q) ? json("inf") : json(c.q);
    j["s"] = c.s;
    j["j_min"] = c.j_min;
    j["j_max"] = c.j_max;
    j["corpus"] = c.corpus;
    j["corpus_size"] = c.corpus_size;
    j["seed"] = c.seed;
    j["tol_slope"] = c.tol_slope;
    j["stability"] = c.stability;
    auto enc = [](const std::vector<double>& v) {
        json a = json::array();
        for (double x : v) a.push_back(std::isinf(x) ? json("inf") : json(x));
        return a;
    };
    j["sweep_p"] = enc(c.sweep_p);
    j["sweep_s"] = enc(c.sweep_s);
    j["sweep_t"] = enc(c.sweep_t);
    return j;
}

double json_extended(const json& v) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        throw ParameterError("config: expected number or \"inf\"");
    }
    return v.get<double>();
}

void config_from_json(ExperimentConfig& c, const json& j) {
    if (j.contains("experiment")) c.experiment = j["experiment"].get<std::string>();
    if (j.contains("n")) c.n = j["n"].get<int>();
    if (j.contains("N")) c.N = j["N"].get<int>();
    if (j.contains("L")) c.L = j["L"].get<double>();
    if (j.contains("phase")) c.phase = j["phase"].get<std::string>();
    if (j.contains("phase_t")) c.phase_t = j["phase_t"].get<double>();
    if (j.contains("amplitude")) c.amplitude = j["amplitude"].get<std::string>();
    if (j.contains("amplitude_radius")) c.amplitude_radius = j["amplitude_radius"].get<double>();
    if (j.contains("m")) c.m = j["m"].get<double>();
    if (j.contains("p")) c.p = json_extended(j["p"]);
    if (j.contains("q")) c.q = json_extended(j["q"]);
    if (j.contains("s")) c.s = j["s"].get<double>();
    if (j.contains("j_min")) c.j_min = j["j_min"].get<int>();
    if (j.contains("j_max")) c.j_max = j["j_max"].get<int>();
    if (j.contains("corpus")) c.corpus = j["corpus"].get<std::string>();
    if (j.contains("corpus_size")) c.corpus_size = j["corpus_size"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tol_slope")) c.tol_slope = j["tol_slope"].get<double>();
    if (j.contains("stability")) c.stability = j["stability"].get<bool>();
    auto dec = [](const json& a) {
        std::vector<double> out;
        for (const auto& v : a) out.push_back(json_extended(v));
        return out;
    };
    if (j.contains("sweep_p")) c.sweep_p = dec(j["sweep_p"]);
    if (j.contains("sweep_s")) c.sweep_s = dec(j["sweep_s"]);
    if (j.contains("sweep_t")) c.sweep_t = dec(j["sweep_t"]);
    if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
    if (j.contains("threads")) c.threads = j["threads"].get<int>();
}

}  // namespace

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw StructuralError("config file not found: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    ExperimentConfig c;
    config_from_json(c, json::parse(text));
    return c;
}

std::string ExperimentConfig::to_json_text() const { return config_to_json(*this).dump(); }

std::string ExperimentConfig::hash() const { return git_blob_sha1(to_json_text()); }

Phase ExperimentConfig::make_phase() const {
    if (phase == "linear") return Phase::linear();
    if (phase == "wave") return Phase::wave(phase_t);
    if (phase == "anisotropic") return Phase::anisotropic(2.0, 0.5);
    if (phase.rfind("expr:", 0) == 0) return Phase::from_expr(phase.substr(5));
    return Phase::from_expr(phase);  // bare expression text
}

Amplitude ExperimentConfig::make_amplitude() const {
    if (amplitude == "one") return Amplitude::one();
    if (amplitude == "jap" || amplitude == "jap_m") return Amplitude::jap(m);
    if (amplitude == "compact_x") return Amplitude::compact_x(m, amplitude_radius);
    if (amplitude.rfind("expr:", 0) == 0) return Amplitude::from_expr(amplitude.substr(5), m);
    return Amplitude::from_expr(amplitude, m);
}

GridSpec ExperimentConfig::make_grid() const { return GridSpec::make(n, L, N); }

// ---------------------------------------------------------------------------
// Corpora.
// ---------------------------------------------------------------------------

GridFunction shell_random(const DyadicCutoffFamily& family, int j, std::uint64_t seed) {
    const GridSpec& spec = family.spec();
    const std::vector<double>& mask = family.psi(j);
    Spectrum F(spec);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    // Fill in lattice order so the draw is independent of thread count.
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (mask[i] == 0.0) continue;
        F.coefficients[i] = mask[i] * cd(gauss(rng), gauss(rng));
    }
    return inverse_transform(F);
}

GridFunction shell_focusing(const DyadicCutoffFamily& family, int j, double t0, Vec xc) {
    const GridSpec& spec = family.spec();
    const std::vector<double>& mask = family.psi(j);
    Spectrum F(spec);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (mask[i] == 0.0) continue;
        Vec xi = spec.frequency(i);
        F.coefficients[i] =
            mask[i] * std::polar(1.0, -t0 * norm2(xi) - (xc[0] * xi[0] + xc[1] * xi[1]));
    }
    return inverse_transform(F);
}

GridFunction shell_knapp(const DyadicCutoffFamily& family, const ConeCover& cover, int j,
                         std::size_t nu, Vec xc) {
    const GridSpec& spec = family.spec();
    const std::vector<double>& mask = family.psi(j);
    Spectrum F(spec);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (mask[i] == 0.0) continue;
        Vec xi = spec.frequency(i);
        double chi = cover.cutoff(nu, xi);
        if (chi == 0.0) continue;
        F.coefficients[i] = mask[i] * chi * std::polar(1.0, -(xc[0] * xi[0] + xc[1] * xi[1]));
    }
    return inverse_transform(F);
}

GridFunction random_band_function(const GridSpec& spec, int j_lo, int j_hi, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int packets = 8;
    struct Packet {
        Vec center;
        double width;
        cd coeff;
    };
    std::vector<Packet> ps(packets);
    for (auto& pk : ps) {
        double rho = std::exp2(j_lo - 0.5 + uni(rng) * (j_hi - j_lo + 1.0));
        double theta = spec.n == 2 ? 2.0 * kPi * uni(rng) : (uni(rng) < 0.5 ? 0.0 : kPi);
        pk.center = Vec{rho * std::cos(theta), spec.n == 2 ? rho * std::sin(theta) : 0.0};
        pk.width = 0.15 * rho;
        pk.coeff = std::polar(0.25 + uni(rng), 2.0 * kPi * uni(rng));
    }
    Spectrum F(spec);
    parallel_for(spec.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            Vec xi = spec.frequency(i);
            cd acc(0.0, 0.0);
            for (const auto& pk : ps) {
                double dx = xi[0] - pk.center[0];
                double dy = xi[1] - pk.center[1];
                double d2 = dx * dx + dy * dy;
                double w2 = 2.0 * pk.width * pk.width;
                if (d2 < 40.0 * w2) acc += pk.coeff * std::exp(-d2 / w2);
            }
            F.coefficients[i] = acc;
        }
    });
    GridFunction f = inverse_transform(F);
    double l2 = lp_quasinorm(f, 2.0);
    if (l2 == 0.0) throw EvaluationError("random_band_function: degenerate draw");
    return scale(f, 1.0 / l2);
}

// ---------------------------------------------------------------------------
// Scaling experiment.
// ---------------------------------------------------------------------------

ScalingReport scaling_experiment(const ExperimentConfig& cfg) {
    if (cfg.threads) set_thread_count(cfg.threads);
    GridSpec spec = cfg.make_grid();
    DyadicCutoffFamily family(spec, BumpProfile::mollifier());
    if (cfg.j_max > family.max_level())
        throw ParameterError("scaling_experiment: j_max exceeds resolvable level J = " +
                             std::to_string(family.max_level()));
    if (cfg.j_min < 1 || cfg.j_min > cfg.j_max)
        throw ParameterError("scaling_experiment: bad level range");
    if (cfg.corpus_size < 1) throw ParameterError("scaling_experiment: empty corpus");

    Phase phase = cfg.make_phase();
    Amplitude amp = cfg.make_amplitude();

    ScalingReport report;
    report.config_hash = cfg.hash();
    report.target = cfg.m - critical_order(cfg.p, cfg.n);

    for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
        FioOperator op{amp, phase, FreqWindow::Band, j, family.profile()};
        std::optional<ConeCover> cover;
        if (cfg.corpus == "knapp") cover.emplace(ConeCover::build(j, cfg.n, family.profile()));

        double worst = 0.0;
        for (int member = 0; member < cfg.corpus_size; ++member) {
            std::uint64_t ms = derive_seed(cfg.seed, std::uint64_t(j) * 100003 + member);
            GridFunction f(spec);
            if (cfg.corpus == "random") {
                f = shell_random(family, j, ms);
            } else if (cfg.corpus == "focusing") {
                std::mt19937_64 rng(ms);
                std::uniform_real_distribution<double> uni(-0.25, 0.25);
                Vec xc{uni(rng) * spec.L, cfg.n == 2 ? uni(rng) * spec.L : 0.0};
                f = shell_focusing(family, j, cfg.phase_t, xc);
            } else if (cfg.corpus == "knapp") {
                std::mt19937_64 rng(ms);
                std::uniform_real_distribution<double> uni(-0.25, 0.25);
                std::size_t nu = rng() % cover->count();
                Vec xc{uni(rng) * spec.L, cfg.n == 2 ? uni(rng) * spec.L : 0.0};
                f = shell_knapp(family, *cover, j, nu, xc);
            } else {
                throw ParameterError("scaling_experiment: unknown corpus '" + cfg.corpus + "'");
            }
            GridFunction Tf = apply_fio(op, f, QuadratureMode::Auto);
            GridFunction Pf = apply_multiplier(
                [&] {
                    std::vector<cd> sym(spec.size());
                    const std::vector<double>& wide = family.psi_wide(j);
                    for (std::size_t i = 0; i < sym.size(); ++i) sym[i] = wide[i];
                    return sym;
                }(),
                f);
            double denom = lp_quasinorm(Pf, cfg.p);
            if (denom == 0.0) continue;
            worst = std::max(worst, lp_quasinorm(Tf, cfg.p) / denom);
        }
        if (worst <= 0.0)
            throw EvaluationError("scaling_experiment: vanishing denominator at level " +
                                  std::to_string(j));
        report.levels.push_back(j);
        report.ratios.push_back(worst);
    }

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < report.levels.size(); ++i) {
        xs.push_back(double(report.levels[i]));
        ys.push_back(std::log2(report.ratios[i]));
    }
    least_squares(xs, ys, report.slope, report.intercept);
    report.upper_bound_ok = report.slope <= report.target + cfg.tol_slope;
    report.attainment_observed = report.slope >= report.target - cfg.tol_slope;
    return report;
}

void write_scaling_report(const ScalingReport& report, const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    std::string stem = (fs::path(cfg.out_dir) / "scaling").string();

    CsvWriter csv(stem + "_ratios.csv");
    csv.header({"j", "ratio", "log2_ratio", "config_hash"});
    for (std::size_t i = 0; i < report.levels.size(); ++i)
        csv.row({std::to_string(report.levels[i]), format_double(report.ratios[i]),
                 format_double(std::log2(report.ratios[i])), report.config_hash});

    json summary;
    summary["config_hash"] = report.config_hash;
    summary["slope"] = report.slope;
    summary["intercept"] = report.intercept;
    summary["target"] = report.target;
    summary["verdicts"] = {{"upper_bound_ok", report.upper_bound_ok},
                           {"attainment_observed", report.attainment_observed}};
    json maxima = json::object();
    for (std::size_t i = 0; i < report.levels.size(); ++i)
        maxima[std::to_string(report.levels[i])] = report.ratios[i];
    summary["maxima"] = maxima;
    std::ofstream(stem + "_summary.json") << summary.dump(2) << '\n';

    std::ofstream plot(stem + ".gp");
    plot << "set xlabel 'j'\n"
         << "set ylabel 'log2 R_j'\n"
         << "f(x) = " << format_double(report.slope) << "*x + "
         << format_double(report.intercept) << "\n"
         << "plot 'scaling_ratios.csv' every ::1 using 1:3 with points title 'measured', "
            "f(x) with lines title 'fit'\n";
}

// ---------------------------------------------------------------------------
// Wave sweep.
// ---------------------------------------------------------------------------

namespace {

struct SweepCellSpec {
    SpaceKind kind;
    double s, p, q;
};

std::vector<SweepCellSpec> sweep_cells(const ExperimentConfig& cfg) {
    std::vector<SweepCellSpec> cells;
    for (SpaceKind kind : {SpaceKind::Besov, SpaceKind::TriebelLizorkin}) {
        for (double p : cfg.sweep_p) {
            std::vector<double> qs{p, 2.0};
            if (qs[0] == qs[1]) qs.pop_back();
            for (double q : qs) {
                if (kind == SpaceKind::TriebelLizorkin && std::isinf(p) && q != 2.0)
                    continue;  // inadmissible
                for (double s : cfg.sweep_s) cells.push_back({kind, s, p, q});
            }
        }
    }
    return cells;
}

// Quasi-norm from precomputed band projections; avoids redoing the J+1
// transforms for every sweep cell.
double norm_from_bands(const std::vector<std::vector<cd>>& bands, const GridSpec& spec,
                       const SpaceParams& params) {
    const int J = int(bands.size()) - 1;
    if (params.kind == SpaceKind::Besov) {
        double acc = 0.0, best = 0.0;
        for (int j = 0; j <= J; ++j) {
            GridFunction g(spec);
            g.values = bands[j];
            double term = std::exp2(j * params.s) * lp_quasinorm(g, params.p);
            if (params.q_infinite())
                best = std::max(best, term);
            else
                acc += std::pow(term, params.q);
        }
        return params.q_infinite() ? best : std::pow(acc, 1.0 / params.q);
    }
    GridFunction stacked(spec);
    parallel_for(spec.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            if (params.q_infinite()) {
                double best = 0.0;
                for (int j = 0; j <= J; ++j)
                    best = std::max(best, std::exp2(j * params.s) * std::abs(bands[j][i]));
                stacked.values[i] = best;
            } else {
                double acc = 0.0;
                for (int j = 0; j <= J; ++j)
                    acc += std::pow(std::exp2(j * params.s) * std::abs(bands[j][i]), params.q);
                stacked.values[i] = std::pow(acc, 1.0 / params.q);
            }
        }
    });
    return lp_quasinorm(stacked, params.p);
}

WaveSweepReport wave_sweep_on_grid(const ExperimentConfig& cfg, const GridSpec& spec,
                                   int shell_lo, int shell_hi) {
    DyadicCutoffFamily family(spec, BumpProfile::mollifier());
    WaveSweepReport report;
    report.config_hash = cfg.hash();
    const int J = family.max_level();
    const std::vector<SweepCellSpec> cells = sweep_cells(cfg);

    // Corpus: unit-L2 random band packets, last quarter phase-conjugate
    // (focusing) position data with zero velocity.
    std::vector<CauchyData> corpus;
    const int focus_from = cfg.corpus_size - cfg.corpus_size / 4;
    for (int member = 0; member < cfg.corpus_size; ++member) {
        if (member < focus_from) {
            GridFunction f0 =
                random_band_function(spec, shell_lo, shell_hi, derive_seed(cfg.seed, 2 * member));
            GridFunction f1 = random_band_function(spec, shell_lo, shell_hi,
                                                   derive_seed(cfg.seed, 2 * member + 1));
            corpus.emplace_back(std::move(f0), std::move(f1));
        } else {
            int j = std::min(shell_hi, shell_lo + (member - focus_from) % (shell_hi - shell_lo + 1));
            GridFunction f0 = shell_focusing(family, j, 1.0, Vec{0.0, 0.0});
            corpus.emplace_back(std::move(f0), GridFunction(spec));
        }
    }

    // ratios indexed [cell][t][member], filled member-major so the band
    // decompositions are done once per member.
    std::vector<std::vector<std::vector<double>>> ratios(
        cells.size(), std::vector<std::vector<double>>(
                          cfg.sweep_t.size(), std::vector<double>(cfg.corpus_size, 0.0)));

    auto decompose = [&](const GridFunction& f) {
        std::vector<std::vector<cd>> bands(J + 1);
        for (int j = 0; j <= J; ++j) bands[j] = band_project(f, j, family).values;
        return bands;
    };

    for (int member = 0; member < cfg.corpus_size; ++member) {
        auto bands_f0 = decompose(corpus[member].f0);
        auto bands_f1 = decompose(corpus[member].f1);
        std::vector<double> dens(cells.size());
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            const SweepCellSpec& cell = cells[ci];
            double nu = wave_data_shift(cell.p, spec.n);
            SpaceParams d0 = SpaceParams::make(cell.kind, cell.s + nu, cell.p, cell.q);
            SpaceParams d1 = SpaceParams::make(cell.kind, cell.s + nu - 1.0, cell.p, cell.q);
            dens[ci] =
                norm_from_bands(bands_f0, spec, d0) + norm_from_bands(bands_f1, spec, d1);
        }
        for (std::size_t ti = 0; ti < cfg.sweep_t.size(); ++ti) {
            auto bands_u = decompose(solve_wave(corpus[member], cfg.sweep_t[ti]));
            for (std::size_t ci = 0; ci < cells.size(); ++ci) {
                const SweepCellSpec& cell = cells[ci];
                SpaceParams top = SpaceParams::make(cell.kind, cell.s, cell.p, cell.q);
                ratios[ci][ti][member] = norm_from_bands(bands_u, spec, top) / dens[ci];
            }
        }
    }

    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const SweepCellSpec& cell = cells[ci];
        for (std::size_t ti = 0; ti < cfg.sweep_t.size(); ++ti) {
            double cell_best = 0.0;
            for (int member = 0; member < cfg.corpus_size; ++member) {
                double ratio = ratios[ci][ti][member];
                report.cells.push_back(
                    {cell.kind, cell.s, cell.p, cell.q, cfg.sweep_t[ti], member, ratio});
                cell_best = std::max(cell_best, ratio);
            }
            report.cell_max[window_key(cell.kind, cell.s, cell.p, cell.q, cfg.sweep_t[ti])] =
                cell_best;
        }
    }
    return report;
}

}  // namespace

WaveSweepReport wave_sweep(const ExperimentConfig& cfg) {
    if (cfg.threads) set_thread_count(cfg.threads);
    GridSpec spec = cfg.make_grid();
    int J = spec.max_level();
    return wave_sweep_on_grid(cfg, spec, 2, std::max(2, J - 1));
}

WaveStability wave_sweep_stability(const ExperimentConfig& cfg) {
    if (cfg.threads) set_thread_count(cfg.threads);
    GridSpec base = cfg.make_grid();
    int J = base.max_level();
    int lo = 2, hi = std::max(2, J - 1);

    WaveStability out;
    out.base = wave_sweep_on_grid(cfg, base, lo, hi);
    out.n_doubled = wave_sweep_on_grid(cfg, GridSpec::make(cfg.n, cfg.L, cfg.N * 2), lo, hi);
    // Doubling the box at fixed h: periodization probe with identical lattice
    // refinement of the corpus profiles.
    out.l_doubled = wave_sweep_on_grid(cfg, GridSpec::make(cfg.n, cfg.L * 2, cfg.N * 2), lo, hi);

    auto worst_change = [&](const WaveSweepReport& other) {
        double worst = 0.0;
        for (const auto& [key, v] : out.base.cell_max) {
            auto it = other.cell_max.find(key);
            if (it == other.cell_max.end()) continue;
            worst = std::max(worst, std::abs(it->second - v) / std::max(v, 1e-300));
        }
        return worst;
    };
    out.worst_change_n = worst_change(out.n_doubled);
    out.worst_change_l = worst_change(out.l_doubled);
    return out;
}

void write_wave_report(const WaveSweepReport& report, const ExperimentConfig& cfg,
                       const std::string& stem_name) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    std::string stem = (fs::path(cfg.out_dir) / stem_name).string();

    CsvWriter csv(stem + ".csv");
    csv.header({"X", "s", "p", "q", "t", "corpus_id", "ratio", "config_hash"});
    for (const auto& c : report.cells)
        csv.row({c.kind == SpaceKind::Besov ? "B" : "F", format_double(c.s), format_double(c.p),
                 format_double(c.q), format_double(c.t), std::to_string(c.corpus_id),
                 format_double(c.ratio), report.config_hash});

    bool all_finite = true;
    for (const auto& c : report.cells) all_finite = all_finite && std::isfinite(c.ratio);
    json summary;
    summary["config_hash"] = report.config_hash;
    summary["verdicts"] = {{"all_cells_finite", all_finite}};
    json maxima = json::object();
    for (const auto& [key, v] : report.cell_max) maxima[key] = v;
    summary["maxima"] = maxima;
    std::ofstream(stem + "_summary.json") << summary.dump(2) << '\n';

    std::ofstream plot(stem + ".gp");
    plot << "set xlabel 'cell'\nset ylabel 'ratio'\n"
         << "plot '" << stem_name << ".csv' every ::1 using 7 with points title 'ratios'\n";
}

// ---------------------------------------------------------------------------
// Atom uniformity.
// ---------------------------------------------------------------------------

AtomUniformityReport atom_uniformity(const ExperimentConfig& cfg) {
    if (cfg.threads) set_thread_count(cfg.threads);
    if (cfg.n != 2) throw ParameterError("atom_uniformity: defined for n = 2");
    GridSpec spec = cfg.make_grid();
    DyadicCutoffFamily family(spec, BumpProfile::mollifier());
    Phase phase = cfg.make_phase();

    AtomUniformityReport report;
    report.config_hash = cfg.hash();
    report.p = cfg.p;
    report.m = critical_order(cfg.p, cfg.n);

    std::vector<Vec> x_probes{{0.0, 0.0}, {0.3, -0.2}, {-1.0, 0.7}};
    std::vector<Vec> sphere;
    for (int a = 0; a < 8; ++a)
        sphere.push_back(Vec{std::cos(kPi * a / 4.0), std::sin(kPi * a / 4.0)});
    report.snd = snd_margin(phase, x_probes, sphere, cfg.n);
    if (!(report.snd > 0.0))
        throw ParameterError("atom_uniformity: phase fails the non-degeneracy probe");

    FioOperator op{Amplitude::jap(report.m), phase, FreqWindow::High, -1, family.profile()};
    std::vector<cd> symbol = multiplier_symbol(op, spec);

    const int count = std::max(50, cfg.corpus_size);
    for (int i = 0; i < count; ++i) {
        std::mt19937_64 rng(derive_seed(cfg.seed, 7000 + i));
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        double r = std::exp2(-4.0 + 5.0 * uni(rng));  // log-uniform in [2^-4, 2]
        double room = spec.L / 2.0 - 2.0 * r;
        if (room <= 0.0) throw ParameterError("atom_uniformity: box too small for radius");
        Vec x0{(2.0 * uni(rng) - 1.0) * room, (2.0 * uni(rng) - 1.0) * room};
        Atom atom = make_atom(spec, x0, r, cfg.p, derive_seed(cfg.seed, 9000 + i));
        GridFunction Ta = apply_multiplier(symbol, atom.values);
        report.radii.push_back(r);
        report.norms.push_back(lp_quasinorm(Ta, cfg.p));
    }

    std::vector<double> sorted = report.norms;
    std::sort(sorted.begin(), sorted.end());
    report.max_norm = sorted.back();
    report.median_norm = sorted[sorted.size() / 2];
    report.max_over_median = report.max_norm / report.median_norm;
    return report;
}

void write_atom_report(const AtomUniformityReport& report, const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    std::string stem = (fs::path(cfg.out_dir) / "atoms").string();
    CsvWriter csv(stem + ".csv");
    csv.header({"p", "atom_id", "radius", "norm", "config_hash"});
    for (std::size_t i = 0; i < report.norms.size(); ++i)
        csv.row({format_double(report.p), std::to_string(i), format_double(report.radii[i]),
                 format_double(report.norms[i]), report.config_hash});
    json summary;
    summary["config_hash"] = report.config_hash;
    summary["p"] = report.p;
    summary["m"] = report.m;
    summary["snd_margin"] = report.snd;
    summary["maxima"] = {{"max", report.max_norm},
                         {"median", report.median_norm},
                         {"max_over_median", report.max_over_median}};
    summary["verdicts"] = {{"uniform", report.max_over_median <= 5.0}};
    std::ofstream(stem + "_summary.json") << summary.dump(2) << '\n';

    std::ofstream plot(stem + ".gp");
    plot << "set logscale x\nset xlabel 'radius'\nset ylabel '||T a||_p'\n"
         << "plot 'atoms.csv' every ::1 using 3:4 with points title 'atom norms'\n";
}

// ---------------------------------------------------------------------------
// 1D sharpness experiment.
// ---------------------------------------------------------------------------

namespace {

// Indicator of [-1, 1] sampled with midpoint convention at the jumps.
GridFunction sampled_indicator(const GridSpec& spec) {
    GridFunction f(spec);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        double x = spec.point(i)[0];
        double ax = std::abs(x);
        if (ax < 1.0)
            f.values[i] = 1.0;
        else if (ax == 1.0)
            f.values[i] = 0.5;
    }
    return f;
}

double tail_integral(double p, double L) {
    // int_1^{L/2} x^{-2p} dx, closed form.
    double upper = L / 2.0;
    if (p == 0.5) return std::log(upper);
    double e = 1.0 - 2.0 * p;
    return (std::pow(upper, e) - 1.0) / e;
}

}  // namespace

SharpnessReport sharpness_experiment_1d(const ExperimentConfig& cfg) {
    if (cfg.threads) set_thread_count(cfg.threads);
    if (cfg.n != 1) throw ParameterError("sharpness_experiment_1d: n must be 1");

    SharpnessReport report;
    report.config_hash = cfg.hash();

    // (a) Tail constant at L = 512, h = 1/64.
    {
        GridSpec spec = GridSpec::make(1, 512.0, 1 << 15);
        GridFunction Tf = sharpness_operator_1d(sampled_indicator(spec));
        double acc = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < spec.size(); ++i) {
            double x = spec.point(i)[0];
            if (x < 20.0 || x > 60.0) continue;
            acc += x * x * Tf.values[i].imag();
            ++count;
        }
        report.tail_constant = acc / double(count);
    }

    // (b) Quasi-norm growth across box doublings at fixed h = 1/64.
    report.boxes = {256.0, 512.0, 1024.0};
    const double c_tail = 2.0 / kPi;
    std::vector<double> ps{0.4, 0.45, 0.6, 0.75};
    std::vector<std::vector<double>> norms(ps.size());
    for (double L : report.boxes) {
        GridSpec spec = GridSpec::make(1, L, int(L) * 64);
        DyadicCutoffFamily family(spec, BumpProfile::mollifier());
        GridFunction Tf = sharpness_operator_1d(sampled_indicator(spec));
        for (std::size_t pi = 0; pi < ps.size(); ++pi) {
            SpaceParams params = SpaceParams::make(SpaceKind::Besov, 0.0, ps[pi], ps[pi]);
            norms[pi].push_back(besov_norm(Tf, params, family));
        }
    }
    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
        SharpnessReport::GrowthRow row;
        row.p = ps[pi];
        row.norms = norms[pi];
        // Oracle: growth predicted by the two-sided tail integral of
        // (c/x^2)^p, anchored at the smallest box.
        double base_p = std::pow(row.norms[0], ps[pi]);
        double tail0 = 2.0 * std::pow(c_tail, ps[pi]) * tail_integral(ps[pi], report.boxes[0]);
        for (std::size_t b = 0; b + 1 < report.boxes.size(); ++b) {
            row.measured_factors.push_back(row.norms[b + 1] / row.norms[b]);
            double pred_lo =
                base_p + 2.0 * std::pow(c_tail, ps[pi]) * tail_integral(ps[pi], report.boxes[b]) -
                tail0;
            double pred_hi =
                base_p +
                2.0 * std::pow(c_tail, ps[pi]) * tail_integral(ps[pi], report.boxes[b + 1]) -
                tail0;
            row.predicted_factors.push_back(std::pow(pred_hi / pred_lo, 1.0 / ps[pi]));
        }
        report.growth.push_back(std::move(row));
    }
    return report;
}

void write_sharpness_report(const SharpnessReport& report, const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    std::string stem = (fs::path(cfg.out_dir) / "sharpness1d").string();
    CsvWriter csv(stem + ".csv");
    csv.header({"p", "L", "norm", "measured_factor", "predicted_factor", "config_hash"});
    for (const auto& row : report.growth) {
        for (std::size_t b = 0; b < report.boxes.size(); ++b) {
            std::string mf = b > 0 ? format_double(row.measured_factors[b - 1]) : "";
            std::string pf = b > 0 ? format_double(row.predicted_factors[b - 1]) : "";
            csv.row({format_double(row.p), format_double(report.boxes[b]),
                     format_double(row.norms[b]), mf, pf, report.config_hash});
        }
    }
    json summary;
    summary["config_hash"] = report.config_hash;
    summary["tail_constant"] = report.tail_constant;
    summary["tail_target"] = report.tail_target;
    summary["verdicts"] = {
        {"tail_within_2pct",
         std::abs(report.tail_constant - report.tail_target) <= 0.02 * std::abs(report.tail_target)}};
    std::ofstream(stem + "_summary.json") << summary.dump(2) << '\n';

    std::ofstream plot(stem + ".gp");
    plot << "set xlabel 'L'\nset ylabel 'B^0_{p,p} quasi-norm'\nset logscale xy\n"
         << "plot 'sharpness1d.csv' every ::1 using 2:3 with points title 'norms'\n";
}

}  // namespace fiolab

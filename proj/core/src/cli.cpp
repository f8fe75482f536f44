// Subcommand driver behind the fiolab binary; also hosts the quick selftest.
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <random>

#include "CLI11.hpp"
#include "fiolab/experiments.hpp"

namespace fiolab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double parse_extended(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF")
        return std::numeric_limits<double>::infinity();
    return std::stod(text);
}

// ---------------------------------------------------------------------------
// Selftest: the cheap identities every subsystem must satisfy.  One line per
// check; returns the failure count.
// ---------------------------------------------------------------------------

struct Checker {
    int failures = 0;
    void operator()(bool ok, const std::string& name) {
        std::printf("[%s] %s\n", ok ? "ok" : "FAIL", name.c_str());
        if (!ok) ++failures;
    }
};

int run_selftest() {
    Checker check;

    // Transforms, 1D.
    GridSpec s1 = GridSpec::make(1, 8.0, 64);
    {
        GridFunction ones(s1);
        for (auto& v : ones.values) v = 1.0;
        Spectrum F = forward_transform(ones);
        double worst = 0.0;
        for (std::size_t i = 0; i < s1.size(); ++i) {
            cd expect = (s1.wavenumber(i)[0] == 0) ? cd(8.0, 0.0) : cd(0.0, 0.0);
            worst = std::max(worst, std::abs(F.coefficients[i] - expect));
        }
        check(worst <= 1e-12 * 8.0, "constant transforms to L at k=0");
    }
    {
        std::mt19937_64 rng(11);
        std::normal_distribution<double> g;
        GridFunction f(s1);
        for (auto& v : f.values) v = cd(g(rng), g(rng));
        GridFunction back = inverse_transform(forward_transform(f));
        double worst = 0.0, peak = 0.0;
        for (std::size_t i = 0; i < s1.size(); ++i) {
            worst = std::max(worst, std::abs(back.values[i] - f.values[i]));
            peak = std::max(peak, std::abs(f.values[i]));
        }
        check(worst <= 1e-12 * peak, "transform round-trip");

        double l2 = lp_quasinorm(f, 2.0);
        Spectrum F = forward_transform(f);
        double par = 0.0;
        for (const cd& c : F.coefficients) par += std::norm(c);
        par = std::sqrt(par / 8.0);
        check(std::abs(l2 - par) <= 1e-12 * l2, "Parseval");
    }
    {
        GridFunction ind(s1);
        for (std::size_t i = 0; i < s1.size(); ++i) {
            double x = s1.point(i)[0];
            if (x >= 0.0 && x < 1.0) ind.values[i] = 1.0;
        }
        bool ok = true;
        for (double p : {0.5, 1.0, 2.0, 7.0})
            ok = ok && std::abs(lp_quasinorm(ind, p) - 1.0) <= 1e-13;
        check(ok, "indicator has unit L^p quasi-norm for all p");
    }

    // Littlewood-Paley, 2D.
    GridSpec s2 = GridSpec::make(2, 2.0 * kPi, 32);
    DyadicCutoffFamily fam2(s2, BumpProfile::mollifier());
    {
        int J = fam2.max_level();
        double worst = 0.0;
        for (std::size_t i = 0; i < s2.size(); ++i) {
            Vec xi = s2.frequency(i);
            if (std::hypot(xi[0], xi[1]) > std::exp2(J)) continue;
            double acc = 0.0;
            for (int j = 0; j <= J; ++j) acc += fam2.psi(j)[i];
            worst = std::max(worst, std::abs(acc - 1.0));
        }
        check(worst <= 1e-13, "partition of unity on the resolvable ball");

        worst = 0.0;
        for (std::size_t i = 0; i < s2.size(); ++i)
            worst = std::max(worst,
                             std::abs(fam2.psi_wide(2)[i] * fam2.psi(2)[i] - fam2.psi(2)[i]));
        check(worst <= 1e-15, "Psi_j is 1 on supp psi_j");
    }
    {
        GridFunction mode(s2);
        std::size_t k = s2.index_of_wavenumber(3, 0);  // |xi| = 3, interior of shell 2
        for (std::size_t i = 0; i < s2.size(); ++i) {
            Vec x = s2.point(i);
            Vec xi = s2.frequency(k);
            mode.values[i] = std::polar(1.0, x[0] * xi[0] + x[1] * xi[1]);
        }
        GridFunction band = band_project(mode, 2, fam2);
        double expect = fam2.psi(2)[k];
        double worst = 0.0;
        for (std::size_t i = 0; i < s2.size(); ++i)
            worst = std::max(worst, std::abs(band.values[i] - expect * mode.values[i]));
        check(worst <= 1e-12, "band projection is a single-mode multiplier");

        GridFunction twice = band_project(band_project(mode, 2, fam2), 0, fam2);
        check(lp_quasinorm(twice, std::numeric_limits<double>::infinity()) <= 1e-12,
              "bands two levels apart are disjoint");
    }

    // Besov / Triebel.
    {
        std::mt19937_64 rng(5);
        std::normal_distribution<double> g;
        GridFunction f(s2);
        for (auto& v : f.values) v = cd(g(rng), g(rng));
        SpaceParams bp = SpaceParams::make(SpaceKind::Besov, 0.7, 1.5, 1.5);
        SpaceParams tp = SpaceParams::make(SpaceKind::TriebelLizorkin, 0.7, 1.5, 1.5);
        double b = besov_norm(f, bp, fam2), t = triebel_norm(f, tp, fam2);
        check(std::abs(b - t) <= 1e-12 * b, "B and F norms agree at p = q");

        GridFunction lifted = bessel_lift(bessel_lift(f, 1.5), -1.5);
        double worst = 0.0;
        for (std::size_t i = 0; i < s2.size(); ++i)
            worst = std::max(worst, std::abs(lifted.values[i] - f.values[i]));
        check(worst <= 1e-11, "Bessel lift inverts");
    }

    // Hilbert transform and the e^{i|xi|} multiplier identity.
    GridSpec sh = GridSpec::make(1, 2.0 * kPi, 256);
    {
        GridFunction c(sh);
        for (std::size_t i = 0; i < sh.size(); ++i) c.values[i] = std::cos(5.0 * sh.point(i)[0]);
        GridFunction Hc = hilbert_transform(c);
        double worst = 0.0;
        for (std::size_t i = 0; i < sh.size(); ++i)
            worst = std::max(worst, std::abs(Hc.values[i] - std::sin(5.0 * sh.point(i)[0])));
        check(worst <= 1e-11, "H maps cos to sin");

        GridFunction HH = hilbert_transform(Hc);
        worst = 0.0;
        for (std::size_t i = 0; i < sh.size(); ++i)
            worst = std::max(worst, std::abs(HH.values[i] + c.values[i]));  // mean is zero
        check(worst <= 1e-11, "H^2 = -1 on mean-zero data");
    }

    // apply_fio against closed forms.
    GridSpec sf = GridSpec::make(1, 2.0 * kPi, 64);
    {
        std::mt19937_64 rng(7);
        std::normal_distribution<double> g;
        GridFunction f(sf);
        for (auto& v : f.values) v = cd(g(rng), g(rng));

        FioOperator identity{Amplitude::one(), Phase::linear(), FreqWindow::All};
        GridFunction out = apply_fio(identity, f, QuadratureMode::Direct);
        double worst = 0.0, peak = 0.0;
        for (std::size_t i = 0; i < sf.size(); ++i) {
            worst = std::max(worst, std::abs(out.values[i] - f.values[i]));
            peak = std::max(peak, std::abs(f.values[i]));
        }
        check(worst <= 1e-10 * peak, "a=1, phi=x.xi reproduces f");

        // Translation phase (x+v).xi with a lattice shift v.
        double v = 4.0 * sf.h();
        Phase shift;
        shift.name = "shifted";
        shift.linear_in_x = true;
        shift.eval = [v](const Vec& x, const Vec& xi) { return (x[0] + v) * xi[0]; };
        FioOperator shifted{Amplitude::one(), shift, FreqWindow::All};
        GridFunction tf = apply_fio(shifted, f, QuadratureMode::Direct);
        worst = 0.0;
        for (std::size_t i = 0; i < sf.size(); ++i) {
            std::size_t src = (i + 4) % sf.size();
            worst = std::max(worst, std::abs(tf.values[i] - f.values[src]));
        }
        check(worst <= 1e-10 * peak, "translation phase shifts the samples");

        FioOperator wave{Amplitude::one(), Phase::wave(0.7), FreqWindow::All};
        GridFunction direct = apply_fio(wave, f, QuadratureMode::Direct);
        GridFunction fast = apply_fio(wave, f, QuadratureMode::Auto);
        worst = 0.0;
        for (std::size_t i = 0; i < sf.size(); ++i)
            worst = std::max(worst, std::abs(direct.values[i] - fast.values[i]));
        check(worst <= 1e-10 * peak, "direct quadrature matches the multiplier path");

        auto [low, high] = split_low_high(wave);
        GridFunction sum = pointwise_combine(apply_fio(low, f), apply_fio(high, f), CombineOp::Add);
        GridFunction full = apply_fio(wave, f);
        worst = 0.0;
        for (std::size_t i = 0; i < sf.size(); ++i)
            worst = std::max(worst, std::abs(sum.values[i] - full.values[i]));
        check(worst <= 1e-11 * peak, "low + high reconstitutes the operator");
    }

    // SND margins.
    {
        std::vector<Vec> xp{{0.0, 0.0}, {0.4, -1.0}};
        std::vector<Vec> sp;
        for (int a = 0; a < 8; ++a) sp.push_back(Vec{std::cos(kPi * a / 4), std::sin(kPi * a / 4)});
        double m1 = snd_margin(Phase::linear(), xp, sp, 2);
        double m2 = snd_margin(Phase::wave(1.0), xp, sp, 2);
        double m3 = snd_margin(Phase::anisotropic(2.0, 0.5), xp, sp, 2);
        check(std::abs(m1 - 1.0) <= 1e-9, "snd margin of x.xi is 1");
        check(std::abs(m2 - 1.0) <= 1e-9, "snd margin of the wave phase is 1");
        check(std::abs(m3 - 1.0) <= 1e-9, "snd margin of diag(2, 1/2) is |det A| = 1");
    }

    // Cone partitions.
    {
        ConeCover cover = ConeCover::build(4, 2);
        check(cover.count() == 26, "level-4 direction count is ceil(8 pi) = 26");
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        double worst_s = 0.0, worst_q = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            Vec xi{uni(rng) * 9.0, uni(rng) * 9.0};
            if (std::hypot(xi[0], xi[1]) < 1e-3) continue;
            double acc = 0.0, acc2 = 0.0;
            for (std::size_t nu = 0; nu < cover.count(); ++nu) {
                acc += cover.cutoff(nu, xi, ConeNormalization::Simple);
                double cq = cover.cutoff(nu, xi, ConeNormalization::Quadratic);
                acc2 += cq * cq;
            }
            worst_s = std::max(worst_s, std::abs(acc - 1.0));
            worst_q = std::max(worst_q, std::abs(acc2 - 1.0));
        }
        check(worst_s <= 1e-12, "simple cone cutoffs sum to 1");
        check(worst_q <= 1e-12, "quadratic cone cutoffs sum in squares to 1");
    }

    // Wave propagation.
    {
        std::mt19937_64 rng(23);
        std::normal_distribution<double> g;
        GridFunction f0(s2), f1(s2);
        for (auto& v : f0.values) v = cd(g(rng), g(rng));
        for (auto& v : f1.values) v = cd(g(rng), g(rng));
        CauchyData data(f0, f1);

        GridFunction u0 = solve_wave(data, 0.0);
        double worst = 0.0, peak = 0.0;
        for (std::size_t i = 0; i < s2.size(); ++i) {
            worst = std::max(worst, std::abs(u0.values[i] - f0.values[i]));
            peak = std::max(peak, std::abs(f0.values[i]));
        }
        check(worst <= 1e-12 * peak, "u(0) = f0");

        double e0 = wave_energy(data, 0.0);
        double emax = 0.0;
        for (double t : {0.5, 1.0, 2.0}) emax = std::max(emax, std::abs(wave_energy(data, t) - e0));
        check(emax <= 1e-9 * e0, "energy conserved");

        GridFunction w1 = half_wave(half_wave(f0, 0.3, +1), 0.9, +1);
        GridFunction w2 = half_wave(f0, 1.2, +1);
        worst = 0.0;
        for (std::size_t i = 0; i < s2.size(); ++i)
            worst = std::max(worst, std::abs(w1.values[i] - w2.values[i]));
        check(worst <= 1e-10 * peak, "half-wave group law");
    }

    // Atoms.
    {
        GridSpec sa = GridSpec::make(2, 16.0, 128);
        Atom atom = make_atom(sa, Vec{1.0, -2.0}, 0.8, 1.0, 99);
        double hn = sa.h() * sa.h();
        double m00 = 0.0;
        double sup = 0.0;
        for (std::size_t i = 0; i < sa.size(); ++i) {
            m00 += hn * atom.values.values[i].real();
            sup = std::max(sup, std::abs(atom.values.values[i]));
        }
        check(std::abs(m00) <= 1e-10, "atom zeroth moment vanishes (r <= 1)");
        double bound = std::pow(kPi * 0.8 * 0.8, -1.0);
        check(sup <= bound * (1.0 + 1e-12), "atom sup bound");

        Atom big = make_atom(sa, Vec{0.0, 0.0}, 2.0, 1.0, 100);
        double big00 = 0.0;
        for (std::size_t i = 0; i < sa.size(); ++i) big00 += hn * big.values.values[i].real();
        check(std::abs(big00) > 1e-6, "r > 1 atom keeps a free zeroth moment");
    }

    // Exponent arithmetic.
    check(critical_order(2.0, 2) == 0.0 && critical_order(2.0, 5) == 0.0, "m_c(2) = 0");
    check(std::abs(critical_order(std::numeric_limits<double>::infinity(), 2) + 0.5) == 0.0,
          "m_c(inf) = -1/2 for n = 2");
    check(critical_order(0.7, 1) == 0.0, "m_c = 0 in one dimension");

    std::printf("%d failures\n", check.failures);
    return check.failures;
}

}  // namespace

// ---------------------------------------------------------------------------
// CLI.
// ---------------------------------------------------------------------------

int cli_run(const std::vector<std::string>& args) {
    CLI::App app{"fiolab: dyadic decompositions, function-space quasi-norms and "
                 "oscillatory-integral experiments on periodic grids"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string config_path, in_path, out_path, p_text, q_text, window_text = "all";
    bool direct = false, envelope = false, probe = false;

    // Defaults depend on the experiment; the config file, when given, is the
    // next layer, and explicit flags win (they are parsed last).
    std::string subname = args.empty() ? "" : args.front();
    if (subname == "atoms") {
        cfg.N = 512;
        cfg.L = 16.0;
        cfg.p = 1.0;
        cfg.corpus_size = 50;
    } else if (subname == "wave-sweep") {
        cfg.N = 128;
        cfg.L = 2.0 * kPi;
        cfg.corpus_size = 20;
    } else if (subname == "cones") {
        cfg.N = 1024;
        cfg.L = 8.0;
        cfg.amplitude = "one";
        cfg.m = 0.0;
    } else if (subname == "sharpness-1d") {
        cfg.n = 1;
    } else if (subname == "norm" || subname == "decompose" || subname == "fio-apply") {
        cfg.n = 1;
        cfg.N = 256;
        cfg.L = 2.0 * kPi;
    }
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        if (args[i] == "--config") {
            try {
                ExperimentConfig file_cfg = ExperimentConfig::load(args[i + 1]);
                cfg = file_cfg;
            } catch (const std::exception& e) {
                std::fprintf(stderr, "error: %s\n", e.what());
                return 1;
            }
            break;
        }
    }

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--seed", cfg.seed, "master seed");
        sub->add_option("--threads", cfg.threads, "worker count (0 = hardware)");
        sub->add_option("--n", cfg.n, "dimension (1 or 2)");
        sub->add_option("--N", cfg.N, "samples per axis");
        sub->add_option("--L", cfg.L, "box side");
        sub->add_option("--p", p_text, "integrability exponent (number or inf)");
        sub->add_option("--q", q_text, "summability exponent (number or inf)");
        sub->add_option("--s", cfg.s, "smoothness");
        sub->add_option("--m", cfg.m, "amplitude order");
        sub->add_option("--phase", cfg.phase, "phase: linear|wave|anisotropic|expr:<...>");
        sub->add_option("--t", cfg.phase_t, "phase time parameter");
        sub->add_option("--amplitude", cfg.amplitude, "amplitude: one|jap|compact_x|expr:<...>");
        sub->add_option("--corpus", cfg.corpus, "corpus kind: random|focusing|knapp");
        sub->add_option("--size", cfg.corpus_size, "corpus size");
        sub->add_option("--j-min", cfg.j_min, "lowest level");
        sub->add_option("--j-max", cfg.j_max, "highest level");
        sub->add_flag("--stability", cfg.stability, "rerun with doubled N and doubled L");
    };

    CLI::App* norm_cmd = app.add_subcommand("norm", "quasi-norm of a stored grid function");
    std::string kind_text = "B";
    norm_cmd->add_option("--in", in_path, "grid function container")->required();
    norm_cmd->add_option("--kind", kind_text, "B or F");
    add_common(norm_cmd);

    CLI::App* dec_cmd = app.add_subcommand("decompose", "export dyadic cutoff tables");
    dec_cmd->add_option("--in", in_path, "optional grid function for per-band norms");
    add_common(dec_cmd);

    CLI::App* fio_cmd = app.add_subcommand("fio-apply", "apply an operator to a grid function");
    fio_cmd->add_option("--in", in_path, "input container")->required();
    fio_cmd->add_option("--out-file", out_path, "output container")->required();
    fio_cmd->add_option("--window", window_text, "all|low|high|band");
    fio_cmd->add_flag("--direct", direct, "force direct quadrature");
    add_common(fio_cmd);

    CLI::App* cones_cmd = app.add_subcommand("cones", "direction sets and kernel envelopes");
    bool save_kernels = false;
    cones_cmd->add_flag("--envelope", envelope, "fit kernel envelopes at each level");
    cones_cmd->add_flag("--probe", probe, "report cutoff derivative constants");
    cones_cmd->add_flag("--save-kernels", save_kernels,
                        "store the nu = 0 kernel per level as a grid container");
    add_common(cones_cmd);

    CLI::App* scaling_cmd = app.add_subcommand("scaling", "band operator-norm scaling in j");
    add_common(scaling_cmd);
    CLI::App* wave_cmd = app.add_subcommand("wave-sweep", "wave estimate ratio sweep");
    add_common(wave_cmd);
    CLI::App* atoms_cmd = app.add_subcommand("atoms", "atom image norm uniformity");
    add_common(atoms_cmd);
    CLI::App* sharp_cmd = app.add_subcommand("sharpness-1d", "1D tail and divergence study");
    add_common(sharp_cmd);
    app.add_subcommand("selftest", "run the quick identity checks");

    std::vector<std::string> argv_storage;
    argv_storage.push_back("fiolab");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();

        if (name == "selftest") return run_selftest() == 0 ? 0 : 2;

        if (!p_text.empty()) cfg.p = parse_extended(p_text);
        if (!q_text.empty()) cfg.q = parse_extended(q_text);
        if (cfg.threads) set_thread_count(cfg.threads);
        std::filesystem::create_directories(cfg.out_dir);

        if (name == "norm") {
            GridFunction f = load_grid_function(in_path);
            DyadicCutoffFamily family(f.spec, BumpProfile::mollifier());
            SpaceKind kind = (kind_text == "F") ? SpaceKind::TriebelLizorkin : SpaceKind::Besov;
            SpaceParams params = SpaceParams::make(kind, cfg.s, cfg.p, cfg.q);
            double value = space_norm(f, params, family);
            std::printf("kind,s,p,q,J,value\n%s,%s,%s,%s,%d,%s\n", kind_text.c_str(),
                        format_double(cfg.s).c_str(), format_double(cfg.p).c_str(),
                        format_double(cfg.q).c_str(), family.max_level(),
                        format_double(value).c_str());
            CsvWriter csv((std::filesystem::path(cfg.out_dir) / "norm.csv").string());
            csv.header({"kind", "s", "p", "q", "J", "value"});
            csv.row({kind_text, format_double(cfg.s), format_double(cfg.p), format_double(cfg.q),
                     std::to_string(family.max_level()), format_double(value)});
            return 0;
        }
        if (name == "decompose") {
            GridSpec spec = cfg.make_grid();
            DyadicCutoffFamily family(spec, BumpProfile::mollifier());
            std::string table = (std::filesystem::path(cfg.out_dir) / "cutoffs.csv").string();
            family.export_csv(table);
            if (!in_path.empty()) {
                GridFunction f = load_grid_function(in_path);
                CsvWriter csv((std::filesystem::path(cfg.out_dir) / "bands.csv").string());
                csv.header({"j", "lp_norm"});
                for (int j = 0; j <= family.max_level(); ++j)
                    csv.row({std::to_string(j),
                             format_double(lp_quasinorm(band_project(f, j, family), cfg.p))});
            }
            return 0;
        }
        if (name == "fio-apply") {
            GridFunction f = load_grid_function(in_path);
            FioOperator op{cfg.make_amplitude(), cfg.make_phase(), FreqWindow::All, -1,
                           BumpProfile::mollifier()};
            {
                std::vector<Vec> xp{{0.0, 0.0}, {0.3, -0.2}};
                std::vector<Vec> sphere;
                for (int a = 0; a < 8; ++a)
                    sphere.push_back(Vec{std::cos(kPi * a / 4.0),
                                         cfg.n == 2 ? std::sin(kPi * a / 4.0) : 0.0});
                if (cfg.n == 1) sphere = {Vec{1.0, 0.0}, Vec{-1.0, 0.0}};
                std::printf("phase probes: homogeneity defect %.2e, snd margin %.6f\n",
                            phase_homogeneity_defect(op.phase, xp, sphere, cfg.n),
                            snd_margin(op.phase, xp, sphere, cfg.n));
                std::printf("amplitude seminorm probe: %.4g (order %g)\n",
                            amplitude_seminorm_probe(op.amplitude, xp, sphere, cfg.n),
                            op.amplitude.order);
            }
            if (window_text == "low") op.window = FreqWindow::Low;
            else if (window_text == "high") op.window = FreqWindow::High;
            else if (window_text == "band") {
                op.window = FreqWindow::Band;
                op.band_level = cfg.j_min;
            } else if (window_text != "all")
                throw ParameterError("unknown window '" + window_text + "'");
            GridFunction out =
                apply_fio(op, f, direct ? QuadratureMode::Direct : QuadratureMode::Auto);
            save_grid_function(out, out_path);
            return 0;
        }
        if (name == "cones") {
            GridSpec spec = cfg.make_grid();
            DyadicCutoffFamily family(spec, BumpProfile::mollifier());
            CsvWriter env_csv((std::filesystem::path(cfg.out_dir) / "envelope.csv").string());
            env_csv.header({"j", "nu", "m", "N_env", "C", "config_hash"});
            const std::string hash = cfg.hash();
            for (int j = cfg.j_min; j <= std::min(cfg.j_max, family.max_level()); ++j) {
                ConeCover cover = ConeCover::build(j, cfg.n, family.profile());
                cover.export_csv(
                    (std::filesystem::path(cfg.out_dir) / ("directions_j" + std::to_string(j) + ".csv"))
                        .string());
                if (envelope || save_kernels) {
                    Phase phase = cfg.make_phase();
                    Amplitude amp = cfg.make_amplitude();
                    std::size_t last = envelope ? cover.count() : 1;
                    for (std::size_t nu = 0; nu < last; ++nu) {
                        GridFunction K =
                            cone_kernel(amp, phase, j, nu, Vec{0.0, 0.0}, family, cover);
                        if (envelope) {
                            double C =
                                envelope_fit(K, j, nu, phase, cfg.m, 2, Vec{0.0, 0.0}, cover);
                            env_csv.row({std::to_string(j), std::to_string(nu),
                                         format_double(cfg.m), "2", format_double(C), hash});
                        }
                        if (save_kernels && nu == 0)
                            save_grid_function(K, (std::filesystem::path(cfg.out_dir) /
                                                   ("kernel_j" + std::to_string(j) + ".bin"))
                                                      .string());
                    }
                }
                if (probe) {
                    CsvWriter pcsv((std::filesystem::path(cfg.out_dir) /
                                    ("cutoff_probe_j" + std::to_string(j) + ".csv"))
                                       .string());
                    pcsv.header({"alpha0", "alpha1", "constant"});
                    for (auto alpha : std::vector<std::array<int, 2>>{{0, 0}, {1, 0}, {0, 1},
                                                                      {2, 0}, {1, 1}, {0, 2}})
                        pcsv.row({std::to_string(alpha[0]), std::to_string(alpha[1]),
                                  format_double(cutoff_derivative_probe(cover, 0, alpha))});
                }
            }
            return 0;
        }
        if (name == "scaling") {
            ScalingReport report = scaling_experiment(cfg);
            write_scaling_report(report, cfg);
            std::printf("slope %.4f target %.4f upper_bound_ok %d attainment %d\n", report.slope,
                        report.target, int(report.upper_bound_ok),
                        int(report.attainment_observed));
            return 0;
        }
        if (name == "wave-sweep") {
            cfg.experiment = "wave-sweep";
            if (cfg.stability) {
                WaveStability st = wave_sweep_stability(cfg);
                write_wave_report(st.base, cfg, "wave_sweep");
                write_wave_report(st.n_doubled, cfg, "wave_sweep_ndouble");
                write_wave_report(st.l_doubled, cfg, "wave_sweep_ldouble");
                std::printf("worst change: N-doubling %.3f, L-doubling %.3f\n", st.worst_change_n,
                            st.worst_change_l);
            } else {
                write_wave_report(wave_sweep(cfg), cfg, "wave_sweep");
            }
            return 0;
        }
        if (name == "atoms") {
            cfg.experiment = "atoms";
            AtomUniformityReport report = atom_uniformity(cfg);
            write_atom_report(report, cfg);
            std::printf("max/median = %.3f over %zu atoms\n", report.max_over_median,
                        report.norms.size());
            return 0;
        }
        if (name == "sharpness-1d") {
            cfg.experiment = "sharpness-1d";
            cfg.n = 1;
            SharpnessReport report = sharpness_experiment_1d(cfg);
            write_sharpness_report(report, cfg);
            std::printf("tail constant %.5f (target %.5f)\n", report.tail_constant,
                        report.tail_target);
            return 0;
        }
        throw ParameterError("unknown subcommand");
    } catch (const StructuralError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const ParameterError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "failure: %s\n", e.what());
        return 2;
    }
}

}  // namespace fiolab

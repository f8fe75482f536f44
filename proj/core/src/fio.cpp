#include "fiolab/fio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fiolab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double norm2(const Vec& v) { return std::hypot(v[0], v[1]); }

std::string point_string(const Vec& x, const Vec& xi) {
    std::ostringstream os;
    os << "(x = [" << x[0] << ", " << x[1] << "], xi = [" << xi[0] << ", " << xi[1] << "])";
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Amplitudes.
// ---------------------------------------------------------------------------

Amplitude Amplitude::one() {
    return Amplitude{0.0, true, "one", [](const Vec&, const Vec&) { return cd(1.0, 0.0); }};
}

Amplitude Amplitude::jap(double m) {
    return Amplitude{m, true, "jap_m", [m](const Vec&, const Vec& xi) {
                         double j2 = 1.0 + xi[0] * xi[0] + xi[1] * xi[1];
                         return cd(std::pow(j2, 0.5 * m), 0.0);
                     }};
}

Amplitude Amplitude::compact_x(double m, double radius) {
    BumpProfile prof = BumpProfile::mollifier();
    return Amplitude{m, false, "compact_x", [m, radius, prof](const Vec& x, const Vec& xi) {
                         double j2 = 1.0 + xi[0] * xi[0] + xi[1] * xi[1];
                         double w = prof(2.0 * norm2(x) / radius);
                         return cd(w * std::pow(j2, 0.5 * m), 0.0);
                     }};
}

Amplitude Amplitude::from_expr(const std::string& text, double m) {
    PhaseExpr e = PhaseExpr::parse(text);
    return Amplitude{m, false, "expr:" + text,
                     [e](const Vec& x, const Vec& xi) { return cd(e.eval(x, xi), 0.0); }};
}

// ---------------------------------------------------------------------------
// Phases.
// ---------------------------------------------------------------------------

Phase Phase::linear() {
    Phase p;
    p.name = "linear";
    p.linear_in_x = true;
    p.eval = [](const Vec& x, const Vec& xi) { return x[0] * xi[0] + x[1] * xi[1]; };
    p.grad_xi = [](const Vec& x, const Vec&) { return x; };
    p.mixed_hessian = [](const Vec&, const Vec&) {
        return std::array<double, 4>{1.0, 0.0, 0.0, 1.0};
    };
    return p;
}

Phase Phase::wave(double t) {
    Phase p;
    p.name = "wave";
    p.linear_in_x = true;
    p.eval = [t](const Vec& x, const Vec& xi) {
        return x[0] * xi[0] + x[1] * xi[1] + t * norm2(xi);
    };
    p.grad_xi = [t](const Vec& x, const Vec& xi) {
        double r = norm2(xi);
        if (r == 0.0) return x;
        return Vec{x[0] + t * xi[0] / r, x[1] + t * xi[1] / r};
    };
    p.mixed_hessian = [](const Vec&, const Vec&) {
        return std::array<double, 4>{1.0, 0.0, 0.0, 1.0};
    };
    return p;
}

Phase Phase::anisotropic(double a00, double a11) {
    Phase p;
    p.name = "anisotropic";
    p.linear_in_x = false;  // not of the form x.xi + phi0
    p.eval = [a00, a11](const Vec& x, const Vec& xi) {
        return x[0] * a00 * xi[0] + x[1] * a11 * xi[1] + norm2(xi);
    };
    p.grad_xi = [a00, a11](const Vec& x, const Vec& xi) {
        double r = norm2(xi);
        Vec g{a00 * x[0], a11 * x[1]};
        if (r > 0.0) {
            g[0] += xi[0] / r;
            g[1] += xi[1] / r;
        }
        return g;
    };
    p.mixed_hessian = [a00, a11](const Vec&, const Vec&) {
        return std::array<double, 4>{a00, 0.0, 0.0, a11};
    };
    return p;
}

Phase Phase::from_expr(const std::string& text) {
    PhaseExpr e = PhaseExpr::parse(text);
    Phase p;
    p.name = "expr:" + text;
    p.linear_in_x = false;
    p.eval = [e](const Vec& x, const Vec& xi) { return e.eval(x, xi); };
    return p;
}

Vec Phase::grad_xi_at(const Vec& x, const Vec& xi, int n) const {
    if (grad_xi) return grad_xi(x, xi);
    double r = norm2(xi);
    double step = 1e-5 * (r > 0.0 ? r : 1.0);
    Vec g{0.0, 0.0};
    for (int axis = 0; axis < n; ++axis) {
        Vec hi = xi, lo = xi;
        hi[axis] += step;
        lo[axis] -= step;
        g[axis] = (eval(x, hi) - eval(x, lo)) / (2.0 * step);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Probes (finite differences on user evaluators).
// ---------------------------------------------------------------------------

// Finite differences are built from an explicit stack of derivative
// directions, one central difference per entry.
namespace {

struct DerivStep {
    bool in_x;
    int axis;
};

double fd_recursive(const std::function<double(const Vec&, const Vec&)>& f, const Vec& x,
                    const Vec& xi, const std::vector<DerivStep>& steps, std::size_t at) {
    if (at == steps.size()) return f(x, xi);
    const DerivStep& d = steps[at];
    double step = d.in_x ? 1e-5 : 1e-5 * std::max(norm2(xi), 1e-8);
    Vec hi_x = x, lo_x = x, hi_xi = xi, lo_xi = xi;
    if (d.in_x) {
        hi_x[d.axis] += step;
        lo_x[d.axis] -= step;
    } else {
        hi_xi[d.axis] += step;
        lo_xi[d.axis] -= step;
    }
    double up = fd_recursive(f, hi_x, hi_xi, steps, at + 1);
    double dn = fd_recursive(f, lo_x, lo_xi, steps, at + 1);
    return (up - dn) / (2.0 * step);
}

// All derivative direction stacks with total order in [lo, hi], at most
// `max_xi` frequency derivatives counted separately for the weight.
void enumerate_stacks(int n, int total, std::vector<DerivStep>& stack,
                      const std::function<void(const std::vector<DerivStep>&)>& emit) {
    if (total == 0) {
        emit(stack);
        return;
    }
    for (int in_x = 0; in_x <= 1; ++in_x) {
        for (int axis = 0; axis < n; ++axis) {
            stack.push_back({in_x == 1, axis});
            enumerate_stacks(n, total - 1, stack, emit);
            stack.pop_back();
        }
    }
}

}  // namespace

double phase_homogeneity_defect(const Phase& phase, const std::vector<Vec>& x_probes,
                                const std::vector<Vec>& xi_probes, int n) {
    (void)n;
    double worst = 0.0;
    for (const Vec& x : x_probes) {
        for (const Vec& xi : xi_probes) {
            double r = norm2(xi);
            if (r == 0.0) throw ParameterError("homogeneity probe requires xi != 0");
            double base = phase.eval(x, xi);
            for (double lambda : {0.5, 2.0}) {
                Vec sxi{lambda * xi[0], lambda * xi[1]};
                double defect = std::abs(phase.eval(x, sxi) - lambda * base);
                worst = std::max(worst, defect / (lambda * r * std::max(1.0, std::abs(base))));
            }
        }
    }
    return worst;
}

double phase_phi2_probe(const Phase& phase, const std::vector<Vec>& x_probes,
                        const std::vector<Vec>& xi_probes, int n) {
    double worst = 0.0;
    std::vector<DerivStep> stack;
    for (int total = 2; total <= 3; ++total) {
        enumerate_stacks(n, total, stack, [&](const std::vector<DerivStep>& steps) {
            int xi_order = 0;
            for (const auto& s : steps)
                if (!s.in_x) ++xi_order;
            for (const Vec& x : x_probes) {
                for (const Vec& xi : xi_probes) {
                    double r = norm2(xi);
                    double d = fd_recursive(phase.eval, x, xi, steps, 0);
                    if (!std::isfinite(d))
                        throw EvaluationError("phase derivative probe diverged at " +
                                              point_string(x, xi));
                    worst = std::max(worst, std::pow(r, xi_order - 1) * std::abs(d));
                }
            }
        });
    }
    return worst;
}

double amplitude_seminorm_probe(const Amplitude& amp, const std::vector<Vec>& x_probes,
                                const std::vector<Vec>& xi_probes, int n) {
    auto re = [&amp](const Vec& x, const Vec& xi) { return amp.eval(x, xi).real(); };
    auto im = [&amp](const Vec& x, const Vec& xi) { return amp.eval(x, xi).imag(); };
    double worst = 0.0;
    std::vector<DerivStep> stack;
    for (int total = 0; total <= 2; ++total) {
        enumerate_stacks(n, total, stack, [&](const std::vector<DerivStep>& steps) {
            for (const auto& s : steps)
                if (s.in_x) return;  // xi derivatives only
            for (const Vec& x : x_probes) {
                for (const Vec& xi : xi_probes) {
                    double jap = std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1]);
                    double dr = fd_recursive(re, x, xi, steps, 0);
                    double di = fd_recursive(im, x, xi, steps, 0);
                    double mag = std::hypot(dr, di);
                    if (!std::isfinite(mag))
                        throw EvaluationError("amplitude probe diverged at " + point_string(x, xi));
                    worst = std::max(worst,
                                     mag * std::pow(jap, double(steps.size()) - amp.order));
                }
            }
        });
    }
    return worst;
}

double snd_margin(const Phase& phase, const std::vector<Vec>& x_probes,
                  const std::vector<Vec>& sphere_probes, int n) {
    if (x_probes.empty() || sphere_probes.empty())
        throw ParameterError("snd_margin: probe sets must be nonempty");
    double margin = std::numeric_limits<double>::infinity();
    for (const Vec& x : x_probes) {
        for (const Vec& xi : sphere_probes) {
            std::array<double, 4> H;
            if (phase.mixed_hessian) {
                H = phase.mixed_hessian(x, xi);
            } else {
                for (int jx = 0; jx < n; ++jx) {
                    for (int kxi = 0; kxi < n; ++kxi) {
                        std::vector<DerivStep> steps{{true, jx}, {false, kxi}};
                        H[jx * 2 + kxi] = fd_recursive(phase.eval, x, xi, steps, 0);
                    }
                }
            }
            double det = (n == 1) ? H[0] : H[0] * H[3] - H[1] * H[2];
            if (!std::isfinite(det))
                throw EvaluationError("snd_margin: non-finite mixed Hessian at " +
                                      point_string(x, xi));
            margin = std::min(margin, std::abs(det));
        }
    }
    return margin;
}

// ---------------------------------------------------------------------------
// Operator application.
// ---------------------------------------------------------------------------

double FioOperator::window_weight(double abs_xi) const {
    switch (window) {
        case FreqWindow::All: return 1.0;
        case FreqWindow::Low: return psi0_radial(profile, abs_xi);
        case FreqWindow::High: return 1.0 - psi0_radial(profile, abs_xi);
        case FreqWindow::Band:
            return psi_level_radial(profile, band_level, abs_xi) *
                   (1.0 - psi0_radial(profile, 2.0 * abs_xi));
    }
    return 1.0;
}

std::vector<cd> multiplier_symbol(const FioOperator& op, const GridSpec& spec) {
    if (!op.amplitude.x_independent || !op.phase.linear_in_x)
        throw ParameterError("multiplier_symbol: operator is not x-separable");
    std::vector<cd> sym(spec.size());
    const Vec origin{0.0, 0.0};
    parallel_for(spec.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            Vec xi = spec.frequency(i);
            double r = norm2(xi);
            double phi0 = (r == 0.0) ? 0.0 : op.phase.eval(origin, xi);
            cd a = op.amplitude.eval(origin, xi);
            if (!std::isfinite(phi0) || !std::isfinite(a.real()) || !std::isfinite(a.imag()))
                throw EvaluationError("multiplier_symbol: non-finite value at " +
                                      point_string(origin, xi));
            sym[i] = op.window_weight(r) * a * std::polar(1.0, phi0);
        }
    });
    return sym;
}

GridFunction apply_multiplier(const std::vector<cd>& symbol, const GridFunction& f) {
    if (symbol.size() != f.spec.size())
        throw StructuralError("apply_multiplier: symbol size does not match lattice");
    Spectrum F = forward_transform(f);
    parallel_for(F.coefficients.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) F.coefficients[i] *= symbol[i];
    });
    return inverse_transform(F);
}

GridFunction apply_fio(const FioOperator& op, const GridFunction& f, QuadratureMode mode) {
    const GridSpec& spec = f.spec;
    if (mode == QuadratureMode::Auto && op.amplitude.x_independent && op.phase.linear_in_x)
        return apply_multiplier(multiplier_symbol(op, spec), f);

    Spectrum F = forward_transform(f);
    const double scale = 1.0 / std::pow(spec.L, spec.n);

    // Windowed coefficients in the fixed quadrature order (ascending |k|,
    // then lexicographic); zero terms are dropped, which cannot change the
    // sum.
    std::vector<std::size_t> order = quadrature_order(spec);
    struct Term {
        Vec xi;
        double abs_xi;
        cd coeff;  // window * Fhat * L^{-n}
    };
    std::vector<Term> terms;
    terms.reserve(order.size());
    for (std::size_t idx : order) {
        double w = op.window_weight(norm2(spec.frequency(idx)));
        cd c = w * F.coefficients[idx] * scale;
        if (c == cd(0.0, 0.0)) continue;
        Vec xi = spec.frequency(idx);
        terms.push_back({xi, norm2(xi), c});
    }

    GridFunction out(spec);
    const bool xfree = op.amplitude.x_independent;
    std::vector<cd> amp_cache;
    if (xfree) {
        amp_cache.resize(terms.size());
        const Vec origin{0.0, 0.0};
        for (std::size_t t = 0; t < terms.size(); ++t) {
            amp_cache[t] = op.amplitude.eval(origin, terms[t].xi);
            if (!std::isfinite(amp_cache[t].real()) || !std::isfinite(amp_cache[t].imag()))
                throw EvaluationError("apply_fio: non-finite amplitude at " +
                                      point_string(origin, terms[t].xi));
        }
    }

    parallel_for(spec.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            Vec x = spec.point(i);
            cd acc(0.0, 0.0);
            for (std::size_t t = 0; t < terms.size(); ++t) {
                const Term& term = terms[t];
                double phi = (term.abs_xi == 0.0) ? 0.0 : op.phase.eval(x, term.xi);
                cd a = xfree ? amp_cache[t] : op.amplitude.eval(x, term.xi);
                if (!std::isfinite(phi) || !std::isfinite(a.real()) || !std::isfinite(a.imag()))
                    throw EvaluationError("apply_fio: non-finite evaluation at " +
                                          point_string(x, term.xi));
                acc += term.coeff * a * std::polar(1.0, phi);
            }
            out.values[i] = acc;
        }
    });
    return out;
}

std::pair<FioOperator, FioOperator> split_low_high(const FioOperator& op) {
    if (op.window != FreqWindow::All)
        throw ParameterError("split_low_high: operator is already windowed");
    FioOperator low = op, high = op;
    low.window = FreqWindow::Low;
    high.window = FreqWindow::High;
    return {low, high};
}

GridFunction hilbert_transform(const GridFunction& f) {
    if (f.spec.n != 1) throw ParameterError("hilbert_transform: requires n = 1");
    const GridSpec& spec = f.spec;
    std::vector<cd> sym(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        int k = spec.wavenumber(i)[0];
        if (k == 0 || k == -spec.N / 2)
            sym[i] = 0.0;  // zero mode killed; unpaired Nyquist zeroed
        else
            sym[i] = cd(0.0, k > 0 ? -1.0 : 1.0);
    }
    return apply_multiplier(sym, f);
}

GridFunction sharpness_operator_1d(const GridFunction& f) {
    if (f.spec.n != 1) throw ParameterError("sharpness_operator_1d: requires n = 1");
    const GridSpec& spec = f.spec;
    std::vector<cd> sym(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        double r = std::abs(spec.frequency(i)[0]);
        sym[i] = std::polar(1.0, r);
    }
    return apply_multiplier(sym, f);
}

KernelDecayFit low_freq_kernel_decay(const FioOperator& op_low, const GridSpec& spec, Vec x0) {
    if (op_low.window != FreqWindow::Low)
        throw ParameterError("low_freq_kernel_decay: operator must carry the psi_0 window");

    // Coefficients over the (small) low-frequency support, fixed order.
    std::vector<std::size_t> order = quadrature_order(spec);
    struct Term {
        Vec xi;
        cd coeff;
    };
    std::vector<Term> terms;
    const double scale = 1.0 / std::pow(spec.L, spec.n);
    for (std::size_t idx : order) {
        Vec xi = spec.frequency(idx);
        double w = op_low.window_weight(norm2(xi));
        if (w == 0.0) continue;
        double phi = (norm2(xi) == 0.0) ? 0.0 : op_low.phase.eval(x0, xi);
        cd a = op_low.amplitude.eval(x0, xi);
        if (!std::isfinite(phi) || !std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw EvaluationError("low_freq_kernel_decay: non-finite evaluation at " +
                                  point_string(x0, xi));
        terms.push_back({xi, w * a * std::polar(1.0, phi) * scale});
    }

    std::vector<double> absK(spec.size());
    parallel_for(spec.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            Vec y = spec.point(i);
            cd acc(0.0, 0.0);
            for (const Term& t : terms)
                acc += t.coeff * std::polar(1.0, -(y[0] * t.xi[0] + y[1] * t.xi[1]));
            absK[i] = std::abs(acc);
        }
    });

    double peak = 0.0;
    for (double v : absK) peak = std::max(peak, v);
    if (peak < 1e-14)
        throw EvaluationError("low_freq_kernel_decay: insufficient dynamic range (|K| < 1e-14)");

    // Fit log|K| against log<y> on 4 <= <y> <= L/4, keeping points above the
    // relative floor 1e-14 peak (roundoff from the lattice sum).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    double sup_weighted = 0.0;
    const double w_exp = spec.n + 0.5;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        Vec y = spec.point(i);
        double jap = std::sqrt(1.0 + y[0] * y[0] + y[1] * y[1]);
        if (jap < 4.0 || jap > spec.L / 4.0) continue;
        if (absK[i] < 1e-14 * peak) continue;
        double lx = std::log(jap), ly = std::log(absK[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
        sup_weighted = std::max(sup_weighted, std::pow(jap, w_exp) * absK[i]);
    }
    if (count < 8)
        throw EvaluationError("low_freq_kernel_decay: too few usable points in the fit window");
    double denom = count * sxx - sx * sx;
    KernelDecayFit fit;
    fit.slope = (count * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / count;
    fit.sup_weighted = sup_weighted;
    fit.points = count;
    return fit;
}

}  // namespace fiolab

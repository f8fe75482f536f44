#include "fiolab/cones.hpp"

#include <algorithm>
#include <cmath>

namespace fiolab {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double norm2(const Vec& v) { return std::hypot(v[0], v[1]); }
}  // namespace

ConeCover::ConeCover(int j, int n, BumpProfile profile, std::vector<Vec> directions)
    : j_(j), n_(n), profile_(profile), directions_(std::move(directions)) {}

ConeCover ConeCover::build(int j, int n, BumpProfile profile) {
    if (j < 1) throw ParameterError("ConeCover: level must be >= 1");
    if (n == 1) return ConeCover(j, 1, profile, {Vec{1.0, 0.0}, Vec{-1.0, 0.0}});
    if (n != 2) throw ParameterError("ConeCover: unsupported dimension");
    const double sep = std::exp2(-0.5 * j);
    const std::size_t count = static_cast<std::size_t>(std::ceil(2.0 * kPi / sep));
    std::vector<Vec> dirs(count);
    for (std::size_t m = 0; m < count; ++m) {
        double theta = 2.0 * kPi * double(m) / double(count);
        dirs[m] = Vec{std::cos(theta), std::sin(theta)};
    }
    return ConeCover(j, 2, profile, std::move(dirs));
}

ConeCover build_directions(int j, int n, BumpProfile profile) {
    return ConeCover::build(j, n, profile);
}

double ConeCover::eta(std::size_t nu, const Vec& xi) const {
    double r = norm2(xi);
    if (r == 0.0) throw ParameterError("cone cutoff undefined at xi = 0");
    const Vec& d = directions_[nu];
    double dx = xi[0] / r - d[0];
    double dy = n_ == 2 ? xi[1] / r - d[1] : -d[1];
    return profile_(std::exp2(0.5 * j_) * std::hypot(dx, dy));
}

double ConeCover::cutoff(std::size_t nu, const Vec& xi, ConeNormalization norm) const {
    double r = norm2(xi);
    if (r == 0.0) throw ParameterError("cone cutoff undefined at xi = 0");
    double target = eta(nu, xi);
    if (target == 0.0) return 0.0;

    double acc = 0.0;
    const std::size_t M = directions_.size();
    const long reach = 6;  // eta vanishes beyond chord 2*2^{-j/2}, under 3 grid steps
    if (n_ == 1 || M <= 2 * std::size_t(reach) + 1) {
        for (std::size_t m = 0; m < M; ++m) {
            double e = eta(m, xi);
            acc += (norm == ConeNormalization::Simple) ? e : e * e;
        }
    } else {
        // Only a bounded angular neighbourhood of xi can contribute.
        double theta = std::atan2(xi[1], xi[0]);
        double step = 2.0 * kPi / double(M);
        long center = std::lround(theta / step);
        for (long o = -reach; o <= reach; ++o) {
            std::size_t m = static_cast<std::size_t>(((center + o) % long(M) + long(M)) % long(M));
            double e = eta(m, xi);
            acc += (norm == ConeNormalization::Simple) ? e : e * e;
        }
    }
    return (norm == ConeNormalization::Simple) ? target / acc : target / std::sqrt(acc);
}

void ConeCover::export_csv(const std::string& path) const {
    CsvWriter csv(path);
    csv.header({"j", "nu", "d1", "d2"});
    for (std::size_t nu = 0; nu < directions_.size(); ++nu)
        csv.row({std::to_string(j_), std::to_string(nu), format_double(directions_[nu][0]),
                 format_double(directions_[nu][1])});
}

// ---------------------------------------------------------------------------
// Localized kernels.
// ---------------------------------------------------------------------------

GridFunction cone_kernel(const Amplitude& amplitude, const Phase& phase, int j, std::size_t nu,
                         Vec y_ref, const DyadicCutoffFamily& family, const ConeCover& cover,
                         QuadratureMode mode) {
    const GridSpec& spec = family.spec();
    if (j < 1 || j > family.max_level())
        throw ParameterError("cone_kernel: level out of range 1..J");
    if (nu >= cover.count()) throw ParameterError("cone_kernel: direction index out of range");
    const std::vector<double>& psi_j = family.psi(j);
    const double scale = 1.0 / std::pow(spec.L, spec.n);

    bool y_on_lattice = true;
    for (int axis = 0; axis < spec.n; ++axis) {
        double steps = (y_ref[axis] + spec.L / 2.0) / spec.h();
        if (std::abs(steps - std::round(steps)) > 1e-12) y_on_lattice = false;
    }

    if (mode == QuadratureMode::Auto && amplitude.x_independent && phase.linear_in_x &&
        y_on_lattice) {
        Spectrum table(spec);
        const Vec origin{0.0, 0.0};
        parallel_for(spec.size(), [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                if (psi_j[i] == 0.0) continue;
                Vec xi = spec.frequency(i);
                double chi = cover.cutoff(nu, xi);
                if (chi == 0.0) continue;
                double phi0 = phase.eval(origin, xi);
                cd a = amplitude.eval(origin, xi);
                double shift = y_ref[0] * xi[0] + y_ref[1] * xi[1];
                table.coefficients[i] = psi_j[i] * chi * a * std::polar(1.0, phi0 - shift);
            }
        });
        return inverse_transform(table);
    }

    // Direct quadrature over the windowed support in the fixed order.
    struct Term {
        Vec xi;
        cd coeff;
    };
    std::vector<Term> terms;
    for (std::size_t idx : quadrature_order(spec)) {
        if (psi_j[idx] == 0.0) continue;
        Vec xi = spec.frequency(idx);
        double chi = cover.cutoff(nu, xi);
        if (chi == 0.0) continue;
        double shift = y_ref[0] * xi[0] + y_ref[1] * xi[1];
        terms.push_back({xi, psi_j[idx] * chi * scale * std::polar(1.0, -shift)});
    }

    GridFunction K(spec);
    parallel_for(spec.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            Vec x = spec.point(i);
            cd acc(0.0, 0.0);
            for (const Term& t : terms) {
                double phi = phase.eval(x, t.xi);
                cd a = amplitude.eval(x, t.xi);
                if (!std::isfinite(phi) || !std::isfinite(a.real()) || !std::isfinite(a.imag()))
                    throw EvaluationError("cone_kernel: non-finite evaluation at x index " +
                                          std::to_string(i));
                acc += t.coeff * a * std::polar(1.0, phi);
            }
            K.values[i] = acc;
        }
    });
    return K;
}

GridFunction cone_kernel_adjoint(const Amplitude& amplitude, const Phase& phase, int j,
                                 std::size_t nu, Vec x_ref, const DyadicCutoffFamily& family,
                                 const ConeCover& cover) {
    const GridSpec& spec = family.spec();
    if (j < 1 || j > family.max_level())
        throw ParameterError("cone_kernel_adjoint: level out of range 1..J");
    if (nu >= cover.count())
        throw ParameterError("cone_kernel_adjoint: direction index out of range");
    const std::vector<double>& psi_j = family.psi(j);
    const double scale = 1.0 / std::pow(spec.L, spec.n);

    struct Term {
        Vec xi;
        cd coeff;  // psi chi e^{i x_ref.xi} / L^n
    };
    std::vector<Term> terms;
    for (std::size_t idx : quadrature_order(spec)) {
        if (psi_j[idx] == 0.0) continue;
        Vec xi = spec.frequency(idx);
        double chi = cover.cutoff(nu, xi);
        if (chi == 0.0) continue;
        double shift = x_ref[0] * xi[0] + x_ref[1] * xi[1];
        terms.push_back({xi, psi_j[idx] * chi * scale * std::polar(1.0, shift)});
    }

    GridFunction K(spec);
    parallel_for(spec.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            Vec y = spec.point(i);
            cd acc(0.0, 0.0);
            for (const Term& t : terms) {
                double phi = phase.eval(y, t.xi);
                cd a = amplitude.eval(y, t.xi);
                if (!std::isfinite(phi) || !std::isfinite(a.real()) || !std::isfinite(a.imag()))
                    throw EvaluationError("cone_kernel_adjoint: non-finite evaluation at y index " +
                                          std::to_string(i));
                acc += t.coeff * a * std::polar(1.0, -phi);
            }
            K.values[i] = acc;
        }
    });
    return K;
}

double envelope_fit(const GridFunction& K, int j, std::size_t nu, const Phase& phase, double m,
                    int N_env, Vec y_ref, const ConeCover& cover, double weighted_window) {
    if (N_env < 2) throw ParameterError("envelope_fit: N_env must be >= 2");
    if (!(weighted_window > 0.0)) throw ParameterError("envelope_fit: window must be positive");
    const GridSpec& spec = K.spec;
    const Vec dir = cover.directions()[nu];
    const double band_scale = std::exp2(-double(j) * (m + 0.5 * (spec.n + 1)));
    const double w1 = std::exp2(double(j));
    const double w2 = std::exp2(0.5 * j);

    std::vector<double> local(spec.size(), 0.0);
    parallel_for(spec.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            Vec x = spec.point(i);
            Vec g = phase.grad_xi_at(x, dir, spec.n);
            Vec u{g[0] - y_ref[0], g[1] - y_ref[1]};
            double u1 = u[0] * dir[0] + u[1] * dir[1];
            double uperp = 0.0;
            if (spec.n == 2) uperp = std::hypot(u[0] - u1 * dir[0], u[1] - u1 * dir[1]);
            double t1 = w1 * std::abs(u1);
            double t2 = w2 * uperp;
            if (t1 > weighted_window || t2 > weighted_window) continue;
            double weight = std::pow(1.0 + t1 * t1, N_env) * std::pow(1.0 + t2 * t2, N_env);
            local[i] = std::abs(K.values[i]) * band_scale * weight;
        }
    });
    double C = 0.0;
    for (double v : local) C = std::max(C, v);
    return C;
}

double cutoff_derivative_probe(const ConeCover& cover, std::size_t nu, std::array<int, 2> alpha,
                               ConeNormalization norm) {
    const int n = cover.dimension();
    const int j = cover.level();
    const int total = alpha[0] + alpha[1];
    if (total > 2 || alpha[0] < 0 || alpha[1] < 0)
        throw ParameterError("cutoff_derivative_probe: |alpha| <= 2 only");
    if (n == 1 && alpha[1] != 0)
        throw ParameterError("cutoff_derivative_probe: second axis absent for n = 1");

    auto chi = [&](const Vec& xi) { return cover.cutoff(nu, xi, norm); };

    const Vec dir = cover.directions()[nu];
    double base_angle = std::atan2(dir[1], dir[0]);
    const double half_width = 2.5 * std::exp2(-0.5 * j);

    double worst = 0.0;
    const double radii[] = {0.6, 1.0, 1.7};
    const int angular_samples = 21;
    for (double rf : radii) {
        double r = rf * std::exp2(double(j));
        for (int a = 0; a < angular_samples; ++a) {
            double theta = n == 2 ? base_angle + half_width * (2.0 * a / (angular_samples - 1) - 1.0)
                                  : 0.0;
            Vec xi = n == 2 ? Vec{r * std::cos(theta), r * std::sin(theta)}
                            : Vec{dir[0] * r, 0.0};
            // step well below the angular variation scale |xi| 2^{-j/2}
            double delta = 1e-3 * r * std::exp2(-0.5 * j);
            double d = 0.0;
            auto shifted = [&](double s0, double s1) {
                return chi(Vec{xi[0] + s0, xi[1] + s1});
            };
            if (total == 0) {
                d = chi(xi);
            } else if (total == 1) {
                int axis = alpha[0] == 1 ? 0 : 1;
                d = (shifted(axis == 0 ? delta : 0, axis == 1 ? delta : 0) -
                     shifted(axis == 0 ? -delta : 0, axis == 1 ? -delta : 0)) /
                    (2 * delta);
            } else if (alpha[0] == 1 && alpha[1] == 1) {
                d = (shifted(delta, delta) - shifted(delta, -delta) - shifted(-delta, delta) +
                     shifted(-delta, -delta)) /
                    (4 * delta * delta);
            } else {
                int axis = alpha[0] == 2 ? 0 : 1;
                double hi = shifted(axis == 0 ? delta : 0, axis == 1 ? delta : 0);
                double lo = shifted(axis == 0 ? -delta : 0, axis == 1 ? -delta : 0);
                d = (hi - 2 * chi(xi) + lo) / (delta * delta);
            }
            worst = std::max(worst, std::pow(r, total) * std::exp2(-0.5 * j * total) * std::abs(d));
        }
    }
    return worst;
}

}  // namespace fiolab

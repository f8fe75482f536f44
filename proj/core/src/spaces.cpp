#include "fiolab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fiolab {

namespace {
bool is_inf(double v) { return std::isinf(v); }
}  // namespace

SpaceParams SpaceParams::make(SpaceKind kind, double s, double p, double q) {
    if (!(p > 0.0)) throw ParameterError("SpaceParams: p must be positive (inf allowed)");
    if (!(q > 0.0)) throw ParameterError("SpaceParams: q must be positive (inf allowed)");
    if (kind == SpaceKind::TriebelLizorkin && is_inf(p) && q != 2.0)
        throw ParameterError("SpaceParams: F-type spaces with p = inf accept only q = 2");
    return SpaceParams{kind, s, p, q};
}

bool SpaceParams::p_infinite() const { return is_inf(p); }
bool SpaceParams::q_infinite() const { return is_inf(q); }

double besov_norm(const GridFunction& f, const SpaceParams& params,
                  const DyadicCutoffFamily& family) {
    if (params.kind != SpaceKind::Besov) throw ParameterError("besov_norm: kind must be Besov");
    const int J = family.max_level();
    if (params.q_infinite()) {
        double best = 0.0;
        for (int j = 0; j <= J; ++j) {
            double term =
                std::exp2(j * params.s) * lp_quasinorm(band_project(f, j, family), params.p);
            best = std::max(best, term);
        }
        return best;
    }
    double acc = 0.0;
    for (int j = 0; j <= J; ++j) {
        double band = lp_quasinorm(band_project(f, j, family), params.p);
        acc += std::pow(std::exp2(j * params.s) * band, params.q);
    }
    return std::pow(acc, 1.0 / params.q);
}

double triebel_norm(const GridFunction& f, const SpaceParams& params,
                    const DyadicCutoffFamily& family) {
    if (params.kind != SpaceKind::TriebelLizorkin)
        throw ParameterError("triebel_norm: kind must be TriebelLizorkin");
    if (params.p_infinite() && params.q != 2.0)
        throw ParameterError("triebel_norm: p = inf requires q = 2");
    const int J = family.max_level();
    const std::size_t total = f.spec.size();

    std::vector<std::vector<cd>> bands(J + 1);
    for (int j = 0; j <= J; ++j) bands[j] = band_project(f, j, family).values;

    GridFunction stacked(f.spec);
    parallel_for(total, [&](std::size_t b, std::size_t e) {
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

double space_norm(const GridFunction& f, const SpaceParams& params,
                  const DyadicCutoffFamily& family) {
    return params.kind == SpaceKind::Besov ? besov_norm(f, params, family)
                                           : triebel_norm(f, params, family);
}

GridFunction bessel_lift(const GridFunction& f, double s_prime) {
    Spectrum F = forward_transform(f);
    const GridSpec& spec = f.spec;
    parallel_for(spec.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            Vec xi = spec.frequency(i);
            double jap = 1.0 + xi[0] * xi[0] + xi[1] * xi[1];
            F.coefficients[i] *= std::pow(jap, 0.5 * s_prime);
        }
    });
    return inverse_transform(F);
}

// ---------------------------------------------------------------------------
// Atoms.
// ---------------------------------------------------------------------------

namespace {

// Multi-indices |alpha| <= M in n variables.
std::vector<std::array<int, 2>> multi_indices(int n, int M) {
    std::vector<std::array<int, 2>> out;
    for (int a0 = 0; a0 <= M; ++a0) {
        if (n == 1) {
            out.push_back({a0, 0});
        } else {
            for (int a1 = 0; a0 + a1 <= M; ++a1) out.push_back({a0, a1});
        }
    }
    return out;
}

double mono(const Vec& u, const std::array<int, 2>& alpha) {
    double v = 1.0;
    for (int i = 0; i < alpha[0]; ++i) v *= u[0];
    for (int i = 0; i < alpha[1]; ++i) v *= u[1];
    return v;
}

// Solve the small dense system G c = m by Gaussian elimination with partial
// pivoting; the basis is tiny (dimension <= 6 for the p we use).
std::vector<double> solve_dense(std::vector<std::vector<double>> G, std::vector<double> m) {
    const std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(G[r][col]) > std::abs(G[piv][col])) piv = r;
        std::swap(G[col], G[piv]);
        std::swap(m[col], m[piv]);
        double d = G[col][col];
        if (std::abs(d) < 1e-300) throw EvaluationError("atom moment system is singular");
        for (std::size_t r = col + 1; r < n; ++r) {
            double factor = G[r][col] / d;
            for (std::size_t c = col; c < n; ++c) G[r][c] -= factor * G[col][c];
            m[r] -= factor * m[col];
        }
    }
    std::vector<double> c(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double acc = m[r];
        for (std::size_t cidx = r + 1; cidx < n; ++cidx) acc -= G[r][cidx] * c[cidx];
        c[r] = acc / G[r][r];
    }
    return c;
}

}  // namespace

Atom make_atom(const GridSpec& spec, Vec x0, double r, double p, std::uint64_t seed) {
    if (!(r > 0.0)) throw ParameterError("make_atom: radius must be positive");
    if (!(p > 0.0 && p <= 1.0)) throw ParameterError("make_atom: exponent must be in (0, 1]");
    for (int axis = 0; axis < spec.n; ++axis)
        if (std::abs(x0[axis]) + 2.0 * r > spec.L / 2.0)
            throw ParameterError("make_atom: ball B(x0, r) does not fit with margin r");

    const int n = spec.n;
    const int M = static_cast<int>(std::floor(n * std::max(0.0, 1.0 / p - 1.0)));
    const std::size_t total = spec.size();

    BumpProfile prof = BumpProfile::mollifier();
    std::vector<double> window(total, 0.0);
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < total; ++i) {
        Vec x = spec.point(i);
        double d = std::hypot(x[0] - x0[0], n == 2 ? x[1] - x0[1] : 0.0);
        double w = prof(2.0 * d / r);
        if (w > 0.0) {
            window[i] = w;
            support.push_back(i);
        }
    }
    if (support.empty()) throw ParameterError("make_atom: ball is below grid resolution");

    // Pseudorandom smooth content: low-degree polynomial in (x - x0)/r under
    // the window, with coefficients from the seeded generator.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const auto content_basis = multi_indices(n, 3);
    std::vector<double> g(content_basis.size());
    for (auto& c : g) c = coef(rng);

    GridFunction a(spec);
    for (std::size_t i : support) {
        Vec x = spec.point(i);
        Vec u{(x[0] - x0[0]) / r, n == 2 ? (x[1] - x0[1]) / r : 0.0};
        double val = 0.0;
        for (std::size_t t = 0; t < content_basis.size(); ++t)
            val += g[t] * mono(u, content_basis[t]);
        a.values[i] = val * window[i];
    }

    if (r <= 1.0) {
        const auto alphas = multi_indices(n, M);
        const double hn = std::pow(spec.h(), n);
        // Two projection sweeps drive the residual moments to roundoff.
        for (int sweep = 0; sweep < 2; ++sweep) {
            std::vector<std::vector<double>> G(alphas.size(),
                                               std::vector<double>(alphas.size(), 0.0));
            std::vector<double> moments(alphas.size(), 0.0);
            for (std::size_t i : support) {
                Vec x = spec.point(i);
                Vec u{(x[0] - x0[0]) / r, n == 2 ? (x[1] - x0[1]) / r : 0.0};
                for (std::size_t row = 0; row < alphas.size(); ++row) {
                    double xa = mono(x, alphas[row]);
                    moments[row] += hn * xa * a.values[i].real();
                    for (std::size_t col = 0; col < alphas.size(); ++col)
                        G[row][col] += hn * xa * mono(u, alphas[col]) * window[i];
                }
            }
            std::vector<double> c = solve_dense(G, moments);
            for (std::size_t i : support) {
                Vec x = spec.point(i);
                Vec u{(x[0] - x0[0]) / r, n == 2 ? (x[1] - x0[1]) / r : 0.0};
                double corr = 0.0;
                for (std::size_t col = 0; col < alphas.size(); ++col)
                    corr += c[col] * mono(u, alphas[col]);
                a.values[i] -= corr * window[i];
            }
        }
    }

    // Rescale so sup |a| meets (with equality) the size condition; scaling
    // leaves the vanished moments at zero.
    double sup = 0.0;
    for (std::size_t i : support) sup = std::max(sup, std::abs(a.values[i]));
    if (sup == 0.0) throw EvaluationError("make_atom: degenerate zero draw");
    double ball_measure = (n == 1) ? 2.0 * r : 3.141592653589793238462643383279502884 * r * r;
    double bound = std::pow(ball_measure, -1.0 / p);
    cd factor = bound / sup;
    for (std::size_t i : support) a.values[i] *= factor;

    return Atom{x0, r, p, M, std::move(a)};
}

}  // namespace fiolab

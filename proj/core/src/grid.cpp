#include "fiolab/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numeric>

#include "json.hpp"

namespace fiolab {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

// FFTW planner calls are not thread-safe; execution of distinct plans is.
std::mutex g_planner_mutex;

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }
}  // namespace

GridSpec GridSpec::make(int n, double L, int N) {
    if (n != 1 && n != 2) throw ParameterError("GridSpec: dimension must be 1 or 2");
    if (!(L > 0.0)) throw ParameterError("GridSpec: box length must be positive");
    if (!is_pow2(N) || N < 8) throw ParameterError("GridSpec: N must be a power of two >= 8");
    GridSpec s{n, L, N};
    if (s.max_level() < 1)
        throw ParameterError("GridSpec: grid too coarse, needs at least one dyadic shell (J >= 1)");
    return s;
}

int GridSpec::max_level() const {
    // Tiny relative nudge so exact powers of two are not lost to rounding.
    return static_cast<int>(std::floor(std::log2(xi_max() * (1.0 + 1e-12)))) - 1;
}

std::array<int, 2> GridSpec::axis_index(std::size_t flat) const {
    if (n == 1) return {static_cast<int>(flat), 0};
    return {static_cast<int>(flat / static_cast<std::size_t>(N)),
            static_cast<int>(flat % static_cast<std::size_t>(N))};
}

std::size_t GridSpec::flat_index(int i0, int i1) const {
    if (n == 1) return static_cast<std::size_t>(i0);
    return static_cast<std::size_t>(i0) * N + static_cast<std::size_t>(i1);
}

Vec GridSpec::point(std::size_t flat) const {
    auto ix = axis_index(flat);
    double step = h();
    Vec x{-L / 2 + ix[0] * step, 0.0};
    if (n == 2) x[1] = -L / 2 + ix[1] * step;
    return x;
}

std::array<int, 2> GridSpec::wavenumber(std::size_t flat) const {
    auto ix = axis_index(flat);
    auto fold = [this](int i) { return i < N / 2 ? i : i - N; };
    return {fold(ix[0]), n == 2 ? fold(ix[1]) : 0};
}

Vec GridSpec::frequency(std::size_t flat) const {
    auto k = wavenumber(flat);
    double unit = 2 * kPi / L;
    return {unit * k[0], unit * k[1]};
}

std::size_t GridSpec::index_of_wavenumber(int k0, int k1) const {
    auto unfold = [this](int k) {
        if (k < -N / 2 || k >= N / 2) throw ParameterError("wavenumber out of lattice range");
        return k >= 0 ? k : k + N;
    };
    return flat_index(unfold(k0), n == 2 ? unfold(k1) : 0);
}

GridFunction::GridFunction(const GridSpec& s, std::vector<cd> v) : spec(s), values(std::move(v)) {
    if (values.size() != spec.size())
        throw StructuralError("GridFunction: value count does not match N^n");
}

void GridFunction::check_finite() const {
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
            throw StructuralError("GridFunction: non-finite value at flat index " +
                                  std::to_string(i));
}

// ---------------------------------------------------------------------------
// Transforms.  The sample offset -L/2 shows up as a (-1)^{k0+k1} twiddle on
// the plain DFT; spatial scale h^n makes the forward a Riemann sum of the
// continuum transform.
// ---------------------------------------------------------------------------

namespace {

void run_fftw(const GridSpec& s, std::vector<cd>& inout, int sign) {
    fftw_complex* buf = reinterpret_cast<fftw_complex*>(inout.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_planner_mutex);
        if (s.n == 1)
            plan = fftw_plan_dft_1d(s.N, buf, buf, sign, FFTW_ESTIMATE);
        else
            plan = fftw_plan_dft_2d(s.N, s.N, buf, buf, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(g_planner_mutex);
        fftw_destroy_plan(plan);
    }
}

inline double parity_sign(const std::array<int, 2>& k) {
    return ((k[0] + k[1]) & 1) ? -1.0 : 1.0;
}

}  // namespace

Spectrum forward_transform(const GridFunction& f) {
    if (f.values.size() != f.spec.size())
        throw StructuralError("forward_transform: value count does not match spec");
    Spectrum F(f.spec);
    F.coefficients = f.values;
    run_fftw(f.spec, F.coefficients, FFTW_FORWARD);
    const double hn = std::pow(f.spec.h(), f.spec.n);
    const std::size_t total = f.spec.size();
    parallel_for(total, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            F.coefficients[i] *= hn * parity_sign(f.spec.wavenumber(i));
    });
    return F;
}

GridFunction inverse_transform(const Spectrum& F) {
    if (F.coefficients.size() != F.spec.size())
        throw StructuralError("inverse_transform: coefficient count does not match spec");
    GridFunction f(F.spec);
    f.values = F.coefficients;
    const double scale = 1.0 / std::pow(F.spec.L, F.spec.n);
    const std::size_t total = F.spec.size();
    parallel_for(total, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            f.values[i] *= scale * parity_sign(F.spec.wavenumber(i));
    });
    run_fftw(F.spec, f.values, FFTW_BACKWARD);
    return f;
}

double lp_quasinorm(const GridFunction& f, double p) {
    if (!(p > 0.0)) throw ParameterError("lp_quasinorm: p must be positive");
    const std::size_t total = f.values.size();
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t i = 0; i < total; ++i) m = std::max(m, std::abs(f.values[i]));
        return m;
    }
    std::vector<double> powed(total);
    parallel_for(total, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) powed[i] = std::pow(std::abs(f.values[i]), p);
    });
    double sum = 0.0;  // serial reduction in index order: bit-reproducible
    for (std::size_t i = 0; i < total; ++i) sum += powed[i];
    const double hn = std::pow(f.spec.h(), f.spec.n);
    return std::pow(hn * sum, 1.0 / p);
}

GridFunction pointwise_combine(const GridFunction& f, const GridFunction& g, CombineOp op,
                               cd alpha, cd beta) {
    if (!(f.spec == g.spec)) throw StructuralError("pointwise_combine: grid specs differ");
    GridFunction out(f.spec);
    const std::size_t total = f.values.size();
    parallel_for(total, [&](std::size_t b, std::size_t e) {
        switch (op) {
            case CombineOp::Add:
                for (std::size_t i = b; i < e; ++i)
                    out.values[i] = alpha * f.values[i] + beta * g.values[i];
                break;
            case CombineOp::Sub:
                for (std::size_t i = b; i < e; ++i)
                    out.values[i] = alpha * f.values[i] - beta * g.values[i];
                break;
            case CombineOp::Mul:
                for (std::size_t i = b; i < e; ++i)
                    out.values[i] = (alpha * f.values[i]) * (beta * g.values[i]);
                break;
        }
    });
    return out;
}

GridFunction scale(const GridFunction& f, cd alpha) {
    GridFunction out = f;
    for (auto& v : out.values) v *= alpha;
    return out;
}

// ---------------------------------------------------------------------------
// Container I/O.
// ---------------------------------------------------------------------------

void save_grid_function(const GridFunction& f, const std::string& path) {
    std::ofstream bin(path, std::ios::binary | std::ios::trunc);
    if (!bin.is_open()) throw StructuralError("cannot open for writing: " + path);
    static_assert(sizeof(cd) == 16, "complex<double> layout");
    bin.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(f.values.size() * sizeof(cd)));
    nlohmann::json meta{{"n", f.spec.n}, {"L", f.spec.L}, {"N", f.spec.N}};
    std::ofstream side(path + ".json", std::ios::trunc);
    side << meta.dump(2) << '\n';
}

GridFunction load_grid_function(const std::string& path) {
    std::ifstream side(path + ".json");
    if (!side.is_open()) throw StructuralError("missing sidecar metadata: " + path + ".json");
    nlohmann::json meta = nlohmann::json::parse(side);
    GridSpec spec = GridSpec::make(meta.at("n").get<int>(), meta.at("L").get<double>(),
                                   meta.at("N").get<int>());
    GridFunction f(spec);
    std::ifstream bin(path, std::ios::binary);
    if (!bin.is_open()) throw StructuralError("cannot open for reading: " + path);
    bin.read(reinterpret_cast<char*>(f.values.data()),
             static_cast<std::streamsize>(f.values.size() * sizeof(cd)));
    if (static_cast<std::size_t>(bin.gcount()) != f.values.size() * sizeof(cd))
        throw StructuralError("container shorter than N^n samples: " + path);
    return f;
}

void save_grid_function_csv(const GridFunction& f, const std::string& path) {
    if (f.spec.size() > 1u << 16)
        throw ParameterError("CSV fallback is for small grids (N^n <= 65536)");
    CsvWriter csv(path);
    csv.header({"x1", "x2", "re", "im"});
    for (std::size_t i = 0; i < f.spec.size(); ++i) {
        Vec x = f.spec.point(i);
        csv.row({format_double(x[0]), format_double(x[1]), format_double(f.values[i].real()),
                 format_double(f.values[i].imag())});
    }
}

std::vector<std::size_t> quadrature_order(const GridSpec& spec) {
    std::vector<std::size_t> order(spec.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::sort(order.begin(), order.end(), [&spec](std::size_t a, std::size_t b) {
        auto ka = spec.wavenumber(a), kb = spec.wavenumber(b);
        long ra = long(ka[0]) * ka[0] + long(ka[1]) * ka[1];
        long rb = long(kb[0]) * kb[0] + long(kb[1]) * kb[1];
        if (ra != rb) return ra < rb;
        if (ka[0] != kb[0]) return ka[0] < kb[0];
        return ka[1] < kb[1];
    });
    return order;
}

}  // namespace fiolab

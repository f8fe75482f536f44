// Periodic grid on the torus [-L/2, L/2)^n (n = 1 or 2), complex samples,
// discrete Fourier transform pair normalized so that
//   F(xi_k) = h^n sum_x f(x) e^{-i x.xi_k},      xi_k = 2 pi k / L,
//   f(x)    = L^{-n} sum_k F(xi_k) e^{i x.xi_k},
// i.e. the inverse carries the measure dxi/(2 pi)^n on the frequency lattice.
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "fiolab/util.hpp"

namespace fiolab {

using cd = std::complex<double>;
using Vec = std::array<double, 2>;  // padded with 0 when n = 1

struct GridSpec {
    int n = 1;       // dimension, 1 or 2
    double L = 1.0;  // box side
    int N = 8;       // samples per axis, power of two

    static GridSpec make(int n, double L, int N);

    double h() const { return L / N; }
    double xi_max() const { return 3.141592653589793238462643383279502884 * N / L; }
    // Highest fully resolvable dyadic level: floor(log2(xi_max)) - 1.  The
    // derate by one keeps supp psi_J inside the lattice ball.
    int max_level() const;
    std::size_t size() const { return n == 1 ? std::size_t(N) : std::size_t(N) * N; }

    // Row-major flat index <-> per-axis indices.
    std::array<int, 2> axis_index(std::size_t flat) const;
    std::size_t flat_index(int i0, int i1 = 0) const;

    Vec point(std::size_t flat) const;                 // x in [-L/2, L/2)^n
    std::array<int, 2> wavenumber(std::size_t flat) const;  // k in [-N/2, N/2)^n
    Vec frequency(std::size_t flat) const;             // 2 pi k / L
    std::size_t index_of_wavenumber(int k0, int k1 = 0) const;

    bool operator==(const GridSpec&) const = default;
};

struct GridFunction {
    GridSpec spec;
    std::vector<cd> values;

    GridFunction() = default;
    explicit GridFunction(const GridSpec& s) : spec(s), values(s.size(), cd(0.0, 0.0)) {}
    GridFunction(const GridSpec& s, std::vector<cd> v);

    cd& operator[](std::size_t i) { return values[i]; }
    const cd& operator[](std::size_t i) const { return values[i]; }

    void check_finite() const;
};

// Frequency-lattice coefficients, stored in the same row-major layout as the
// sample lattice (axis index i maps to wavenumber i for i < N/2, i - N else).
struct Spectrum {
    GridSpec spec;
    std::vector<cd> coefficients;

    Spectrum() = default;
    explicit Spectrum(const GridSpec& s) : spec(s), coefficients(s.size(), cd(0.0, 0.0)) {}

    cd& operator[](std::size_t i) { return coefficients[i]; }
    const cd& operator[](std::size_t i) const { return coefficients[i]; }
};

Spectrum forward_transform(const GridFunction& f);
GridFunction inverse_transform(const Spectrum& F);

// (h^n sum |f|^p)^{1/p} for p < inf, max |f| for p = inf.  0 < p <= inf.
double lp_quasinorm(const GridFunction& f, double p);

enum class CombineOp { Add, Sub, Mul };

// alpha*f (op) beta*g elementwise; Mul multiplies the scaled factors.
GridFunction pointwise_combine(const GridFunction& f, const GridFunction& g, CombineOp op,
                               cd alpha = 1.0, cd beta = 1.0);
GridFunction scale(const GridFunction& f, cd alpha);

// Flat binary container (little-endian f64 re/im pairs, row-major) with a JSON
// sidecar <path>.json holding {n, L, N}; CSV fallback for small grids.
void save_grid_function(const GridFunction& f, const std::string& path);
GridFunction load_grid_function(const std::string& path);
void save_grid_function_csv(const GridFunction& f, const std::string& path);

// Deterministic quadrature order: flat indices sorted by |k|^2, then (k0,k1).
std::vector<std::size_t> quadrature_order(const GridSpec& spec);

}  // namespace fiolab

#include "fiolab/wave.hpp"

#include <cmath>

#include "fiolab/fio.hpp"

namespace fiolab {

CauchyData::CauchyData(GridFunction position, GridFunction velocity)
    : f0(std::move(position)), f1(std::move(velocity)) {
    if (!(f0.spec == f1.spec)) throw StructuralError("CauchyData: specs of f0 and f1 differ");
    f0.check_finite();
    f1.check_finite();
}

GridFunction half_wave(const GridFunction& f, double t, int sign) {
    const GridSpec& spec = f.spec;
    std::vector<cd> sym(spec.size());
    double s = sign >= 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        Vec xi = spec.frequency(i);
        sym[i] = std::polar(1.0, s * t * std::hypot(xi[0], xi[1]));
    }
    return apply_multiplier(sym, f);
}

namespace {

std::pair<Spectrum, Spectrum> wave_spectra(const CauchyData& data, double t) {
    Spectrum F0 = forward_transform(data.f0);
    Spectrum F1 = forward_transform(data.f1);
    const GridSpec& spec = data.spec();
    Spectrum U(spec), Ut(spec);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        Vec xi = spec.frequency(i);
        double r = std::hypot(xi[0], xi[1]);
        double c = std::cos(t * r);
        double sinc = (r == 0.0) ? t : std::sin(t * r) / r;  // removable singularity
        U.coefficients[i] = c * F0.coefficients[i] + sinc * F1.coefficients[i];
        Ut.coefficients[i] = -r * std::sin(t * r) * F0.coefficients[i] + c * F1.coefficients[i];
    }
    return {std::move(U), std::move(Ut)};
}

}  // namespace

GridFunction solve_wave(const CauchyData& data, double t) {
    return inverse_transform(wave_spectra(data, t).first);
}

GridFunction wave_time_derivative(const CauchyData& data, double t) {
    return inverse_transform(wave_spectra(data, t).second);
}

double wave_energy(const CauchyData& data, double t) {
    auto [U, Ut] = wave_spectra(data, t);
    const GridSpec& spec = data.spec();
    double acc = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        Vec xi = spec.frequency(i);
        double r2 = xi[0] * xi[0] + xi[1] * xi[1];
        acc += r2 * std::norm(U.coefficients[i]) + std::norm(Ut.coefficients[i]);
    }
    return acc / std::pow(spec.L, spec.n);
}

double wave_data_shift(double p, int n) {
    if (!(p > 0.0)) throw ParameterError("wave_data_shift: p must be positive");
    double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    return (n - 1) * std::abs(inv_p - 0.5);
}

bool wave_p_in_claimed_range(double p, int n) {
    return p > double(n) / double(n + 1);
}

double besov_estimate_ratio(const CauchyData& data, double t, const SpaceParams& params,
                            const DyadicCutoffFamily& family) {
    double nu = wave_data_shift(params.p, data.spec().n);
    SpaceParams top = SpaceParams::make(params.kind, params.s + nu, params.p, params.q);
    SpaceParams vel = SpaceParams::make(params.kind, params.s + nu - 1.0, params.p, params.q);
    GridFunction u = solve_wave(data, t);
    double num = space_norm(u, params, family);
    double den = space_norm(data.f0, top, family) + space_norm(data.f1, vel, family);
    if (den == 0.0) throw ParameterError("besov_estimate_ratio: zero Cauchy data");
    return num / den;
}

}  // namespace fiolab

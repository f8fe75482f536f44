#include "fiolab/littlewood.hpp"

#include <cmath>

namespace fiolab {

DyadicCutoffFamily::DyadicCutoffFamily(const GridSpec& spec, BumpProfile profile)
    : spec_(spec), profile_(profile), J_(spec.max_level()) {
    if (J_ < 1) throw ParameterError("build_cutoffs: grid too coarse (J < 1)");
    const std::size_t total = spec_.size();
    psi_.assign(J_ + 1, std::vector<double>(total));
    wide_.assign(J_ + 1, std::vector<double>(total));
    std::vector<double> radius(total);
    parallel_for(total, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            Vec xi = spec_.frequency(i);
            radius[i] = std::hypot(xi[0], xi[1]);
        }
    });
    for (int j = 0; j <= J_; ++j) {
        parallel_for(total, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                psi_[j][i] = psi_level_radial(profile_, j, radius[i]);
                wide_[j][i] = psi_wide_radial(profile_, j, radius[i]);
            }
        });
    }
}

DyadicCutoffFamily build_cutoffs(const GridSpec& spec, BumpProfile profile) {
    return DyadicCutoffFamily(spec, profile);
}

const std::vector<double>& DyadicCutoffFamily::psi(int j) const {
    if (j < 0 || j > J_) throw ParameterError("cutoff level out of range 0..J");
    return psi_[j];
}

const std::vector<double>& DyadicCutoffFamily::psi_wide(int j) const {
    if (j < 0 || j > J_) throw ParameterError("cutoff level out of range 0..J");
    return wide_[j];
}

void DyadicCutoffFamily::export_csv(const std::string& path) const {
    CsvWriter csv(path);
    std::vector<std::string> head{"abs_xi"};
    for (int j = 0; j <= J_; ++j) head.push_back("psi_" + std::to_string(j));
    csv.header(head);
    for (std::size_t i = 0; i < spec_.size(); ++i) {
        Vec xi = spec_.frequency(i);
        std::vector<std::string> cells{format_double(std::hypot(xi[0], xi[1]))};
        for (int j = 0; j <= J_; ++j) cells.push_back(format_double(psi_[j][i]));
        csv.row(cells);
    }
}

namespace {

GridFunction apply_real_multiplier(const GridFunction& f, const std::vector<double>& m) {
    Spectrum F = forward_transform(f);
    const std::size_t total = F.coefficients.size();
    parallel_for(total, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) F.coefficients[i] *= m[i];
    });
    return inverse_transform(F);
}

}  // namespace

GridFunction band_project(const GridFunction& f, int j, const DyadicCutoffFamily& family) {
    if (!(f.spec == family.spec())) throw StructuralError("band_project: spec mismatch");
    return apply_real_multiplier(f, family.psi(j));
}

GridFunction ball_project(const GridFunction& f, const DyadicCutoffFamily& family, BallMode mode) {
    if (!(f.spec == family.spec())) throw StructuralError("ball_project: spec mismatch");
    const GridSpec& spec = f.spec;
    const BumpProfile& prof = family.profile();
    std::vector<double> m(spec.size());
    parallel_for(spec.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            Vec xi = spec.frequency(i);
            double r = std::hypot(xi[0], xi[1]);
            switch (mode) {
                case BallMode::Psi0: m[i] = prof(r); break;
                case BallMode::Psi0Half: m[i] = prof(2.0 * r); break;
                case BallMode::OneMinusPsi0Half: m[i] = 1.0 - prof(2.0 * r); break;
            }
        }
    });
    return apply_real_multiplier(f, m);
}

}  // namespace fiolab

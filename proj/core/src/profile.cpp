#include "fiolab/profile.hpp"

#include <cmath>
#include <mutex>

namespace fiolab {

namespace {

constexpr int kPanels = 1 << 16;  // Simpson panels on [-1, 1]

double rho(double v) {
    double w = 1.0 - v * v;
    return w > 0.0 ? std::exp(-1.0 / w) : 0.0;
}

// Cumulative integral of rho over [-1, u] at the panel nodes, normalized so
// the last entry is 1.  Simpson per panel; rho is smooth, so the quadrature
// error is far below the interpolation budget.
std::shared_ptr<const std::vector<double>> build_table() {
    auto table = std::make_shared<std::vector<double>>(kPanels + 1, 0.0);
    const double step = 2.0 / kPanels;
    double acc = 0.0;
    for (int i = 0; i < kPanels; ++i) {
        double a = -1.0 + i * step;
        double b = a + step;
        acc += (step / 6.0) * (rho(a) + 4.0 * rho(0.5 * (a + b)) + rho(b));
        (*table)[i + 1] = acc;
    }
    double total = acc;
    for (auto& v : *table) v /= total;
    return table;
}

std::shared_ptr<const std::vector<double>> shared_table() {
    static std::once_flag once;
    static std::shared_ptr<const std::vector<double>> table;
    std::call_once(once, [] { table = build_table(); });
    return table;
}

}  // namespace

BumpProfile::BumpProfile(Kind kind) : kind_(kind) {
    if (kind_ == Kind::Mollifier) table_ = shared_table();
}

BumpProfile BumpProfile::mollifier() { return BumpProfile(Kind::Mollifier); }
BumpProfile BumpProfile::rational_exp() { return BumpProfile(Kind::RationalExp); }

double BumpProfile::operator()(double t) const {
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return 0.0;
    if (kind_ == Kind::RationalExp) {
        double a = std::exp(-1.0 / (2.0 - t));
        double b = std::exp(-1.0 / (t - 1.0));
        return a / (a + b);
    }
    // Mollifier table: sigma(t) = 1 - C(u), u = 2t - 3 in (-1, 1).
    const std::vector<double>& c = *table_;
    double u = 2.0 * t - 3.0;
    double pos = (u + 1.0) * (kPanels / 2.0);
    int i = static_cast<int>(pos);
    if (i >= kPanels) i = kPanels - 1;
    double step = 2.0 / kPanels;
    double u0 = -1.0 + i * step;
    double s = (u - u0) / step;
    // Hermite cubic with exact slopes C'(u) = rho(u)/total; total is folded
    // into the normalized table, so recompute the local normalizer.
    double d0 = rho(u0) * step, d1 = rho(u0 + step) * step;
    // The table is normalized by the full integral; scale slopes to match.
    static const double total = [] {
        double acc = 0.0;
        const double st = 2.0 / kPanels;
        for (int j = 0; j < kPanels; ++j) {
            double a = -1.0 + j * st;
            acc += (st / 6.0) * (rho(a) + 4.0 * rho(a + st / 2) + rho(a + st));
        }
        return acc;
    }();
    d0 /= total;
    d1 /= total;
    double c0 = c[i], c1 = c[i + 1];
    double s2 = s * s, s3 = s2 * s;
    double cu = (2 * s3 - 3 * s2 + 1) * c0 + (s3 - 2 * s2 + s) * d0 + (-2 * s3 + 3 * s2) * c1 +
                (s3 - s2) * d1;
    double val = 1.0 - cu;
    if (val < 0.0) val = 0.0;
    if (val > 1.0) val = 1.0;
    return val;
}

}  // namespace fiolab

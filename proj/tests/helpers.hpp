#pragma once

#include <random>

#include "fiolab/grid.hpp"

namespace fiolab::testing {

inline GridFunction random_function(const GridSpec& spec, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    GridFunction f(spec);
    for (auto& v : f.values) v = cd(gauss(rng), gauss(rng));
    return f;
}

inline double max_abs_diff(const GridFunction& a, const GridFunction& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    return worst;
}

inline double max_abs(const GridFunction& a) {
    double worst = 0.0;
    for (const auto& v : a.values) worst = std::max(worst, std::abs(v));
    return worst;
}

}  // namespace fiolab::testing

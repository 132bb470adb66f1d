#pragma once

// Test-only oracles, kept independent of the library's transform and
// quadrature paths.

#include <cmath>
#include <vector>

#include "santalo/grid_function.hpp"

namespace oracles {

// O(N*M) conjugate: max over every finite grid point, no hull.
inline std::vector<double> conjugate_brute(const santalo::GridFunction& f,
                                           const santalo::GridAxis& dual) {
    std::vector<double> out(dual.samples, -santalo::kPlusInfinity);
    for (std::size_t j = 0; j < dual.samples; ++j) {
        double y = dual.coord(j);
        for (std::size_t i = 0; i < f.axis().samples; ++i) {
            double v = f[i];
            if (!santalo::is_finite_value(v)) continue;
            out[j] = std::max(out[j], f.axis().coord(i) * y - v);
        }
    }
    return out;
}

// O(N*M) infimal convolution on equal-step grids.
inline std::vector<double> infconv_brute(const santalo::GridFunction& f,
                                         const santalo::GridFunction& g) {
    std::size_t n = f.axis().samples, m = g.axis().samples;
    std::vector<double> out(n + m - 1, santalo::kPlusInfinity);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            out[i + j] = std::min(out[i + j], santalo::ext_add(f[i], g[j]));
    return out;
}

// Very small trapezoid integrator for cross-checks.
inline double trapezoid(const std::vector<double>& v, double h) {
    double acc = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) acc += 0.5 * h * (v[i - 1] + v[i]);
    return acc;
}

}  // namespace oracles

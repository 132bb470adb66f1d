#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "santalo/grid_function.hpp"

namespace santalo {

/// Composite Simpson over uniformly spaced samples; an odd interval count is
/// finished with the 3/8 rule so the order stays O(step^4).
double simpson(std::span<const double> values, double step);

/// Composite Boole (5-point Newton-Cotes), O(step^6); remainder intervals are
/// handed to Simpson.
double boole(std::span<const double> values, double step);

/// Midpoint rule on a table of cell-midpoint samples over [0,1].
double midpoint_unit(std::span<const double> midpoint_values);

/// Cumulative trapezoid: out[0]=0, out[i] = integral up to node i.
std::vector<double> cumulative_trapezoid(std::span<const double> values, double step);

/// Exact integral of log(f) over one cell where f is linear from f0 to f1
/// (f0, f1 >= 0, not both zero on a cell of positive measure unless the cell
/// is degenerate).  h is the cell width.
double integral_log_linear(double f0, double f1, double h);

/// Tensor quadrature of g(value) over the full grid of an (up to 3-D)
/// function, with per-axis composite weights.  Sentinel samples contribute 0
/// when g(+inf) is defined to be 0 by the caller-supplied transform.
enum class Rule { Simpson, Boole };
double tensor_integral(const GridFunction& f, const std::function<double(double)>& g,
                       Rule rule = Rule::Simpson);

/// Per-axis composite quadrature weights for n samples (step factored in).
std::vector<double> composite_weights(std::size_t n, double step, Rule rule);

}  // namespace santalo

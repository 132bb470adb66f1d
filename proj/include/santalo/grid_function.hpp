#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace santalo {

/// Sentinel for "+infinity" samples. Arithmetic with it saturates; it is
/// never a large finite stand-in.
inline constexpr double kPlusInfinity = std::numeric_limits<double>::infinity();

inline bool is_finite_value(double v) { return v < kPlusInfinity; }

/// One uniform axis of a grid: samples at lo + i*step, i = 0..samples-1.
struct GridAxis {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t samples = 0;

    double step() const { return (hi - lo) / static_cast<double>(samples - 1); }
    double coord(std::size_t i) const { return lo + static_cast<double>(i) * step(); }
    void validate() const;
};

/// An extended-real-valued function sampled on a uniform box grid of
/// dimension 1..3.  Values are finite doubles or the +infinity sentinel.
/// Immutable after construction.
class GridFunction {
  public:
    GridFunction(GridAxis axis, std::vector<double> values);
    GridFunction(std::vector<GridAxis> axes, std::vector<double> values);

    std::size_t dim() const { return axes_.size(); }
    const GridAxis& axis(std::size_t d = 0) const { return axes_[d]; }
    const std::vector<GridAxis>& axes() const { return axes_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }

    double lo() const { return axes_[0].lo; }
    double hi() const { return axes_[0].hi; }
    double step() const { return axes_[0].step(); }

    double operator[](std::size_t i) const { return values_[i]; }

    // Row-major flattening, last axis fastest.
    std::size_t flat_index(const std::vector<std::size_t>& idx) const;

    /// Index range [first, last] of finite samples (1D only).
    std::size_t window_first() const;
    std::size_t window_last() const;
    bool window_touches_lo() const { return window_first() == 0; }
    bool window_touches_hi() const { return window_last() + 1 == axes_[0].samples; }
    double window_lo() const { return axes_[0].coord(window_first()); }
    double window_hi() const { return axes_[0].coord(window_last()); }

    bool has_finite_values() const { return finite_count_ > 0; }
    std::size_t finite_count() const { return finite_count_; }

    /// Piecewise-linear interpolation (1D). x must lie inside [lo, hi].
    double value_at(double x) const;
    /// Multilinear interpolation (any dim). Point must lie inside the box.
    double value_at(const std::vector<double>& x) const;

    /// Left-difference slope of the interpolant on cell i (between nodes i
    /// and i+1); this is the left derivative at node i+1.  1D only.
    double cell_slope(std::size_t cell) const;
    /// Left derivative at position x: slope of the cell whose right half
    /// contains x (cell containing x, left cell at a node).
    double left_slope_at(double x) const;

    /// Slope range of the finite window: one-sided differences at its ends.
    /// 1D only; window must have at least two points.
    double min_window_slope() const;
    double max_window_slope() const;

    std::string to_csv() const;
    static GridFunction from_csv(const std::string& text);
    static GridFunction from_csv_stream(std::istream& in);

  private:
    void validate() const;

    std::vector<GridAxis> axes_;
    std::vector<double> values_;
    std::size_t finite_count_ = 0;
    std::size_t win_first_ = 0, win_last_ = 0;  // 1D finite window
};

/// Saturating addition: inf + a = inf.
inline double ext_add(double a, double b) {
    if (!is_finite_value(a) || !is_finite_value(b)) return kPlusInfinity;
    return a + b;
}

}  // namespace santalo

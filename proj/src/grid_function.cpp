#include "santalo/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace santalo {

void GridAxis::validate() const {
    if (!(hi > lo)) throw std::invalid_argument("grid axis requires hi > lo");
    if (samples < 3) throw std::invalid_argument("grid axis requires at least 3 samples");
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("grid axis endpoints must be finite");
}

GridFunction::GridFunction(GridAxis axis, std::vector<double> values)
    : GridFunction(std::vector<GridAxis>{axis}, std::move(values)) {}

GridFunction::GridFunction(std::vector<GridAxis> axes, std::vector<double> values)
    : axes_(std::move(axes)), values_(std::move(values)) {
    validate();
}

void GridFunction::validate() const {
    if (axes_.empty() || axes_.size() > 3)
        throw std::invalid_argument("grid dimension must be 1, 2 or 3");
    std::size_t total = 1;
    for (const auto& a : axes_) {
        a.validate();
        total *= a.samples;
    }
    if (values_.size() != total)
        throw std::invalid_argument("value count does not match grid size");

    auto* self = const_cast<GridFunction*>(this);
    self->finite_count_ = 0;
    for (double v : values_) {
        if (std::isnan(v)) throw std::invalid_argument("NaN value in grid function");
        if (v == -std::numeric_limits<double>::infinity())
            throw std::invalid_argument("-inf value in grid function");
        if (is_finite_value(v)) ++self->finite_count_;
    }
    if (finite_count_ == 0)
        throw std::invalid_argument("degenerate function: no finite values");

    if (axes_.size() == 1) {
        // The finite window must be one contiguous run of samples.
        std::size_t first = values_.size(), last = 0;
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (is_finite_value(values_[i])) {
                first = std::min(first, i);
                last = i;
            }
        }
        for (std::size_t i = first; i <= last; ++i)
            if (!is_finite_value(values_[i]))
                throw std::invalid_argument("finite window is not contiguous");
        self->win_first_ = first;
        self->win_last_ = last;
    }
}

std::size_t GridFunction::flat_index(const std::vector<std::size_t>& idx) const {
    std::size_t flat = 0;
    for (std::size_t d = 0; d < axes_.size(); ++d) flat = flat * axes_[d].samples + idx[d];
    return flat;
}

std::size_t GridFunction::window_first() const {
    if (dim() != 1) throw std::logic_error("window_first is 1D only");
    return win_first_;
}

std::size_t GridFunction::window_last() const {
    if (dim() != 1) throw std::logic_error("window_last is 1D only");
    return win_last_;
}

double GridFunction::value_at(double x) const {
    if (dim() != 1) throw std::logic_error("scalar value_at is 1D only");
    const GridAxis& a = axes_[0];
    const double eps = 1e-9 * a.step();
    if (x < a.lo - eps || x > a.hi + eps)
        throw std::invalid_argument("evaluation point outside grid");
    x = std::clamp(x, a.lo, a.hi);
    double pos = (x - a.lo) / a.step();
    std::size_t i = std::min(static_cast<std::size_t>(pos), a.samples - 2);
    double w = pos - static_cast<double>(i);
    double v0 = values_[i], v1 = values_[i + 1];
    if (!is_finite_value(v0) || !is_finite_value(v1)) {
        // At the edge of the finite window, snap to the nearer node.
        return w < 0.5 ? v0 : v1;
    }
    return v0 + w * (v1 - v0);
}

double GridFunction::value_at(const std::vector<double>& x) const {
    if (x.size() != dim()) throw std::invalid_argument("evaluation point dimension mismatch");
    if (dim() == 1) return value_at(x[0]);
    std::vector<std::size_t> base(dim());
    std::vector<double> frac(dim());
    for (std::size_t d = 0; d < dim(); ++d) {
        const GridAxis& a = axes_[d];
        const double eps = 1e-9 * a.step();
        if (x[d] < a.lo - eps || x[d] > a.hi + eps)
            throw std::invalid_argument("evaluation point outside grid");
        double pos = (std::clamp(x[d], a.lo, a.hi) - a.lo) / a.step();
        base[d] = std::min(static_cast<std::size_t>(pos), a.samples - 2);
        frac[d] = pos - static_cast<double>(base[d]);
    }
    double acc = 0.0;
    std::size_t corners = std::size_t{1} << dim();
    std::vector<std::size_t> idx(dim());
    for (std::size_t c = 0; c < corners; ++c) {
        double w = 1.0;
        for (std::size_t d = 0; d < dim(); ++d) {
            bool upper = (c >> d) & 1u;
            idx[d] = base[d] + (upper ? 1 : 0);
            w *= upper ? frac[d] : 1.0 - frac[d];
        }
        if (w == 0.0) continue;
        double v = values_[flat_index(idx)];
        if (!is_finite_value(v)) return kPlusInfinity;
        acc += w * v;
    }
    return acc;
}

double GridFunction::cell_slope(std::size_t cell) const {
    if (dim() != 1) throw std::logic_error("cell_slope is 1D only");
    double v0 = values_[cell], v1 = values_[cell + 1];
    if (!is_finite_value(v0) || !is_finite_value(v1)) return kPlusInfinity;
    return (v1 - v0) / axes_[0].step();
}

double GridFunction::left_slope_at(double x) const {
    const GridAxis& a = axes_[0];
    double pos = (std::clamp(x, a.lo, a.hi) - a.lo) / a.step();
    // Left derivative: at an interior node take the cell to its left.
    std::size_t cell;
    double ipart;
    double frac = std::modf(pos, &ipart);
    cell = static_cast<std::size_t>(ipart);
    if (frac < 1e-12 && cell > 0) --cell;
    cell = std::min(cell, a.samples - 2);
    // Inside the finite window the adjoining cells are finite; at the window
    // boundary fall back to the nearest finite cell.
    if (!is_finite_value(values_[cell]) && cell + 1 <= win_last_) ++cell;
    if (!is_finite_value(values_[cell + 1]) && cell > win_first_) --cell;
    return cell_slope(cell);
}

double GridFunction::min_window_slope() const {
    if (win_last_ <= win_first_) throw std::invalid_argument("window too small for slopes");
    return cell_slope(win_first_);
}

double GridFunction::max_window_slope() const {
    if (win_last_ <= win_first_) throw std::invalid_argument("window too small for slopes");
    return cell_slope(win_last_ - 1);
}

namespace {

void format_value(std::string& out, double v) {
    char buf[40];
    if (!is_finite_value(v)) {
        out += "inf";
    } else {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out += buf;
    }
}

double parse_value(const std::string& tok) {
    if (tok == "inf" || tok == "+inf") return kPlusInfinity;
    return std::strtod(tok.c_str(), nullptr);
}

}  // namespace

std::string GridFunction::to_csv() const {
    std::string out;
    if (dim() == 1) {
        out = "x,value\n";
        for (std::size_t i = 0; i < values_.size(); ++i) {
            format_value(out, axes_[0].coord(i));
            out += ',';
            format_value(out, values_[i]);
            out += '\n';
        }
        return out;
    }
    for (std::size_t d = 0; d < dim(); ++d) out += "x" + std::to_string(d + 1) + ",";
    out += "value\n";
    std::vector<std::size_t> idx(dim(), 0);
    for (std::size_t flat = 0; flat < values_.size(); ++flat) {
        std::size_t rem = flat;
        for (std::size_t d = dim(); d-- > 0;) {
            idx[d] = rem % axes_[d].samples;
            rem /= axes_[d].samples;
        }
        for (std::size_t d = 0; d < dim(); ++d) {
            format_value(out, axes_[d].coord(idx[d]));
            out += ',';
        }
        format_value(out, values_[flat]);
        out += '\n';
    }
    return out;
}

GridFunction GridFunction::from_csv(const std::string& text) {
    std::istringstream in(text);
    return from_csv_stream(in);
}

GridFunction GridFunction::from_csv_stream(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
    std::size_t ncols = 1 + static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
    if (ncols < 2 || ncols > 4) throw std::invalid_argument("unexpected CSV column count");
    std::size_t d = ncols - 1;

    std::vector<std::vector<double>> coords(d);
    std::vector<double> vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string tok;
        for (std::size_t c = 0; c < d; ++c) {
            if (!std::getline(row, tok, ',')) throw std::invalid_argument("short CSV row");
            coords[c].push_back(parse_value(tok));
        }
        if (!std::getline(row, tok, ',')) throw std::invalid_argument("short CSV row");
        vals.push_back(parse_value(tok));
    }
    if (vals.size() < 3) throw std::invalid_argument("CSV has too few rows");

    // Recover per-axis lo/hi/samples from the row-major coordinate columns:
    // the column of the axis with stride s increases strictly every s rows
    // and resets when the next-outer axis advances.
    std::vector<GridAxis> axes(d);
    std::size_t stride = 1;
    for (std::size_t c = d; c-- > 0;) {
        std::vector<double> uniq;
        for (std::size_t i = 0; i < vals.size(); i += stride) {
            double x = coords[c][i];
            if (!uniq.empty() && x <= uniq.back()) break;
            uniq.push_back(x);
        }
        std::size_t n = uniq.size();
        axes[c] = GridAxis{uniq.front(), uniq.back(), n};
        stride *= n;
    }
    return GridFunction(std::move(axes), std::move(vals));
}

}  // namespace santalo

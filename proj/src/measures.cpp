#include "santalo/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "santalo/quadrature.hpp"
#include <json.hpp>

namespace santalo {

namespace {
constexpr double kSupportTrim = 1e-16;   // density tails below this fraction of max
constexpr double kBoundaryVanish = 1e-10;
}  // namespace

// ---------------------------------------------------------------------------
// QuantileMeasure

QuantileMeasure::QuantileMeasure(std::vector<double> midpoint_values, bool require_monotone)
    : q_(std::move(midpoint_values)), monotone_(require_monotone) {
    if (q_.size() < 2) throw std::invalid_argument("quantile table too small");
    for (double v : q_)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite quantile value");
    if (require_monotone) {
        // Rounding of accumulated potentials can leave inversions of order
        // 1e-10; clamp those to the running maximum, reject anything larger.
        for (std::size_t j = 1; j < q_.size(); ++j) {
            if (q_[j] < q_[j - 1] - 1e-9 * (1.0 + std::abs(q_[j])))
                throw std::invalid_argument("quantile table is not nondecreasing");
            q_[j] = std::max(q_[j], q_[j - 1]);
        }
    }
}

double QuantileMeasure::tail_estimate(const QuantileMeasure& other) const {
    if (other.resolution() != resolution())
        throw std::invalid_argument("mismatched t-grids");
    // Edge-cell error estimate: growth of the product toward the edges over
    // one cell, scaled by the cell width.  Bounded tails give zero; power
    // divergence (infinite second moment) blows up.
    const auto& a = q_;
    const auto& b = other.q_;
    double w = 1.0 / static_cast<double>(a.size());
    std::size_t last = a.size() - 1;
    return (std::abs(a[0] * b[0] - a[1] * b[1]) +
            std::abs(a[last] * b[last] - a[last - 1] * b[last - 1])) *
           w;
}

// ---------------------------------------------------------------------------
// Profile

Profile::Profile(std::vector<double> node_values, bool boundary_violated_lo,
                 bool boundary_violated_hi, double concavity_tol_scale)
    : values_(std::move(node_values)), viol_lo_(boundary_violated_lo),
      viol_hi_(boundary_violated_hi) {
    if (values_.size() < 3) throw std::invalid_argument("profile needs at least 3 nodes");
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite profile value");
        if (v < 0.0) throw std::invalid_argument("profile must be nonnegative");
        max_ = std::max(max_, v);
    }
    if (max_ <= 0.0) throw std::invalid_argument("degenerate profile");
    if (!viol_lo_ && values_.front() != 0.0)
        throw std::invalid_argument("profile must vanish at 0");
    if (!viol_hi_ && values_.back() != 0.0)
        throw std::invalid_argument("profile must vanish at 1");

    double h = cell_width();
    slopes_.resize(cells());
    for (std::size_t j = 0; j < cells(); ++j) slopes_[j] = (values_[j + 1] - values_[j]) / h;
    double tol = concavity_tol_scale * max_;
    for (std::size_t j = 1; j < cells(); ++j)
        if ((slopes_[j] - slopes_[j - 1]) * h > tol)
            throw std::invalid_argument("profile is not concave");
}

double Profile::operator()(double t) const {
    if (t < -1e-12 || t > 1.0 + 1e-12) throw std::invalid_argument("profile argument outside [0,1]");
    t = std::clamp(t, 0.0, 1.0);
    double pos = t * static_cast<double>(cells());
    std::size_t j = std::min(static_cast<std::size_t>(pos), cells() - 1);
    double w = pos - static_cast<double>(j);
    return values_[j] + w * (values_[j + 1] - values_[j]);
}

bool Profile::symmetric(double tol) const {
    for (std::size_t j = 0; j <= cells(); ++j)
        if (std::abs(values_[j] - values_[cells() - j]) > tol * (1.0 + max_)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// LogConcaveMeasure

LogConcaveMeasure::LogConcaveMeasure(ConvexGridFunction potential) : V_(std::move(potential)) {
    const GridFunction& g = V_.grid();
    if (g.dim() != 1) throw std::invalid_argument("measures are one-dimensional");
    std::size_t a = g.window_first(), b = g.window_last();
    if (b - a + 1 < 3) throw std::invalid_argument("potential needs at least three finite samples");

    double vmin = kPlusInfinity;
    for (std::size_t i = a; i <= b; ++i) vmin = std::min(vmin, g[i]);

    // Unnormalized density relative to its maximum, to keep exp in range.
    std::vector<double> rho(b - a + 1);
    for (std::size_t i = 0; i <= b - a; ++i) rho[i] = std::exp(-(g[a + i] - vmin));

    double mass = simpson(rho, g.step());
    if (!(mass > 0.0)) throw std::invalid_argument("potential has no mass");
    logZ_ = std::log(mass) - vmin;

    // Trim decayed tails into the support bounds.
    std::size_t lo = 0, hi = rho.size() - 1;
    while (lo < hi && rho[lo] < kSupportTrim) ++lo;
    while (hi > lo && rho[hi] < kSupportTrim) --hi;
    if (hi - lo + 1 < 3) throw std::invalid_argument("potential has no mass");
    sup_first_ = a + lo;
    sup_last_ = a + hi;

    std::vector<double> sup_rho(rho.begin() + lo, rho.begin() + hi + 1);
    cdf_ = cumulative_trapezoid(sup_rho, g.step());
    double total = cdf_.back();
    if (!(total > 0.0)) throw std::invalid_argument("potential has no mass");
    for (double& c : cdf_) c /= total;
    cdf_.back() = 1.0;

    rho_max_ = 0.0;
    for (double r : sup_rho) rho_max_ = std::max(rho_max_, r);
    rho_max_ *= std::exp(-vmin - logZ_);
}

double LogConcaveMeasure::density(double x) const {
    const GridFunction& g = V_.grid();
    if (x < g.window_lo() || x > g.window_hi()) return 0.0;
    double v = g.value_at(x);
    if (!is_finite_value(v)) return 0.0;
    return std::exp(-v - logZ_);
}

double LogConcaveMeasure::density_at_node(std::size_t i) const {
    return std::exp(-V_.values()[sup_first_ + i] - logZ_);
}

double LogConcaveMeasure::cdf(double x) const {
    if (x <= support_lo()) return 0.0;
    if (x >= support_hi()) return 1.0;
    double h = V_.grid().step();
    double pos = (x - support_lo()) / h;
    std::size_t i = std::min(static_cast<std::size_t>(pos), cdf_.size() - 2);
    double w = pos - static_cast<double>(i);
    return cdf_[i] + w * (cdf_[i + 1] - cdf_[i]);
}

double LogConcaveMeasure::quantile(double t) const {
    if (t <= 0.0) return support_lo();
    if (t >= 1.0) return support_hi();
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
    if (i == 0) return support_lo();
    double c0 = cdf_[i - 1], c1 = cdf_[i];
    double w = (c1 > c0) ? (t - c0) / (c1 - c0) : 0.0;
    double h = V_.grid().step();
    return support_lo() + (static_cast<double>(i - 1) + w) * h;
}

double LogConcaveMeasure::expectation(const std::vector<double>& w) const {
    if (w.size() != node_count())
        throw std::invalid_argument("integrand table size mismatch");
    std::vector<double> prod(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) prod[i] = w[i] * density_at_node(i);
    return simpson(prod, V_.grid().step());
}

std::string LogConcaveMeasure::sidecar_json() const {
    nlohmann::ordered_json j;
    j["log_normalizer"] = logZ_;
    j["support"] = {support_lo(), support_hi()};
    j["essentially_continuous"] = essential_continuity_check(*this);
    return j.dump(2);
}

LogConcaveMeasure normalize(const ConvexGridFunction& V) { return LogConcaveMeasure(V); }

double entropy(const LogConcaveMeasure& m) {
    std::vector<double> v(m.node_count());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = m.node_potential(i);
    return -m.log_normalizer() - m.expectation(v);
}

QuantileMeasure moment_measure(const LogConcaveMeasure& m, std::size_t n) {
    std::vector<double> q(n);
    for (std::size_t j = 0; j < n; ++j) {
        double t = (static_cast<double>(j) + 0.5) / static_cast<double>(n);
        q[j] = m.potential_left_slope(m.quantile(t));
    }
    return QuantileMeasure(std::move(q), /*require_monotone=*/true);
}

QuantileMeasure pushforward_quantiles(const LogConcaveMeasure& m,
                                      const std::function<double(double)>& S, std::size_t n) {
    std::vector<double> q(n);
    for (std::size_t j = 0; j < n; ++j) {
        double t = (static_cast<double>(j) + 0.5) / static_cast<double>(n);
        q[j] = S(m.quantile(t));
    }
    return QuantileMeasure(std::move(q), /*require_monotone=*/false);
}

QuantileMeasure quantiles(const LogConcaveMeasure& m, std::size_t n) {
    std::vector<double> q(n);
    for (std::size_t j = 0; j < n; ++j) {
        double t = (static_cast<double>(j) + 0.5) / static_cast<double>(n);
        q[j] = m.quantile(t);
    }
    return QuantileMeasure(std::move(q), /*require_monotone=*/true);
}

namespace {

// One side of the essential-continuity test.  `edge_slope` is the outward
// one-sided slope of V at the grid edge (positive = density decaying).
bool side_essentially_continuous(double boundary_density, double max_density, bool at_grid_edge,
                                 double outward_slope) {
    if (boundary_density <= kBoundaryVanish * max_density) return true;
    return at_grid_edge && outward_slope > 0.0;
}

}  // namespace

bool essential_continuity_check(const LogConcaveMeasure& m) {
    const GridFunction& g = m.potential().grid();
    bool lo_edge = m.support_first() == 0;
    bool hi_edge = m.support_last() + 1 == g.axis().samples;
    double slope_out_lo = -g.cell_slope(m.support_first());
    double slope_out_hi = g.cell_slope(m.support_last() - 1);
    bool lo_ok = side_essentially_continuous(m.density_at_node(0), m.max_density(), lo_edge,
                                             slope_out_lo);
    bool hi_ok = side_essentially_continuous(m.density_at_node(m.node_count() - 1),
                                             m.max_density(), hi_edge, slope_out_hi);
    return lo_ok && hi_ok;
}

Profile profile(const LogConcaveMeasure& m, std::size_t cells) {
    const GridFunction& g = m.potential().grid();
    bool lo_edge = m.support_first() == 0;
    bool hi_edge = m.support_last() + 1 == g.axis().samples;
    bool lo_ok = side_essentially_continuous(m.density_at_node(0), m.max_density(), lo_edge,
                                             -g.cell_slope(m.support_first()));
    bool hi_ok = side_essentially_continuous(m.density_at_node(m.node_count() - 1),
                                             m.max_density(), hi_edge,
                                             g.cell_slope(m.support_last() - 1));

    std::vector<double> f(cells + 1);
    for (std::size_t j = 1; j < cells; ++j) {
        double t = static_cast<double>(j) / static_cast<double>(cells);
        f[j] = m.density(m.quantile(t));
    }
    f[0] = lo_ok ? 0.0 : m.density_at_node(0);
    f[cells] = hi_ok ? 0.0 : m.density_at_node(m.node_count() - 1);
    return Profile(std::move(f), !lo_ok, !hi_ok);
}

LogConcaveMeasure measure_from_profile(const Profile& f, std::size_t grid_samples) {
    std::size_t n = f.cells();
    double h = f.cell_width();
    const auto& fv = f.values();
    for (std::size_t j = 1; j < n; ++j)
        if (fv[j] <= 0.0) throw std::invalid_argument("degenerate profile");

    double floor = 1e-5 * f.max_value();
    const double neg_inf = -kPlusInfinity;

    // x at the profile nodes, anchored at the middle node.  On a cell where
    // f is linear with slope b != 0, int dt/f = log(f1/f0)/b; endpoint cells
    // with f = 0 map to an infinite coordinate (log tail).
    auto cell_dx = [&](std::size_t j) {
        double f0 = fv[j], f1 = fv[j + 1];
        if (f0 <= 0.0 || f1 <= 0.0) return kPlusInfinity;
        if (std::abs(f1 - f0) < 1e-12 * (f0 + f1)) return h / (0.5 * (f0 + f1));
        return std::log(f1 / f0) * h / (f1 - f0);
    };
    std::vector<double> X(n + 1);
    std::size_t mid = n / 2;
    X[mid] = 0.0;
    for (std::size_t j = mid; j < n; ++j) {
        double dx = cell_dx(j);
        X[j + 1] = is_finite_value(X[j]) && is_finite_value(dx) ? X[j] + dx : kPlusInfinity;
    }
    for (std::size_t j = mid; j-- > 0;) {
        double dx = cell_dx(j);
        X[j] = (X[j + 1] > neg_inf && X[j + 1] < kPlusInfinity && is_finite_value(dx))
                   ? X[j + 1] - dx
                   : neg_inf;
    }

    // Cut the domain where f falls below the floor value.
    std::size_t j1 = 0;
    while (j1 <= n && fv[j1] < floor) ++j1;
    std::size_t j2 = n;
    while (j2 > 0 && fv[j2] < floor) --j2;
    if (j1 >= j2) throw std::invalid_argument("degenerate profile");

    double x_lo, x_hi;
    if (j1 == 0) {
        x_lo = X[0];
    } else {  // crossing inside cell j1-1, slope > 0 there
        double b = (fv[j1] - fv[j1 - 1]) / h;
        x_lo = X[j1] - std::log(fv[j1] / floor) / b;
    }
    if (j2 == n) {
        x_hi = X[n];
    } else {  // crossing inside cell j2, slope < 0 there
        double b = (fv[j2 + 1] - fv[j2]) / h;
        x_hi = X[j2] + std::log(floor / fv[j2]) / b;
    }
    if (!(is_finite_value(x_hi) && x_lo > neg_inf && x_hi > x_lo))
        throw std::invalid_argument("degenerate profile");

    // V(x) = -log f is piecewise linear in x: on the image of cell j,
    // V(x) = -log f(anchor) - b_j (x - X_anchor).
    GridAxis axis{x_lo, x_hi, grid_samples};
    std::vector<double> vals(grid_samples);
    std::size_t seg = j1 > 0 ? j1 - 1 : 0;
    for (std::size_t i = 0; i < grid_samples; ++i) {
        double x = axis.coord(i);
        while (seg + 1 < n && X[seg + 1] < kPlusInfinity && X[seg + 1] <= x) ++seg;
        double f0 = fv[seg], f1 = fv[seg + 1];
        double b = (f1 - f0) / h;
        if (std::abs(f1 - f0) < 1e-12 * (f0 + f1)) {
            vals[i] = -std::log(0.5 * (f0 + f1));
            continue;
        }
        bool right_ok = f1 > 0.0 && X[seg + 1] < kPlusInfinity;
        double xa = right_ok ? X[seg + 1] : X[seg];
        double fa = right_ok ? f1 : f0;
        vals[i] = -std::log(fa) - b * (x - xa);
    }
    // Profile tables measured off a grid carry node noise that the profile
    // concavity tolerance admits; it lands here as slope jitter of order
    // (noise / cell width), so the potential check must absorb it.
    return normalize(ConvexGridFunction(GridFunction(axis, std::move(vals)), 1e-4));
}

}  // namespace santalo

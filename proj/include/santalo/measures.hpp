#pragma once

#include <functional>
#include <string>
#include <vector>

#include "santalo/convex.hpp"
#include "santalo/grid_function.hpp"

namespace santalo {

/// A measure on (0,1) represented by a table t -> value on uniform cell
/// midpoints t_j = (j+1/2)/n, endpoints excluded.  Represents a quantile
/// function F^{-1} (nondecreasing) or a pushforward S(F^{-1}) (arbitrary).
class QuantileMeasure {
  public:
    QuantileMeasure(std::vector<double> midpoint_values, bool require_monotone);

    std::size_t resolution() const { return q_.size(); }
    const std::vector<double>& table() const { return q_; }
    double t_at(std::size_t j) const {
        return (static_cast<double>(j) + 0.5) / static_cast<double>(q_.size());
    }
    bool monotone() const { return monotone_; }

    /// Contribution estimate of the unrepresented tails [0, 1/2n] and
    /// [1-1/2n, 1] to a product integral against another table.
    double tail_estimate(const QuantileMeasure& other) const;

  private:
    std::vector<double> q_;
    bool monotone_;
};

/// Isoperimetric-style profile on [0,1]: node values f(j/n), j = 0..n, with
/// left-difference derivative table.  Concave, vanishing at the endpoints
/// for essentially continuous measures; otherwise the boundary densities are
/// recorded and a violation flag is set.
class Profile {
  public:
    Profile(std::vector<double> node_values, bool boundary_violated_lo = false,
            bool boundary_violated_hi = false, double concavity_tol_scale = 1e-6);

    std::size_t cells() const { return values_.size() - 1; }
    const std::vector<double>& values() const { return values_; }
    double cell_width() const { return 1.0 / static_cast<double>(cells()); }
    double node(std::size_t j) const { return static_cast<double>(j) * cell_width(); }
    /// Piecewise-linear evaluation.
    double operator()(double t) const;
    /// Left-difference slope on cell j (left derivative at node j+1).
    double slope(std::size_t j) const { return slopes_[j]; }
    const std::vector<double>& slopes() const { return slopes_; }
    double max_value() const { return max_; }

    bool boundary_violated() const { return viol_lo_ || viol_hi_; }
    bool boundary_violated_lo() const { return viol_lo_; }
    bool boundary_violated_hi() const { return viol_hi_; }

    bool symmetric(double tol = 1e-8) const;

  private:
    std::vector<double> values_;
    std::vector<double> slopes_;
    double max_ = 0.0;
    bool viol_lo_, viol_hi_;
};

/// A normalized log-concave probability measure e^{-V}/Z on the line,
/// carrying the potential, log Z, the CDF table on the support grid and the
/// support interval (finite window trimmed where the density has decayed
/// below 1e-16 of its maximum).
class LogConcaveMeasure {
  public:
    explicit LogConcaveMeasure(ConvexGridFunction potential);

    const ConvexGridFunction& potential() const { return V_; }
    double log_normalizer() const { return logZ_; }
    double support_lo() const { return V_.grid().axis().coord(sup_first_); }
    double support_hi() const { return V_.grid().axis().coord(sup_last_); }
    std::size_t support_first() const { return sup_first_; }
    std::size_t support_last() const { return sup_last_; }

    /// Normalized density e^{-V(x)}/Z (0 outside the finite window).
    double density(double x) const;
    double density_at_node(std::size_t i) const;
    double max_density() const { return rho_max_; }

    /// CDF by monotone interpolation of the cumulative table.
    double cdf(double x) const;
    /// Generalized inverse F^{-1}(t) = inf{x : F(x) >= t}, leftmost index on
    /// ties, by monotone linear interpolation.
    double quantile(double t) const;

    /// Left derivative of the potential at x.
    double potential_left_slope(double x) const { return V_.grid().left_slope_at(x); }

    /// Quadrature of w(x) against the measure over the support.
    double expectation(const std::vector<double>& integrand_at_nodes) const;
    /// Node range of the support with coordinates.
    std::size_t node_count() const { return sup_last_ - sup_first_ + 1; }
    double node_coord(std::size_t i) const { return V_.grid().axis().coord(sup_first_ + i); }
    double node_potential(std::size_t i) const { return V_.values()[sup_first_ + i]; }

    std::string sidecar_json() const;

  private:
    ConvexGridFunction V_;
    double logZ_ = 0.0;
    std::size_t sup_first_ = 0, sup_last_ = 0;
    double rho_max_ = 0.0;
    std::vector<double> cdf_;  // on support nodes, cdf_[0]=0, back()=1
};

/// Normalization: Z by composite Simpson over the finite window.
LogConcaveMeasure normalize(const ConvexGridFunction& V);

/// Relative entropy H = -log Z - int V d(eta) of the measure w.r.t. Lebesgue.
double entropy(const LogConcaveMeasure& m);

/// Moment measure: pushforward quantile table t -> V'(F^{-1}(t)) on n cell
/// midpoints (default 4096).  Nondecreasing by convexity.
QuantileMeasure moment_measure(const LogConcaveMeasure& m, std::size_t resolution = 4096);

/// Pushforward quantile table t -> S(F^{-1}(t)) for an arbitrary map S.
QuantileMeasure pushforward_quantiles(const LogConcaveMeasure& m,
                                      const std::function<double(double)>& S,
                                      std::size_t resolution = 4096);

/// Quantile table of the measure itself, t -> F^{-1}(t).
QuantileMeasure quantiles(const LogConcaveMeasure& m, std::size_t resolution = 4096);

/// Essential continuity: the density vanishes at each support endpoint, or
/// the endpoint is a grid-edge tail with outward-increasing potential (a
/// truncated view of a measure whose true support boundary lies at infinity).
bool essential_continuity_check(const LogConcaveMeasure& m);

/// Profile f(t) = F' o F^{-1}(t) = exp(-V(F^{-1}(t)))/Z on a uniform node
/// grid of [0,1]; endpoints are zeroed only where essential continuity
/// holds, otherwise the boundary density is kept and flagged.
Profile profile(const LogConcaveMeasure& m, std::size_t cells = 65536);

/// Inverse of the profile map: reconstruct the measure with x(t) solving
/// x'(t) = 1/f(t), density f(t) at x(t).
LogConcaveMeasure measure_from_profile(const Profile& f, std::size_t grid_samples = 32769);

}  // namespace santalo

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "santalo/convex.hpp"
#include "santalo/measures.hpp"

namespace santalo {

/// Finitely many weighted atoms in R^n, n <= 3.  Weights are positive and
/// sum to 1; atoms are pairwise distinct.
class DiscreteMeasure {
  public:
    DiscreteMeasure(std::vector<std::vector<double>> atoms, std::vector<double> weights);

    std::size_t size() const { return atoms_.size(); }
    std::size_t dim() const { return atoms_.empty() ? 0 : atoms_[0].size(); }
    const std::vector<std::vector<double>>& atoms() const { return atoms_; }
    const std::vector<double>& weights() const { return weights_; }

    DiscreteMeasure scaled(double a) const;

    std::string to_json() const;
    static DiscreteMeasure from_json(const std::string& text);

  private:
    std::vector<std::vector<double>> atoms_;
    std::vector<double> weights_;
};

/// A coupling between two discrete measures: nonnegative joint weights with
/// the two marginals as row/column sums.
class Coupling {
  public:
    Coupling(std::size_t rows, std::size_t cols, std::vector<double> joint,
             const DiscreteMeasure& m1, const DiscreteMeasure& m2);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double operator()(std::size_t i, std::size_t j) const { return joint_[i * cols_ + j]; }
    const std::vector<double>& joint() const { return joint_; }

    std::string to_json() const;

  private:
    std::size_t rows_, cols_;
    std::vector<double> joint_;
};

/// Midpoint-rule correlation of two quantile tables on the same t-grid:
/// int_0^1 q1 q2 dt.  Equals the maximal-correlation cost for monotone
/// tables (comonotone coupling).  Rejects pairs whose tail estimate exceeds
/// 1e-4 of the total (finite second moment check).
double quantile_correlation(const QuantileMeasure& q1, const QuantileMeasure& q2);

/// As above but also returns the tail contribution estimate.
std::pair<double, double> quantile_correlation_with_tail(const QuantileMeasure& q1,
                                                         const QuantileMeasure& q2);

/// Exact maximum of sum pi_ij x_i.y_j over the transportation polytope.
/// Equal-weight equal-count instances up to 8x8 are solved by exhaustive
/// permutation search; everything else by network simplex.  Total atom count
/// is capped at 64.
std::pair<double, Coupling> brute_force_cost(const DiscreteMeasure& m1,
                                             const DiscreteMeasure& m2);

/// Transport cost between a measure and its own moment measure via the
/// integral int x V'(x) d(eta); equals 1 (n = 1) for essentially continuous
/// measures.
double potential_pair_cost(const LogConcaveMeasure& m);

/// Weak-duality gap (int f dmu1 + int f* dmu2) - brute_force_cost(mu1, mu2)
/// for a 1D convex potential f; always >= -1e-8.
double dual_feasibility_gap(const DiscreteMeasure& m1, const DiscreteMeasure& m2,
                            const ConvexGridFunction& f);

/// Exact quantile table of a 1D discrete measure on n*k midpoints (equal
/// weights only need k multiples of the atom count for exact cell alignment).
QuantileMeasure discrete_quantiles(const DiscreteMeasure& m, std::size_t resolution);

}  // namespace santalo

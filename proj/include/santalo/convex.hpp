#pragma once

#include <vector>

#include "santalo/grid_function.hpp"

namespace santalo {

inline constexpr double kDefaultConvexityTol = 1e-9;

/// A grid function that passes a discrete convexity check: second
/// differences over the finite window are >= -tol*(1+|value|) along every
/// axis and along grid diagonals in higher dimension.
class ConvexGridFunction {
  public:
    explicit ConvexGridFunction(GridFunction base, double convexity_tol = kDefaultConvexityTol);

    const GridFunction& grid() const { return base_; }
    double convexity_tol() const { return tol_; }

    std::size_t dim() const { return base_.dim(); }
    const GridAxis& axis(std::size_t d = 0) const { return base_.axis(d); }
    const std::vector<double>& values() const { return base_.values(); }
    double value_at(double x) const { return base_.value_at(x); }

  private:
    GridFunction base_;
    double tol_;
};

/// Default conjugate grid: [min slope - 1, max slope + 1] over the finite
/// window; the conjugate is affine outside the slope range.
GridAxis default_dual_axis(const GridFunction& f, std::size_t samples = 0);

/// Discrete Fenchel-Legendre transform: g(y) = max over grid points x of
/// x.y - f(x).  Exact for the sampled point cloud; O(N+M) in 1D via the
/// lower convex hull and a merge over the sorted dual grid.
ConvexGridFunction legendre_transform(const ConvexGridFunction& f, double dual_lo,
                                      double dual_hi, std::size_t dual_samples);
ConvexGridFunction legendre_transform(const ConvexGridFunction& f, const GridAxis& dual);
ConvexGridFunction legendre_transform(const ConvexGridFunction& f,
                                      const std::vector<GridAxis>& dual_axes);

/// Raw 1D kernel: conjugate of the point cloud (xs[i], vs[i]) evaluated at
/// ascending dual nodes.  Exposed for reuse and benchmarks.
void conjugate_cloud(const double* xs, const double* vs, std::size_t n, const double* ys,
                     std::size_t m, double* out);

/// Discrete infimal convolution on commensurable grids: exact minimum of
/// f(y)+g(x-y) over all representable pairs, on the sum grid.
GridFunction inf_convolution(const GridFunction& f, const GridFunction& g);

/// Moreau-Yosida regularization V_k = V box (k|.|^2/2) + |.|^2/(2k),
/// evaluated back on V's own grid.  Requires discretely convex V and k > 0.
ConvexGridFunction moreau_yosida(const GridFunction& V, double k);

/// Young's inequality gap f(x) + f*(y) - x*y, by linear interpolation.
double young_gap(const ConvexGridFunction& f, const ConvexGridFunction& fstar, double x,
                 double y);

}  // namespace santalo

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "santalo/convex.hpp"
#include "santalo/measures.hpp"
#include "santalo/report.hpp"
#include "santalo/transport.hpp"

namespace santalo {

/// Convex potential on the box [0,R]^n, n in {2,3}, nondecreasing in each
/// coordinate (required so facial restriction and conjugation commute).
class UnconditionalPotential {
  public:
    explicit UnconditionalPotential(ConvexGridFunction potential);

    const ConvexGridFunction& potential() const { return V_; }
    std::size_t dim() const { return V_.dim(); }
    double box_radius(std::size_t d = 0) const { return V_.axis(d).hi; }
    bool monotone() const { return monotone_; }

  private:
    ConvexGridFunction V_;
    bool monotone_;
};

/// Functional Mahler product Z * Z^* = int e^{-V} int e^{-V*} against the
/// sharp constant: deficit = product - c (dimension 1), c = 4 for even V and
/// c = e otherwise unless overridden.  A finite window reaching the grid
/// edge with outward-increasing potential is read as a truncated tail (the
/// conjugate is +inf past that edge slope); interior window boundaries are
/// hard domain walls whose affine conjugate tails carry real mass.
VerificationReport santalo_product(const ConvexGridFunction& V,
                                   std::optional<double> c = std::nullopt,
                                   std::optional<double> tolerance = std::nullopt);

/// Residual of -log Z = -int V* dnu + T(nu,eta) + H(eta); deficit is
/// -|residual|.  Works for any convex potential; essential continuity is
/// reported (the transport term equals 1 only in that case).
VerificationReport basic_identity_residual(const LogConcaveMeasure& m, double tolerance = 1e-5);

/// Entropy-transport deficit T(nu1,nu2) - log(c e^2) - H1 - H2 with the
/// transport cost evaluated by quantile correlation of the monotone moment
/// quantile tables.  Requires essentially continuous inputs.
VerificationReport et_deficit(const LogConcaveMeasure& m1, const LogConcaveMeasure& m2,
                              std::optional<double> c = std::nullopt,
                              std::size_t resolution = std::size_t{1} << 20,
                              std::optional<double> tolerance = std::nullopt);

/// Profile form of the entropy-transport inequality:
/// deficit = -log(e^2 c) + int f1' f2' - int log(f1 f2), exact for
/// piecewise-linear profiles (log-linear cells integrate in closed form).
VerificationReport profile_inequality_gap(const Profile& f1, const Profile& f2,
                                          std::optional<double> c = std::nullopt,
                                          std::optional<double> tolerance = std::nullopt);

/// Chebyshev sum inequality for comonotone tables h, k against weights:
/// deficit = mu(R) sum w h k - (sum w h)(sum w k) >= 0 up to rounding.
VerificationReport correlation_check(std::span<const double> h, std::span<const double> k,
                                     std::span<const double> weights);

/// Pointwise product bound f1(x) f2(x) <= x int_0^x f1' f2' dt.
VerificationReport chebyshev_pointwise_bound(const Profile& f1, const Profile& f2, double x,
                                             double tolerance = 1e-9);

/// Weighted product bound int_0^{1/2} f'g' log(2-2t) dt <= int_0^{1/2} f'g' dt,
/// with the proof's auxiliary positivity checks against phi(t) = 1 - log 2 -
/// log(1-t) reported as quantities.
VerificationReport weighted_product_gap(const Profile& f, const Profile& g,
                                        double tolerance = 1e-8);

/// n-dimensional induction checks on the positive orthant: with
/// a(t) = int e^{-tV}, alpha(t) = int e^{-tV*} and F(t) = t^{2n} a alpha,
/// verifies F(1) >= 1, the finite-difference bound F'(t) >= n t^{n-1}, the
/// Jensen step a'/a + n/t >= V*(G(t)/(t a(t))) and the facial conjugate
/// identity (V_i)* = (V*)_i, each within `tolerance`.
VerificationReport unconditional_verify(const UnconditionalPotential& U,
                                        const std::vector<double>& t_samples,
                                        double tolerance = 1e-3);

/// Random admissible profile: 256 cell slopes drawn uniform, sorted
/// descending, shifted to integrate to zero, then integrated; the symmetric
/// variant mirrors the first half.
Profile random_concave_profile(std::uint64_t seed, bool symmetric, std::size_t cells = 256);

/// Piecewise-linear profile integrals (closed-form cells), shared by the
/// verifiers: int_0^1 log f dt and int_0^1 f1' f2' dt.
double integral_log_profile(const Profile& f);
double integral_slope_product(const Profile& f1, const Profile& f2);

/// Evenness of a 1D potential on a symmetric grid, within 1e-10.
bool is_even_potential(const GridFunction& V, double tol = 1e-10);

}  // namespace santalo

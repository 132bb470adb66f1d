#pragma once

#include <cstdint>
#include <string>

#include "santalo/convex.hpp"
#include "santalo/inequalities.hpp"
#include "santalo/measures.hpp"

namespace santalo {

enum class FamilyKind {
    Gaussian,
    Laplace,
    ShiftedExponential,
    Power,
    UniformIndicator,
    TrapezoidProfile,
    LinearCapProfile,
    RandomProfile,
    UnconditionalL1,
    UnconditionalGaussian,
    UnconditionalPower,
    CustomCsv,
};

/// A named potential/profile family instance: measures come from convex
/// potentials on default (overridable) grids, profiles from closed-form
/// extremizer approximations or the random generator.
struct FamilySpec {
    FamilyKind kind = FamilyKind::Gaussian;
    GridAxis grid{0.0, 1.0, 0};      // samples == 0 selects the family default
    double p = 2.0;                  // power families
    double eps = 0.1;                // extremizer approximation parameter
    std::uint64_t seed = 1;
    bool symmetric = false;          // random profiles
    std::size_t dim = 2;             // unconditional families
    std::size_t profile_cells = 0;   // 0 selects the default
    std::string csv_path;

    void validate() const;
};

FamilyKind family_kind_from_name(const std::string& name);
std::string family_name(FamilyKind kind);
bool is_profile_family(FamilyKind kind);
bool is_unconditional_family(FamilyKind kind);

GridAxis default_family_grid(FamilyKind kind, double p);

/// 1D potential on its (default or overridden) grid.
ConvexGridFunction build_potential(const FamilySpec& spec);
LogConcaveMeasure build_measure(const FamilySpec& spec);

/// Profile families; measure families are routed through profile(normalize).
Profile build_profile(const FamilySpec& spec);

/// Separable orthant potential sum |x_i|^p / p on [0,R]^n.
UnconditionalPotential build_unconditional(const FamilySpec& spec,
                                           std::size_t samples_per_axis = 0);

/// Exact piecewise-linear reference profiles.
Profile tent_profile(std::size_t cells);                         // min(t, 1-t)
Profile trapezoid_profile(double eps, std::size_t cells);        // height 1/2
Profile linear_cap_profile(double eps, std::size_t cells);       // t capped at 1-eps
Profile mirrored(const Profile& f);

}  // namespace santalo

#include "santalo/families.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

namespace santalo {

namespace {

const std::map<std::string, FamilyKind> kNames = {
    {"gaussian", FamilyKind::Gaussian},
    {"laplace", FamilyKind::Laplace},
    {"shifted_exponential", FamilyKind::ShiftedExponential},
    {"power", FamilyKind::Power},
    {"uniform_indicator", FamilyKind::UniformIndicator},
    {"trapezoid_profile", FamilyKind::TrapezoidProfile},
    {"linear_cap_profile", FamilyKind::LinearCapProfile},
    {"random_profile", FamilyKind::RandomProfile},
    {"unconditional_l1", FamilyKind::UnconditionalL1},
    {"unconditional_gaussian", FamilyKind::UnconditionalGaussian},
    {"unconditional_power", FamilyKind::UnconditionalPower},
    {"custom_csv", FamilyKind::CustomCsv},
};

constexpr std::size_t kDefaultProfileCells = 64000;

}  // namespace

void FamilySpec::validate() const {
    if (grid.samples != 0 && grid.samples < 65)
        throw std::invalid_argument("family grids need at least 65 samples");
    if (kind == FamilyKind::Power || kind == FamilyKind::UnconditionalPower) {
        if (!(p >= 1.0)) throw std::invalid_argument("power exponent must be >= 1");
    }
    if (kind == FamilyKind::TrapezoidProfile || kind == FamilyKind::LinearCapProfile) {
        if (!(eps > 0.0 && eps < 0.5))
            throw std::invalid_argument("approximation parameter must lie in (0, 1/2)");
    }
    if (is_unconditional_family(kind) && dim != 2 && dim != 3)
        throw std::invalid_argument("unconditional families support dimension 2 or 3");
}

FamilyKind family_kind_from_name(const std::string& name) {
    auto it = kNames.find(name);
    if (it == kNames.end()) throw std::invalid_argument("unknown family '" + name + "'");
    return it->second;
}

std::string family_name(FamilyKind kind) {
    for (const auto& [n, k] : kNames)
        if (k == kind) return n;
    return "unknown";
}

bool is_profile_family(FamilyKind k) {
    return k == FamilyKind::TrapezoidProfile || k == FamilyKind::LinearCapProfile ||
           k == FamilyKind::RandomProfile;
}

bool is_unconditional_family(FamilyKind k) {
    return k == FamilyKind::UnconditionalL1 || k == FamilyKind::UnconditionalGaussian ||
           k == FamilyKind::UnconditionalPower;
}

GridAxis default_family_grid(FamilyKind kind, double p) {
    switch (kind) {
        case FamilyKind::Gaussian:
            return {-12.0, 12.0, 16385};
        case FamilyKind::Laplace:
            return {-40.0, 40.0, 32769};
        case FamilyKind::ShiftedExponential:
            // step 1/512 keeps the wall at x = -1 exactly on a node
            return {-2.0, 40.0, 42 * 512 + 1};
        case FamilyKind::Power: {
            double r = std::pow(40.0 * p, 1.0 / p);
            return {-r, r, 16385};
        }
        case FamilyKind::UniformIndicator:
            return {-2.0, 2.0, 8193};
        default:
            throw std::invalid_argument("family has no default 1D grid");
    }
}

ConvexGridFunction build_potential(const FamilySpec& spec) {
    spec.validate();
    if (spec.kind == FamilyKind::CustomCsv) {
        std::ifstream in(spec.csv_path);
        if (!in) throw std::invalid_argument("cannot open '" + spec.csv_path + "'");
        return ConvexGridFunction(GridFunction::from_csv_stream(in));
    }
    GridAxis a = spec.grid.samples != 0 ? spec.grid : default_family_grid(spec.kind, spec.p);
    std::vector<double> v(a.samples);
    switch (spec.kind) {
        case FamilyKind::Gaussian:
            for (std::size_t i = 0; i < a.samples; ++i) {
                double x = a.coord(i);
                v[i] = 0.5 * x * x;
            }
            break;
        case FamilyKind::Laplace:
            for (std::size_t i = 0; i < a.samples; ++i) v[i] = std::abs(a.coord(i));
            break;
        case FamilyKind::ShiftedExponential:
            for (std::size_t i = 0; i < a.samples; ++i) {
                double x = a.coord(i);
                v[i] = x < -1.0 ? kPlusInfinity : 1.0 + x;
            }
            break;
        case FamilyKind::Power:
            for (std::size_t i = 0; i < a.samples; ++i)
                v[i] = std::pow(std::abs(a.coord(i)), spec.p) / spec.p;
            break;
        case FamilyKind::UniformIndicator:
            for (std::size_t i = 0; i < a.samples; ++i)
                v[i] = std::abs(a.coord(i)) <= 1.0 ? 0.0 : kPlusInfinity;
            break;
        default:
            throw std::invalid_argument("not a 1D potential family");
    }
    return ConvexGridFunction(GridFunction(a, std::move(v)));
}

LogConcaveMeasure build_measure(const FamilySpec& spec) {
    if (is_profile_family(spec.kind)) return measure_from_profile(build_profile(spec));
    return normalize(build_potential(spec));
}

Profile build_profile(const FamilySpec& spec) {
    spec.validate();
    std::size_t cells = spec.profile_cells != 0 ? spec.profile_cells : kDefaultProfileCells;
    switch (spec.kind) {
        case FamilyKind::TrapezoidProfile:
            return trapezoid_profile(spec.eps, cells);
        case FamilyKind::LinearCapProfile:
            return linear_cap_profile(spec.eps, cells);
        case FamilyKind::RandomProfile:
            return random_concave_profile(spec.seed, spec.symmetric,
                                          spec.profile_cells != 0 ? spec.profile_cells : 256);
        default:
            return profile(build_measure(spec));
    }
}

UnconditionalPotential build_unconditional(const FamilySpec& spec, std::size_t samples) {
    spec.validate();
    double p;
    switch (spec.kind) {
        case FamilyKind::UnconditionalL1: p = 1.0; break;
        case FamilyKind::UnconditionalGaussian: p = 2.0; break;
        case FamilyKind::UnconditionalPower: p = spec.p; break;
        default:
            throw std::invalid_argument("not an unconditional family");
    }
    std::size_t n = spec.dim;
    if (samples == 0) samples = n == 2 ? 513 : 257;
    // e^{-t V} decayed below 1e-15 at the far face for every probed t >= 0.195
    double R = std::pow(175.0 * p, 1.0 / p);
    std::vector<GridAxis> axes(n, GridAxis{0.0, R, samples});
    std::size_t total = 1;
    for (std::size_t d = 0; d < n; ++d) total *= samples;
    std::vector<double> v(total);
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        double acc = 0.0;
        for (std::size_t d = 0; d < n; ++d) acc += std::pow(axes[d].coord(idx[d]), p) / p;
        v[flat] = acc;
        for (std::size_t d = n; d-- > 0;) {
            if (++idx[d] < samples) break;
            idx[d] = 0;
        }
    }
    return UnconditionalPotential(ConvexGridFunction(GridFunction(axes, std::move(v)), 1e-7));
}

Profile tent_profile(std::size_t cells) {
    std::vector<double> f(cells + 1);
    double h = 1.0 / static_cast<double>(cells);
    for (std::size_t j = 0; j <= cells; ++j) {
        double t = static_cast<double>(j) * h;
        f[j] = std::min(t, 1.0 - t);
    }
    f[0] = 0.0;
    f[cells] = 0.0;
    return Profile(std::move(f));
}

Profile trapezoid_profile(double eps, std::size_t cells) {
    std::size_t k = static_cast<std::size_t>(std::llround(eps * static_cast<double>(cells)));
    if (k == 0 || 2 * k >= cells)
        throw std::invalid_argument("approximation parameter too extreme for this grid");
    std::vector<double> f(cells + 1);
    for (std::size_t j = 0; j <= cells; ++j) {
        std::size_t m = std::min(j, cells - j);
        f[j] = m >= k ? 0.5 : 0.5 * static_cast<double>(m) / static_cast<double>(k);
    }
    return Profile(std::move(f));
}

Profile linear_cap_profile(double eps, std::size_t cells) {
    std::size_t k = static_cast<std::size_t>(std::llround(eps * static_cast<double>(cells)));
    if (k == 0 || k >= cells)
        throw std::invalid_argument("approximation parameter too extreme for this grid");
    double h = 1.0 / static_cast<double>(cells);
    double peak = static_cast<double>(cells - k) * h;  // 1 - eps after snapping
    std::vector<double> f(cells + 1);
    for (std::size_t j = 0; j <= cells; ++j) {
        if (j <= cells - k)
            f[j] = static_cast<double>(j) * h;
        else
            f[j] = peak * static_cast<double>(cells - j) / static_cast<double>(k);
    }
    f[cells] = 0.0;
    return Profile(std::move(f));
}

Profile mirrored(const Profile& f) {
    std::vector<double> v(f.values().rbegin(), f.values().rend());
    return Profile(std::move(v), f.boundary_violated_hi(), f.boundary_violated_lo());
}

}  // namespace santalo

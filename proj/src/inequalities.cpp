#include "santalo/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "santalo/quadrature.hpp"
#include "santalo/rng.hpp"

namespace santalo {

namespace {

constexpr double kDecayLog = 37.0;  // e^-37 < 1e-16

std::string tlabel(const char* base, double t) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%s(t=%g)", base, t);
    return buf;
}

double strided_simpson(const std::vector<double>& v, double step, std::size_t stride) {
    std::vector<double> s;
    s.reserve(v.size() / stride + 1);
    for (std::size_t i = 0; i < v.size(); i += stride) s.push_back(v[i]);
    return simpson(s, step * static_cast<double>(stride));
}

}  // namespace

bool is_even_potential(const GridFunction& V, double tol) {
    if (V.dim() != 1) return false;
    const GridAxis& a = V.axis();
    if (std::abs(a.lo + a.hi) > 1e-12 * (a.hi - a.lo)) return false;
    std::size_t n = a.samples;
    for (std::size_t i = 0; i < n; ++i) {
        double v = V[i], w = V[n - 1 - i];
        bool fv = is_finite_value(v), fw = is_finite_value(w);
        if (fv != fw) return false;
        if (fv && std::abs(v - w) > tol * (1.0 + std::abs(v))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// santalo_product

namespace {

struct MassResult {
    double log_mass;      // log of the Simpson integral of e^{-f} over the window
    double half_log_mass; // same at doubled step
    double min_value;
};

MassResult window_mass(const GridFunction& f, std::size_t first, std::size_t last) {
    double vmin = kPlusInfinity;
    for (std::size_t i = first; i <= last; ++i) vmin = std::min(vmin, f[i]);
    std::vector<double> rho(last - first + 1);
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::exp(-(f[first + i] - vmin));
    double m = simpson(rho, f.step());
    double mh = strided_simpson(rho, f.step(), 2);
    if (!(m > 0.0)) throw std::invalid_argument("potential has no mass");
    return {std::log(m) - vmin, std::log(mh) - vmin, vmin};
}

}  // namespace

VerificationReport santalo_product(const ConvexGridFunction& V, std::optional<double> c_opt,
                                   std::optional<double> tol_opt) {
    const GridFunction& g = V.grid();
    if (g.dim() != 1) throw std::invalid_argument("santalo_product is 1D only");
    std::size_t wf = g.window_first(), wl = g.window_last();
    MassResult primal = window_mass(g, wf, wl);

    double s_min = g.min_window_slope();
    double s_max = g.max_window_slope();

    // Side semantics: a window reaching the grid edge with an outward-
    // increasing potential is a truncated tail (conjugate +inf beyond the
    // edge slope); anything else is a hard wall whose affine conjugate tail
    // carries real mass.
    bool left_truncated = g.window_touches_lo() && s_min < 0.0;
    bool right_truncated = g.window_touches_hi() && s_max > 0.0;

    // Coarse conjugate to locate its minimum.
    ConvexGridFunction coarse =
        legendre_transform(V, s_min - 1.0, s_max + 1.0, std::min<std::size_t>(4097, g.axis().samples));
    double g_min = kPlusInfinity;
    for (double v : coarse.values()) g_min = std::min(g_min, v);

    double dual_lo, dual_hi;
    double dual_tail_est = 0.0;  // unresolved conjugate mass beyond the dual window
    if (left_truncated) {
        dual_lo = s_min;
    } else {
        double a = g.window_lo();
        double va = g[wf];
        if (a < 0.0) {
            dual_lo = std::min(s_min - 1.0, (g_min + kDecayLog + va) / a);
        } else {
            dual_lo = s_min - 50.0;  // conjugate tail does not decay; lower bound only
            dual_tail_est = kPlusInfinity;
        }
    }
    if (right_truncated) {
        dual_hi = s_max;
    } else {
        double b = g.window_hi();
        double vb = g[wl];
        if (b > 0.0) {
            dual_hi = std::max(s_max + 1.0, (g_min + kDecayLog + vb) / b);
        } else {
            dual_hi = s_max + 50.0;
            dual_tail_est = kPlusInfinity;
        }
    }
    if (!(dual_hi > dual_lo)) throw std::invalid_argument("degenerate dual window");

    ConvexGridFunction conj = legendre_transform(V, dual_lo, dual_hi, g.axis().samples);
    MassResult dual =
        window_mass(conj.grid(), conj.grid().window_first(), conj.grid().window_last());

    double Z = std::exp(primal.log_mass);
    double Zs = std::exp(dual.log_mass);
    double product = std::exp(primal.log_mass + dual.log_mass);
    double product_half = std::exp(primal.half_log_mass + dual.half_log_mass);

    // Truncation estimates: continuing exponential tails beyond the window.
    double primal_tail = 0.0;
    if (left_truncated) primal_tail += std::exp(-g[wf]) / std::max(-s_min, 1e-9);
    if (right_truncated) primal_tail += std::exp(-g[wl]) / std::max(s_max, 1e-9);
    double dual_tail = 0.0;
    if (!left_truncated && is_finite_value(dual_tail_est)) {
        double gv = conj.grid()[conj.grid().window_first()];
        double slope = std::abs(g.window_lo());
        dual_tail += std::exp(-gv) / std::max(slope, 1e-9);
    }
    if (!right_truncated && is_finite_value(dual_tail_est)) {
        double gv = conj.grid()[conj.grid().window_last()];
        dual_tail += std::exp(-gv) / std::max(std::abs(g.window_hi()), 1e-9);
    }

    double richardson = std::abs(product - product_half);
    double err = richardson + Zs * primal_tail + Z * dual_tail;

    bool even = is_even_potential(g);
    double c = c_opt.value_or(even ? 4.0 : std::exp(1.0));
    double tolerance = tol_opt.value_or(policy_tolerance(err));

    std::vector<std::pair<std::string, double>> q{
        {"Z", Z},
        {"Zstar", Zs},
        {"product", product},
        {"c", c},
        {"even", even ? 1.0 : 0.0},
        {"dual_lo", dual_lo},
        {"dual_hi", dual_hi},
    };
    if (!is_finite_value(dual_tail_est)) q.emplace_back("dual_mass_lower_bound_only", 1.0);
    return VerificationReport("santalo_product", std::move(q), product - c, tolerance, err);
}

// ---------------------------------------------------------------------------
// basic identity

VerificationReport basic_identity_residual(const LogConcaveMeasure& m, double tolerance) {
    const GridFunction& g = m.potential().grid();
    ConvexGridFunction vstar = legendre_transform(m.potential(), default_dual_axis(g));

    std::size_t n = m.node_count();
    std::vector<double> slope(n), young(n), vstar_of_slope(n), xslope(n), pot(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t gi = m.support_first() + i;
        std::size_t cell = gi > g.window_first() ? gi - 1 : gi;
        slope[i] = g.cell_slope(cell);
        double x = m.node_coord(i);
        pot[i] = m.node_potential(i);
        vstar_of_slope[i] = vstar.value_at(slope[i]);
        xslope[i] = x * slope[i];
        young[i] = vstar_of_slope[i] + pot[i] - xslope[i];
    }
    double int_vstar = m.expectation(vstar_of_slope);
    double transport = m.expectation(xslope);
    double H = entropy(m);
    double minus_logZ = -m.log_normalizer();
    double residual = minus_logZ - (-int_vstar + transport + H);

    // The residual telescopes to the Young-gap integral, so its quadrature
    // error is estimated on that single integrand.
    std::vector<double> yr(n);
    for (std::size_t i = 0; i < n; ++i) yr[i] = young[i] * m.density_at_node(i);
    double full = simpson(yr, g.step());
    double half = strided_simpson(yr, g.step(), 2);
    double err = std::abs(full - half);

    bool ess = essential_continuity_check(m);
    std::vector<std::pair<std::string, double>> q{
        {"minus_log_Z", minus_logZ},
        {"int_Vstar_dnu", int_vstar},
        {"transport_cost", transport},
        {"entropy", H},
        {"essentially_continuous", ess ? 1.0 : 0.0},
        {"transport_minus_dim", transport - 1.0},
        {"residual", residual},
    };
    return VerificationReport("basic_identity", std::move(q), -std::abs(residual), tolerance,
                              err);
}

// ---------------------------------------------------------------------------
// entropy-transport deficit

VerificationReport et_deficit(const LogConcaveMeasure& m1, const LogConcaveMeasure& m2,
                              std::optional<double> c_opt, std::size_t resolution,
                              std::optional<double> tol_opt) {
    if (!essential_continuity_check(m1) || !essential_continuity_check(m2))
        throw std::invalid_argument("entropy-transport requires essentially continuous measures");

    QuantileMeasure nu1 = moment_measure(m1, resolution);
    QuantileMeasure nu2 = moment_measure(m2, resolution);
    auto [transport, tail] = quantile_correlation_with_tail(nu1, nu2);
    if (tail > 1e-4 * std::abs(transport))
        throw std::invalid_argument("moment measures fail the second-moment tail check");

    QuantileMeasure h1 = moment_measure(m1, resolution / 2);
    QuantileMeasure h2 = moment_measure(m2, resolution / 2);
    double transport_half = quantile_correlation_with_tail(h1, h2).first;

    double H1 = entropy(m1), H2 = entropy(m2);
    bool even = is_even_potential(m1.potential().grid()) && is_even_potential(m2.potential().grid());
    double c = c_opt.value_or(even ? 4.0 : std::exp(1.0));

    double deficit = transport - std::log(c * std::exp(2.0)) - H1 - H2;
    double err = std::abs(transport - transport_half) + tail;
    double tolerance = tol_opt.value_or(policy_tolerance(err));

    std::vector<std::pair<std::string, double>> q{
        {"H1", H1},       {"H2", H2},
        {"transport_cost", transport}, {"tail_estimate", tail},
        {"c", c},
    };
    return VerificationReport("et_deficit", std::move(q), deficit, tolerance, err);
}

// ---------------------------------------------------------------------------
// profile integrals and verifiers

double integral_log_profile(const Profile& f) {
    const auto& v = f.values();
    double h = f.cell_width();
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < v.size(); ++j) acc += integral_log_linear(v[j], v[j + 1], h);
    return acc;
}

double integral_slope_product(const Profile& f1, const Profile& f2) {
    if (f1.cells() != f2.cells()) throw std::invalid_argument("profiles on mismatched grids");
    double h = f1.cell_width();
    double acc = 0.0;
    for (std::size_t j = 0; j < f1.cells(); ++j) acc += f1.slope(j) * f2.slope(j) * h;
    return acc;
}

namespace {

void require_positive_interior(const Profile& f) {
    const auto& v = f.values();
    for (std::size_t j = 1; j + 1 < v.size(); ++j)
        if (v[j] <= 0.0)
            throw std::invalid_argument("profile vanishes on an interior interval");
}

// int_0^x f1' f2' dt with the final partial cell handled exactly
// (slopes are constant on cells).
double prefix_slope_product(const Profile& f1, const Profile& f2, double x) {
    double h = f1.cell_width();
    double acc = 0.0;
    std::size_t full = static_cast<std::size_t>(x / h);
    full = std::min(full, f1.cells());
    for (std::size_t j = 0; j < full; ++j) acc += f1.slope(j) * f2.slope(j) * h;
    double rem = x - static_cast<double>(full) * h;
    if (rem > 0.0 && full < f1.cells()) acc += f1.slope(full) * f2.slope(full) * rem;
    return acc;
}

// Primitive of log(2-2t).
double primitive_log_2m2t(double t) { return (t - 1.0) * std::log(2.0 - 2.0 * t) - t; }
// Primitive of phi(t) = 1 - log 2 - log(1-t).
double primitive_phi(double t) {
    double one_m = 1.0 - t;
    double tail = one_m > 0.0 ? one_m * std::log(one_m) : 0.0;
    return t * (2.0 - std::log(2.0)) + tail;
}

// Sum of s(j)-weighted closed-form cell integrals of w over [0, 1/2].
template <typename Primitive, typename SlopeAt>
double half_weighted(const Profile& ref, Primitive W, SlopeAt s) {
    double h = ref.cell_width();
    double acc = 0.0;
    for (std::size_t j = 0; j < ref.cells(); ++j) {
        double a = static_cast<double>(j) * h;
        if (a >= 0.5) break;
        double b = std::min(0.5, a + h);
        acc += s(j) * (W(b) - W(a));
    }
    return acc;
}

}  // namespace

VerificationReport profile_inequality_gap(const Profile& f1, const Profile& f2,
                                          std::optional<double> c_opt,
                                          std::optional<double> tol_opt) {
    if (f1.cells() != f2.cells()) throw std::invalid_argument("profiles on mismatched grids");
    require_positive_interior(f1);
    require_positive_interior(f2);

    double int_log = integral_log_profile(f1) + integral_log_profile(f2);
    double int_slopes = integral_slope_product(f1, f2);

    bool sym = f1.symmetric() && f2.symmetric();
    double c = c_opt.value_or(sym ? 4.0 : std::exp(1.0));
    double deficit = -std::log(std::exp(2.0) * c) + int_slopes - int_log;

    // Half-resolution re-run (every other node) for the error estimate.
    double err = 0.0;
    if (f1.cells() % 2 == 0 && f1.cells() >= 8) {
        auto halve = [](const Profile& f) {
            std::vector<double> v;
            for (std::size_t j = 0; j <= f.cells(); j += 2) v.push_back(f.values()[j]);
            return Profile(v, f.boundary_violated_lo(), f.boundary_violated_hi(), 1e-4);
        };
        Profile h1 = halve(f1), h2 = halve(f2);
        double d_half = -std::log(std::exp(2.0) * c) + integral_slope_product(h1, h2) -
                        integral_log_profile(h1) - integral_log_profile(h2);
        err = std::abs(deficit - d_half);
    }
    double tolerance = tol_opt.value_or(policy_tolerance(err));

    std::vector<std::pair<std::string, double>> q{
        {"int_log_f1f2", int_log},
        {"int_f1p_f2p", int_slopes},
        {"c", c},
        {"symmetric", sym ? 1.0 : 0.0},
        {"boundary_violated", (f1.boundary_violated() || f2.boundary_violated()) ? 1.0 : 0.0},
    };
    return VerificationReport("profile_inequality", std::move(q), deficit, tolerance, err);
}

VerificationReport correlation_check(std::span<const double> h, std::span<const double> k,
                                     std::span<const double> w) {
    if (h.size() != k.size() || h.size() != w.size() || h.empty())
        throw std::invalid_argument("tables must have equal nonzero length");
    auto direction = [](std::span<const double> t) {
        int dir = 0;
        for (std::size_t i = 1; i < t.size(); ++i) {
            if (t[i] > t[i - 1]) {
                if (dir < 0) return 2;  // mixed
                dir = 1;
            } else if (t[i] < t[i - 1]) {
                if (dir > 0) return 2;
                dir = -1;
            }
        }
        return dir;
    };
    int dh = direction(h), dk = direction(k);
    if (dh == 2 || dk == 2 || dh * dk < 0)
        throw std::invalid_argument("mixed monotonicity");

    double mu = 0.0, swh = 0.0, swk = 0.0, swhk = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (w[i] < 0.0) throw std::invalid_argument("weights must be nonnegative");
        mu += w[i];
        swh += w[i] * h[i];
        swk += w[i] * k[i];
        swhk += w[i] * h[i] * k[i];
        scale = std::max(scale, std::abs(h[i]) * std::abs(k[i]));
    }
    double deficit = mu * swhk - swh * swk;
    double tolerance = 1e-12 * std::max(1.0, mu * mu * scale);
    std::vector<std::pair<std::string, double>> q{
        {"mu_total", mu}, {"sum_wh", swh}, {"sum_wk", swk}, {"sum_whk", swhk}};
    return VerificationReport("correlation", std::move(q), deficit, tolerance, 0.0);
}

VerificationReport chebyshev_pointwise_bound(const Profile& f1, const Profile& f2, double x,
                                             double tolerance) {
    if (f1.cells() != f2.cells()) throw std::invalid_argument("profiles on mismatched grids");
    if (!(x > 0.0) || x > 1.0) throw std::invalid_argument("x must lie in (0, 1]");
    double lhs = f1(x) * f2(x);
    double rhs = x * prefix_slope_product(f1, f2, x);
    std::vector<std::pair<std::string, double>> q{{"x", x}, {"product", lhs}, {"bound", rhs}};
    return VerificationReport("pointwise_product_bound", std::move(q), rhs - lhs, tolerance, 0.0);
}

VerificationReport weighted_product_gap(const Profile& f, const Profile& g, double tolerance) {
    if (f.cells() != g.cells()) throw std::invalid_argument("profiles on mismatched grids");
    auto prod_slope = [&](std::size_t j) { return f.slope(j) * g.slope(j); };
    double lhs = half_weighted(f, primitive_log_2m2t, prod_slope);
    double rhs = half_weighted(f, [](double t) { return t; }, prod_slope);
    double int_f_phi = half_weighted(f, primitive_phi, [&](std::size_t j) { return f.slope(j); });
    double int_g_phi = half_weighted(g, primitive_phi, [&](std::size_t j) { return g.slope(j); });
    double int_fg_phi = half_weighted(f, primitive_phi, prod_slope);
    std::vector<std::pair<std::string, double>> q{
        {"lhs_weighted", lhs},     {"rhs", rhs},
        {"int_fprime_phi", int_f_phi}, {"int_gprime_phi", int_g_phi},
        {"int_product_phi", int_fg_phi},
    };
    return VerificationReport("weighted_product", std::move(q), rhs - lhs, tolerance, 0.0);
}

// ---------------------------------------------------------------------------
// unconditional induction

UnconditionalPotential::UnconditionalPotential(ConvexGridFunction potential)
    : V_(std::move(potential)) {
    const GridFunction& g = V_.grid();
    if (g.dim() < 2) throw std::invalid_argument("unconditional potential needs dimension 2 or 3");
    for (std::size_t d = 0; d < g.dim(); ++d)
        if (std::abs(g.axis(d).lo) > 1e-12 * g.axis(d).hi)
            throw std::invalid_argument("unconditional potential must live on [0,R]^n");
    // monotone in each coordinate
    monotone_ = true;
    const auto& v = g.values();
    std::vector<std::size_t> dims(g.dim());
    for (std::size_t d = 0; d < g.dim(); ++d) dims[d] = g.axis(d).samples;
    std::vector<std::size_t> strides(g.dim(), 1);
    for (std::size_t d = g.dim() - 1; d-- > 0;) strides[d] = strides[d + 1] * dims[d + 1];
    for (std::size_t d = 0; d < g.dim() && monotone_; ++d) {
        for (std::size_t flat = 0; flat < v.size() && monotone_; ++flat) {
            std::size_t coord = (flat / strides[d]) % dims[d];
            if (coord + 1 == dims[d]) continue;
            if (v[flat + strides[d]] < v[flat] - 1e-9 * (1.0 + std::abs(v[flat])))
                monotone_ = false;
        }
    }
}

namespace {

GridFunction face_slice(const GridFunction& g, std::size_t axis) {
    std::vector<GridAxis> axes;
    for (std::size_t d = 0; d < g.dim(); ++d)
        if (d != axis) axes.push_back(g.axis(d));
    std::vector<std::size_t> dims(g.dim());
    for (std::size_t d = 0; d < g.dim(); ++d) dims[d] = g.axis(d).samples;
    std::vector<std::size_t> strides(g.dim(), 1);
    for (std::size_t d = g.dim() - 1; d-- > 0;) strides[d] = strides[d + 1] * dims[d + 1];

    std::size_t count = 1;
    for (const auto& a : axes) count *= a.samples;
    std::vector<double> vals(count);
    // iterate over the remaining axes in row-major order
    std::vector<std::size_t> idx(axes.size(), 0);
    for (std::size_t out = 0; out < count; ++out) {
        std::size_t flat = 0, k = 0;
        for (std::size_t d = 0; d < g.dim(); ++d) {
            if (d == axis) continue;
            flat += idx[k] * strides[d];
            ++k;
        }
        vals[out] = g.values()[flat];
        for (std::size_t d = axes.size(); d-- > 0;) {
            if (++idx[d] < axes[d].samples) break;
            idx[d] = 0;
        }
    }
    if (axes.size() == 1) return GridFunction(axes[0], std::move(vals));
    return GridFunction(std::move(axes), std::move(vals));
}

double min_edge_slope(const GridFunction& g, std::size_t axis) {
    std::size_t n = g.axis(axis).samples;
    double h = g.axis(axis).step();
    std::size_t inner = 1, outer = 1;
    for (std::size_t d = axis + 1; d < g.dim(); ++d) inner *= g.axis(d).samples;
    for (std::size_t d = 0; d < axis; ++d) outer *= g.axis(d).samples;
    double best = kPlusInfinity;
    const auto& v = g.values();
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t i = 0; i < inner; ++i) {
            const double* base = v.data() + o * n * inner + i;
            double s = (base[(n - 1) * inner] - base[(n - 2) * inner]) / h;
            best = std::min(best, s);
        }
    return best;
}

}  // namespace

VerificationReport unconditional_verify(const UnconditionalPotential& U,
                                        const std::vector<double>& t_samples, double tolerance) {
    if (!U.monotone())
        throw std::invalid_argument("potential must be nondecreasing in each coordinate");
    const ConvexGridFunction& V = U.potential();
    const GridFunction& g = V.grid();
    std::size_t n = g.dim();
    double nd = static_cast<double>(n);

    // Dual box per axis: never beyond the smallest far-edge slope (the
    // conjugate past it is a truncation artifact of the box), and no further
    // than e^{-t V*} needs to decay, so steep potentials keep a fine dual
    // step where the dual mass actually lives.
    double t_min = t_samples.empty() ? 1.0 : t_samples[0];
    for (double t : t_samples) t_min = std::min(t_min, t);
    double threshold = kDecayLog / (0.99 * t_min);
    std::vector<GridAxis> dual(n);
    for (std::size_t d = 0; d < n; ++d) {
        double s = min_edge_slope(g, d);
        if (!(s > 0.0)) throw std::invalid_argument("potential has a flat far edge");
        // conjugate along the axis ray = 1D conjugate of the origin slice
        // (the potential is nondecreasing, so the inner min sits at 0)
        std::size_t nd = g.axis(d).samples, inner = 1;
        for (std::size_t e = d + 1; e < n; ++e) inner *= g.axis(e).samples;
        std::vector<double> xs(nd), vs(nd);
        for (std::size_t i = 0; i < nd; ++i) {
            xs[i] = g.axis(d).coord(i);
            vs[i] = g.values()[i * inner];
        }
        const std::size_t probe = 1024;
        std::vector<double> ys(probe), ray(probe);
        for (std::size_t j = 0; j < probe; ++j)
            ys[j] = s * static_cast<double>(j + 1) / static_cast<double>(probe);
        conjugate_cloud(xs.data(), vs.data(), nd, ys.data(), probe, ray.data());
        double hi = s;
        for (std::size_t j = 0; j < probe; ++j)
            if (ray[j] >= threshold) {
                hi = ys[j];
                break;
            }
        dual[d] = GridAxis{0.0, hi, g.axis(d).samples};
    }
    ConvexGridFunction conj = legendre_transform(V, dual);

    auto mass = [](const GridFunction& f, double t) {
        return tensor_integral(f, [t](double v) { return std::exp(-t * v); }, Rule::Boole);
    };

    std::vector<GridFunction> faces, dual_faces;
    for (std::size_t d = 0; d < n; ++d) {
        faces.push_back(face_slice(g, d));
        dual_faces.push_back(face_slice(conj.grid(), d));
    }

    std::vector<std::pair<std::string, double>> q;
    double worst = kPlusInfinity;

    auto F_of = [&](double t) { return std::pow(t, 2.0 * nd) * mass(g, t) * mass(conj.grid(), t); };

    for (double t : t_samples) {
        const double ht = 0.002 * t;  // relative step: the masses scale like t^-n
        double a = mass(g, t);
        double alpha = mass(conj.grid(), t);
        double F = std::pow(t, 2.0 * nd) * a * alpha;
        q.emplace_back(tlabel("a", t), a);
        q.emplace_back(tlabel("alpha", t), alpha);
        q.emplace_back(tlabel("F", t), F);

        double a_plus = mass(g, t + ht), a_minus = mass(g, t - ht);
        double alpha_plus = mass(conj.grid(), t + ht), alpha_minus = mass(conj.grid(), t - ht);
        double F_plus = std::pow(t + ht, 2.0 * nd) * a_plus * alpha_plus;
        double F_minus = std::pow(t - ht, 2.0 * nd) * a_minus * alpha_minus;
        double Fprime = (F_plus - F_minus) / (2.0 * ht);
        double growth_margin = Fprime - nd * std::pow(t, nd - 1.0) + tolerance;
        q.emplace_back(tlabel("Fprime", t), Fprime);
        worst = std::min(worst, growth_margin);

        // Jensen step: a'/a + n/t >= V*(G(t)/(t a(t)))
        double aprime = (a_plus - a_minus) / (2.0 * ht);
        std::vector<double> z(n);
        for (std::size_t d = 0; d < n; ++d) {
            double a_d = mass(faces[d], t);
            q.emplace_back(tlabel(("a_" + std::to_string(d + 1)).c_str(), t), a_d);
            z[d] = a_d / (t * a);
            z[d] = std::min(z[d], dual[d].hi);  // clamp to the sampled dual box
        }
        double jensen = aprime / a + nd / t - conj.grid().value_at(z);
        q.emplace_back(tlabel("jensen_residual", t), jensen);
        worst = std::min(worst, jensen + tolerance);

        for (std::size_t d = 0; d < n; ++d) {
            double alpha_d = mass(dual_faces[d], t);
            q.emplace_back(tlabel(("alpha_" + std::to_string(d + 1)).c_str(), t), alpha_d);
        }
    }

    double F1 = F_of(1.0);
    q.emplace_back("F(1)", F1);
    worst = std::min(worst, F1 - 1.0 + tolerance);

    // Facial conjugate identity (V_i)* = (V*)_i on the dual face grids.
    for (std::size_t d = 0; d < n; ++d) {
        std::vector<GridAxis> face_dual;
        for (std::size_t e = 0; e < n; ++e)
            if (e != d) face_dual.push_back(dual[e]);
        ConvexGridFunction face_conj = legendre_transform(
            ConvexGridFunction(faces[d], V.convexity_tol()), face_dual);
        double sup = 0.0;
        for (std::size_t i = 0; i < face_conj.values().size(); ++i)
            sup = std::max(sup, std::abs(face_conj.values()[i] - dual_faces[d].values()[i]));
        q.emplace_back("facial_gap_" + std::to_string(d + 1), sup);
        worst = std::min(worst, tolerance - sup);
    }

    // Margins already include the tolerance, so the report passes iff every
    // margin is nonnegative.
    return VerificationReport("unconditional_induction", std::move(q), worst, 0.0, 0.0);
}

// ---------------------------------------------------------------------------
// random profiles

Profile random_concave_profile(std::uint64_t seed, bool symmetric, std::size_t cells) {
    SplitMix64 rng(seed);
    std::size_t n = cells;
    std::vector<double> s(n);
    if (symmetric) {
        std::size_t half = n / 2;
        for (std::size_t j = 0; j < half; ++j) s[j] = rng.uniform();
        std::sort(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(half),
                  std::greater<double>());
        for (std::size_t j = 0; j < half; ++j) s[n - 1 - j] = -s[j];
        if (n % 2 == 1) s[half] = 0.0;
    } else {
        for (std::size_t j = 0; j < n; ++j) s[j] = rng.uniform();
        std::sort(s.begin(), s.end(), std::greater<double>());
        double mean = 0.0;
        for (double x : s) mean += x;
        mean /= static_cast<double>(n);
        for (double& x : s) x -= mean;
    }
    double h = 1.0 / static_cast<double>(n);
    std::vector<double> f(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) f[j + 1] = f[j] + s[j] * h;
    // remove cumulative drift with a linear tilt (keeps concavity), then pin
    // the endpoints to exact zero
    double drift = f[n];
    for (std::size_t j = 0; j <= n; ++j)
        f[j] -= drift * static_cast<double>(j) / static_cast<double>(n);
    f[0] = 0.0;
    f[n] = 0.0;
    for (std::size_t j = 1; j < n; ++j) f[j] = std::max(f[j], 0.0);
    return Profile(std::move(f));
}

}  // namespace santalo

#include "santalo/convex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace santalo {

namespace {

// Direction stencils for the discrete convexity check.
const std::vector<std::vector<std::vector<int>>> kDirections = {
    {{1}},
    {{0, 1}, {1, 0}, {1, 1}, {1, -1}},
    {{0, 0, 1},
     {0, 1, 0},
     {1, 0, 0},
     {0, 1, 1},
     {0, 1, -1},
     {1, 0, 1},
     {1, 0, -1},
     {1, 1, 0},
     {1, -1, 0},
     {1, 1, 1},
     {1, 1, -1},
     {1, -1, 1},
     {1, -1, -1}},
};

}  // namespace

ConvexGridFunction::ConvexGridFunction(GridFunction base, double convexity_tol)
    : base_(std::move(base)), tol_(convexity_tol) {
    if (tol_ < 0.0) throw std::invalid_argument("convexity tolerance must be >= 0");
    const auto& axes = base_.axes();
    const auto& v = base_.values();
    std::vector<std::size_t> dims(axes.size());
    for (std::size_t d = 0; d < axes.size(); ++d) dims[d] = axes[d].samples;

    std::vector<std::size_t> strides(axes.size(), 1);
    for (std::size_t d = axes.size() - 1; d-- > 0;) strides[d] = strides[d + 1] * dims[d + 1];

    std::vector<std::size_t> idx(axes.size(), 0);
    const auto& dirs = kDirections[axes.size() - 1];
    for (std::size_t flat = 0; flat < v.size(); ++flat) {
        double center = v[flat];
        if (is_finite_value(center)) {
            for (const auto& dir : dirs) {
                bool ok = true;
                long off = 0;
                for (std::size_t d = 0; d < axes.size() && ok; ++d) {
                    long j = static_cast<long>(idx[d]) + dir[d];
                    long jm = static_cast<long>(idx[d]) - dir[d];
                    if (j < 0 || jm < 0 || j >= static_cast<long>(dims[d]) ||
                        jm >= static_cast<long>(dims[d]))
                        ok = false;
                    off += dir[d] * static_cast<long>(strides[d]);
                }
                if (!ok) continue;
                double vp = v[flat + off];
                double vm = v[flat - off];
                if (!is_finite_value(vp) || !is_finite_value(vm)) continue;
                double second = vp + vm - 2.0 * center;
                if (second < -tol_ * (1.0 + std::abs(center)))
                    throw std::invalid_argument("function is not discretely convex");
            }
        }
        for (std::size_t d = axes.size(); d-- > 0;) {
            if (++idx[d] < dims[d]) break;
            idx[d] = 0;
        }
    }
}

void conjugate_cloud(const double* xs, const double* vs, std::size_t n, const double* ys,
                     std::size_t m, double* out) {
    // Lower convex hull by monotone chain; collinear middle points are
    // dropped, so equal slopes keep the leftmost breakpoint.
    static thread_local std::vector<double> hx, hv;
    hx.clear();
    hv.clear();
    for (std::size_t i = 0; i < n; ++i) {
        double x = xs[i], v = vs[i];
        while (hx.size() >= 2) {
            double x1 = hx[hx.size() - 2], v1 = hv[hv.size() - 2];
            double x2 = hx.back(), v2 = hv.back();
            // pop if slope(1->2) >= slope(2->new)
            if ((v2 - v1) * (x - x2) >= (v - v2) * (x2 - x1)) {
                hx.pop_back();
                hv.pop_back();
            } else {
                break;
            }
        }
        hx.push_back(x);
        hv.push_back(v);
    }
    std::size_t h = hx.size();
    std::size_t k = 0;
    for (std::size_t j = 0; j < m; ++j) {
        double y = ys[j];
        while (k + 1 < h && (hv[k + 1] - hv[k]) < y * (hx[k + 1] - hx[k])) ++k;
        out[j] = hx[k] * y - hv[k];
    }
}

GridAxis default_dual_axis(const GridFunction& f, std::size_t samples) {
    if (f.dim() != 1) throw std::invalid_argument("default_dual_axis is 1D only");
    if (samples == 0) samples = f.axis().samples;
    double lo = f.min_window_slope() - 1.0;
    double hi = f.max_window_slope() + 1.0;
    return GridAxis{lo, hi, samples};
}

namespace {

// Transform `axis` of a raw array: out(y; rest) = max_x (x*y - in(x; rest)).
// Rows with no finite entry produce -inf (meaningful only mid-sweep).
void sweep_axis(const std::vector<double>& in, const std::vector<GridAxis>& in_axes,
                std::size_t axis, const GridAxis& dual, std::vector<double>& out,
                std::vector<GridAxis>& out_axes) {
    std::size_t n = in_axes[axis].samples;
    std::size_t m = dual.samples;
    std::size_t inner = 1, outer = 1;
    for (std::size_t d = axis + 1; d < in_axes.size(); ++d) inner *= in_axes[d].samples;
    for (std::size_t d = 0; d < axis; ++d) outer *= in_axes[d].samples;

    out_axes = in_axes;
    out_axes[axis] = dual;
    out.assign(outer * m * inner, -kPlusInfinity);

    std::vector<double> xs(n), vs(n), ys(m), res(m);
    for (std::size_t j = 0; j < m; ++j) ys[j] = dual.coord(j);

    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t i = 0; i < inner; ++i) {
            std::size_t cnt = 0;
            const double* base = in.data() + o * n * inner + i;
            for (std::size_t x = 0; x < n; ++x) {
                double v = base[x * inner];
                if (is_finite_value(v) && v != -kPlusInfinity) {
                    xs[cnt] = in_axes[axis].coord(x);
                    vs[cnt] = v;
                    ++cnt;
                }
            }
            double* dst = out.data() + o * m * inner + i;
            if (cnt == 0) {
                for (std::size_t j = 0; j < m; ++j) dst[j * inner] = -kPlusInfinity;
                continue;
            }
            conjugate_cloud(xs.data(), vs.data(), cnt, ys.data(), m, res.data());
            for (std::size_t j = 0; j < m; ++j) dst[j * inner] = res[j];
        }
    }
}

}  // namespace

ConvexGridFunction legendre_transform(const ConvexGridFunction& f,
                                      const std::vector<GridAxis>& dual_axes) {
    const GridFunction& g = f.grid();
    if (dual_axes.size() != g.dim())
        throw std::invalid_argument("dual axis count must match dimension");
    for (const auto& a : dual_axes) {
        if (!(a.hi > a.lo)) throw std::invalid_argument("dual grid requires hi > lo");
        a.validate();
    }
    if (!g.has_finite_values()) throw std::invalid_argument("degenerate function");

    std::vector<double> cur = g.values();
    std::vector<GridAxis> cur_axes = g.axes();
    for (std::size_t d = 0; d < g.dim(); ++d) {
        std::vector<double> next;
        std::vector<GridAxis> next_axes;
        sweep_axis(cur, cur_axes, d, dual_axes[d], next, next_axes);
        if (d + 1 < g.dim()) {
            for (double& v : next) v = -v;  // nest the per-axis maxima
        }
        cur = std::move(next);
        cur_axes = std::move(next_axes);
    }
    for (double v : cur)
        if (v == -kPlusInfinity)
            throw std::invalid_argument("degenerate function");
    return ConvexGridFunction(GridFunction(cur_axes, std::move(cur)),
                              std::max(f.convexity_tol(), kDefaultConvexityTol));
}

ConvexGridFunction legendre_transform(const ConvexGridFunction& f, double dual_lo,
                                      double dual_hi, std::size_t dual_samples) {
    if (f.dim() != 1) throw std::invalid_argument("scalar overload is 1D only");
    if (!(dual_hi > dual_lo)) throw std::invalid_argument("dual grid requires hi > lo");
    return legendre_transform(f, std::vector<GridAxis>{{dual_lo, dual_hi, dual_samples}});
}

ConvexGridFunction legendre_transform(const ConvexGridFunction& f, const GridAxis& dual) {
    if (f.dim() != 1) throw std::invalid_argument("axis overload is 1D only");
    return legendre_transform(f, std::vector<GridAxis>{dual});
}

namespace {

bool commensurable(double hf, double hg, double& fine, std::size_t& rf, std::size_t& rg) {
    double lo = std::min(hf, hg), hi = std::max(hf, hg);
    double ratio = hi / lo;
    double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * ratio || rounded < 1.0) return false;
    fine = lo;
    if (hf <= hg) {
        rf = 1;
        rg = static_cast<std::size_t>(rounded);
    } else {
        rf = static_cast<std::size_t>(rounded);
        rg = 1;
    }
    return true;
}

bool discretely_convex_1d(const GridFunction& f) {
    std::size_t a = f.window_first(), b = f.window_last();
    for (std::size_t i = a + 1; i < b; ++i) {
        double second = f[i - 1] + f[i + 1] - 2.0 * f[i];
        if (second < -1e-9 * (1.0 + std::abs(f[i]))) return false;
    }
    return true;
}

}  // namespace

GridFunction inf_convolution(const GridFunction& f, const GridFunction& g) {
    if (f.dim() != 1 || g.dim() != 1)
        throw std::invalid_argument("inf_convolution is 1D only");
    double fine;
    std::size_t rf, rg;
    if (!commensurable(f.step(), g.step(), fine, rf, rg))
        throw std::invalid_argument("incommensurable grids");
    if (!f.has_finite_values() && !g.has_finite_values())
        throw std::invalid_argument("both functions identically +inf");

    double lo = f.lo() + g.lo();
    double hi = f.hi() + g.hi();
    std::size_t samples = static_cast<std::size_t>(std::llround((hi - lo) / fine)) + 1;
    std::vector<double> out(samples, kPlusInfinity);

    std::size_t fa = f.window_first(), fb = f.window_last();
    std::size_t ga = g.window_first(), gb = g.window_last();

    bool fast = rf == 1 && rg == 1 && discretely_convex_1d(f) && discretely_convex_1d(g);
    if (fast) {
        // argmin of i -> f[i] + g[m-i] is nondecreasing in m for convex pairs
        std::size_t prev = fa;
        for (std::size_t m = fa + ga; m <= fb + gb; ++m) {
            std::size_t ilo = std::max(fa, m >= gb ? m - gb : std::size_t{0});
            std::size_t ihi = std::min(fb, m - ga);
            std::size_t i = std::max(prev, ilo);
            if (i > ihi) i = ihi;
            while (i < ihi && f[i + 1] + g[m - i - 1] < f[i] + g[m - i]) ++i;
            prev = i;
            out[m] = f[i] + g[m - i];
        }
    } else {
        for (std::size_t i = fa; i <= fb; ++i) {
            double fv = f[i];
            for (std::size_t j = ga; j <= gb; ++j) {
                std::size_t m = i * rf + j * rg;
                double s = fv + g[j];
                if (s < out[m]) out[m] = s;
            }
        }
    }
    return GridFunction(GridAxis{lo, lo + fine * static_cast<double>(samples - 1), samples},
                        std::move(out));
}

ConvexGridFunction moreau_yosida(const GridFunction& V, double k) {
    if (k <= 0.0) throw std::invalid_argument("Moreau-Yosida parameter must be > 0");
    if (V.dim() != 1) throw std::invalid_argument("moreau_yosida is 1D only");
    ConvexGridFunction checked(V);  // pre: convex

    double span = V.hi() - V.lo();
    double h = V.step();
    std::size_t n = V.axis().samples;
    std::size_t qn = 2 * n - 1;
    std::vector<double> quad(qn);
    for (std::size_t i = 0; i < qn; ++i) {
        double y = -span + static_cast<double>(i) * h;
        quad[i] = 0.5 * k * y * y;
    }
    GridFunction env = inf_convolution(V, GridFunction(GridAxis{-span, span, qn}, std::move(quad)));

    // restrict the envelope (on [2lo-hi, 2hi-lo]) back to V's grid
    std::size_t off = static_cast<std::size_t>(std::llround((V.lo() - env.lo()) / h));
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = V.axis().coord(i);
        vals[i] = env[off + i] + x * x / (2.0 * k);
    }
    return ConvexGridFunction(GridFunction(V.axis(), std::move(vals)));
}

double young_gap(const ConvexGridFunction& f, const ConvexGridFunction& fstar, double x,
                 double y) {
    double fx = f.value_at(x);
    double fy = fstar.value_at(y);
    return ext_add(fx, fy) - x * y;
}

}  // namespace santalo

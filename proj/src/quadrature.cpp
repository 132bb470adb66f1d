#include "santalo/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace santalo {

double simpson(std::span<const double> v, double step) {
    std::size_t n = v.size();
    if (n < 2) return 0.0;
    if (n == 2) return 0.5 * step * (v[0] + v[1]);
    std::size_t intervals = n - 1;
    double acc = 0.0;
    std::size_t limit = intervals;
    bool tail38 = (intervals % 2 != 0);
    if (tail38) {
        if (intervals >= 3)
            limit = intervals - 3;
        else
            return 0.5 * step * (v[0] + v[1]);  // n == 2 handled above; n==2 only
    }
    for (std::size_t i = 0; i + 2 <= limit; i += 2)
        acc += (step / 3.0) * (v[i] + 4.0 * v[i + 1] + v[i + 2]);
    if (tail38) {
        std::size_t i = limit;
        acc += (3.0 * step / 8.0) * (v[i] + 3.0 * v[i + 1] + 3.0 * v[i + 2] + v[i + 3]);
    }
    return acc;
}

double boole(std::span<const double> v, double step) {
    std::size_t n = v.size();
    if (n < 5) return simpson(v, step);
    std::size_t intervals = n - 1;
    std::size_t quads = intervals / 4;
    double acc = 0.0;
    for (std::size_t q = 0; q < quads; ++q) {
        std::size_t i = 4 * q;
        acc += (2.0 * step / 45.0) *
               (7.0 * v[i] + 32.0 * v[i + 1] + 12.0 * v[i + 2] + 32.0 * v[i + 3] + 7.0 * v[i + 4]);
    }
    std::size_t done = 4 * quads;
    if (done < intervals) acc += simpson(v.subspan(done), step);
    return acc;
}

double midpoint_unit(std::span<const double> mids) {
    if (mids.empty()) throw std::invalid_argument("empty midpoint table");
    double acc = 0.0;
    for (double m : mids) acc += m;
    return acc / static_cast<double>(mids.size());
}

std::vector<double> cumulative_trapezoid(std::span<const double> v, double step) {
    std::vector<double> out(v.size(), 0.0);
    for (std::size_t i = 1; i < v.size(); ++i)
        out[i] = out[i - 1] + 0.5 * step * (v[i - 1] + v[i]);
    return out;
}

double integral_log_linear(double f0, double f1, double h) {
    if (h == 0.0) return 0.0;
    if (f0 < 0.0 || f1 < 0.0) throw std::invalid_argument("log of negative value");
    if (f0 == 0.0 && f1 == 0.0)
        throw std::invalid_argument("log integrand vanishes on a cell");
    // int_0^1 log(f0 + (f1-f0)u) du = (f1 log f1 - f0 log f0)/(f1-f0) - 1
    double d = f1 - f0;
    double mid = 0.5 * (f0 + f1);
    if (std::abs(d) < 1e-7 * mid) {
        double r = d / mid;  // series in the relative slope
        return h * (std::log(mid) - r * r / 24.0);
    }
    double t1 = (f1 > 0.0) ? f1 * std::log(f1) : 0.0;
    double t0 = (f0 > 0.0) ? f0 * std::log(f0) : 0.0;
    return h * ((t1 - t0) / d - 1.0);
}

std::vector<double> composite_weights(std::size_t n, double step, Rule rule) {
    std::vector<double> w(n, 0.0);
    auto add_simpson = [&](std::size_t from, std::size_t to) {
        // [from, to] with even interval count, plus 3/8 tail handling
        std::size_t intervals = to - from;
        std::size_t limit = intervals;
        bool tail38 = (intervals % 2 != 0);
        if (tail38 && intervals >= 3) limit = intervals - 3;
        if (tail38 && intervals < 3) {
            w[from] += step / 2.0;
            w[to] += step / 2.0;
            return;
        }
        for (std::size_t i = from; i + 2 <= from + limit; i += 2) {
            w[i] += step / 3.0;
            w[i + 1] += 4.0 * step / 3.0;
            w[i + 2] += step / 3.0;
        }
        if (tail38) {
            std::size_t i = from + limit;
            w[i] += 3.0 * step / 8.0;
            w[i + 1] += 9.0 * step / 8.0;
            w[i + 2] += 9.0 * step / 8.0;
            w[i + 3] += 3.0 * step / 8.0;
        }
    };
    if (rule == Rule::Simpson || n < 5) {
        add_simpson(0, n - 1);
        return w;
    }
    std::size_t intervals = n - 1;
    std::size_t quads = intervals / 4;
    for (std::size_t q = 0; q < quads; ++q) {
        std::size_t i = 4 * q;
        w[i] += 14.0 * step / 45.0;
        w[i + 1] += 64.0 * step / 45.0;
        w[i + 2] += 24.0 * step / 45.0;
        w[i + 3] += 64.0 * step / 45.0;
        w[i + 4] += 14.0 * step / 45.0;
    }
    if (4 * quads < intervals) add_simpson(4 * quads, n - 1);
    return w;
}

double tensor_integral(const GridFunction& f, const std::function<double(double)>& g, Rule rule) {
    std::size_t d = f.dim();
    std::vector<std::vector<double>> w(d);
    for (std::size_t k = 0; k < d; ++k)
        w[k] = composite_weights(f.axis(k).samples, f.axis(k).step(), rule);
    const auto& vals = f.values();
    if (d == 1) {
        double acc = 0.0;
        for (std::size_t i = 0; i < vals.size(); ++i) acc += w[0][i] * g(vals[i]);
        return acc;
    }
    if (d == 2) {
        double acc = 0.0;
        std::size_t n1 = f.axis(1).samples;
        for (std::size_t i = 0; i < f.axis(0).samples; ++i) {
            double row = 0.0;
            const double* base = vals.data() + i * n1;
            for (std::size_t j = 0; j < n1; ++j) row += w[1][j] * g(base[j]);
            acc += w[0][i] * row;
        }
        return acc;
    }
    double acc = 0.0;
    std::size_t n1 = f.axis(1).samples, n2 = f.axis(2).samples;
    for (std::size_t i = 0; i < f.axis(0).samples; ++i) {
        double plane = 0.0;
        for (std::size_t j = 0; j < n1; ++j) {
            double row = 0.0;
            const double* base = vals.data() + (i * n1 + j) * n2;
            for (std::size_t k = 0; k < n2; ++k) row += w[2][k] * g(base[k]);
            plane += w[1][j] * row;
        }
        acc += w[0][i] * plane;
    }
    return acc;
}

}  // namespace santalo

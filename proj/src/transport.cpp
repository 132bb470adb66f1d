#include "santalo/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace santalo {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// DiscreteMeasure / Coupling

DiscreteMeasure::DiscreteMeasure(std::vector<std::vector<double>> atoms,
                                 std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
    if (atoms_.empty() || atoms_.size() != weights_.size())
        throw std::invalid_argument("atom/weight count mismatch");
    std::size_t d = atoms_[0].size();
    if (d == 0 || d > 3) throw std::invalid_argument("atom dimension must be 1..3");
    double total = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (atoms_[i].size() != d) throw std::invalid_argument("inconsistent atom dimensions");
        for (double c : atoms_[i])
            if (!std::isfinite(c)) throw std::invalid_argument("non-finite atom coordinate");
        if (!(weights_[i] > 0.0)) throw std::invalid_argument("weights must be positive");
        total += weights_[i];
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("weights must sum to 1");
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        for (std::size_t j = i + 1; j < atoms_.size(); ++j)
            if (atoms_[i] == atoms_[j]) throw std::invalid_argument("atoms must be distinct");
}

DiscreteMeasure DiscreteMeasure::scaled(double a) const {
    auto pts = atoms_;
    for (auto& p : pts)
        for (double& c : p) c *= a;
    return DiscreteMeasure(std::move(pts), weights_);
}

std::string DiscreteMeasure::to_json() const {
    nlohmann::ordered_json j;
    j["atoms"] = atoms_;
    j["weights"] = weights_;
    return j.dump();
}

DiscreteMeasure DiscreteMeasure::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    return DiscreteMeasure(j.at("atoms").get<std::vector<std::vector<double>>>(),
                           j.at("weights").get<std::vector<double>>());
}

Coupling::Coupling(std::size_t rows, std::size_t cols, std::vector<double> joint,
                   const DiscreteMeasure& m1, const DiscreteMeasure& m2)
    : rows_(rows), cols_(cols), joint_(std::move(joint)) {
    if (joint_.size() != rows_ * cols_) throw std::invalid_argument("coupling size mismatch");
    for (double p : joint_)
        if (p < -1e-12) throw std::invalid_argument("coupling has negative mass");
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += joint_[i * cols_ + j];
        if (std::abs(s - m1.weights()[i]) > 1e-10)
            throw std::invalid_argument("coupling row sums do not match first marginal");
    }
    for (std::size_t j = 0; j < cols_; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) s += joint_[i * cols_ + j];
        if (std::abs(s - m2.weights()[j]) > 1e-10)
            throw std::invalid_argument("coupling column sums do not match second marginal");
    }
}

std::string Coupling::to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < rows_; ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t c = 0; c < cols_; ++c) row.push_back(joint_[i * cols_ + c]);
        j.push_back(row);
    }
    return j.dump();
}

// ---------------------------------------------------------------------------
// Quantile correlation

std::pair<double, double> quantile_correlation_with_tail(const QuantileMeasure& q1,
                                                         const QuantileMeasure& q2) {
    if (q1.resolution() != q2.resolution())
        throw std::invalid_argument("mismatched t-grids");
    const auto& a = q1.table();
    const auto& b = q2.table();
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * b[j];
    double total = acc / static_cast<double>(a.size());
    return {total, q1.tail_estimate(q2)};
}

double quantile_correlation(const QuantileMeasure& q1, const QuantileMeasure& q2) {
    auto [total, est] = quantile_correlation_with_tail(q1, q2);
    if (est > 1e-4 * std::abs(total))
        throw std::invalid_argument("quantile tails too heavy for a reliable correlation");
    return total;
}

// ---------------------------------------------------------------------------
// Exact discrete oracle

namespace {

// Exhaustive search over permutation couplings; exact for equal weights and
// equal atom counts (Birkhoff vertices).
std::pair<double, Coupling> permutation_cost(const DiscreteMeasure& m1,
                                             const DiscreteMeasure& m2) {
    std::size_t n = m1.size();
    std::vector<std::size_t> perm(n), best(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    best = perm;
    double best_cost = -kPlusInfinity;
    do {
        double c = 0.0;
        for (std::size_t i = 0; i < n; ++i) c += dot(m1.atoms()[i], m2.atoms()[perm[i]]);
        if (c > best_cost) {
            best_cost = c;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<double> joint(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) joint[i * n + best[i]] = 1.0 / static_cast<double>(n);
    return {best_cost / static_cast<double>(n), Coupling(n, n, std::move(joint), m1, m2)};
}

// Primal network simplex on the dense bipartite transportation problem,
// minimizing sum flow*cost with cost = -x.y.
class TransportSimplex {
  public:
    TransportSimplex(const DiscreteMeasure& m1, const DiscreteMeasure& m2)
        : m_(m1.size()), n_(m2.size()), cost_(m_ * n_), flow_(m_ * n_, 0.0),
          basic_(m_ * n_, false) {
        double scale = 0.0;
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
                cost_[i * n_ + j] = -dot(m1.atoms()[i], m2.atoms()[j]);
                scale = std::max(scale, std::abs(cost_[i * n_ + j]));
            }
        eps_ = 1e-12 * std::max(scale, 1.0);
        northwest_corner(m1.weights(), m2.weights());
    }

    void solve() {
        const std::size_t cap = 2000 * (m_ + n_) * (m_ + n_);
        for (std::size_t iter = 0; iter < cap; ++iter) {
            compute_potentials();
            std::size_t enter = find_entering();
            if (enter == m_ * n_) return;
            pivot(enter);
        }
        throw std::runtime_error("transport simplex did not converge");
    }

    const std::vector<double>& flows() const { return flow_; }

  private:
    void northwest_corner(const std::vector<double>& supply, const std::vector<double>& demand) {
        std::vector<double> s = supply, d = demand;
        std::size_t i = 0, j = 0;
        while (i < m_ && j < n_) {
            double q = std::min(s[i], d[j]);
            flow_[i * n_ + j] = q;
            basic_[i * n_ + j] = true;
            s[i] -= q;
            d[j] -= q;
            if (i + 1 == m_ && j + 1 == n_) break;
            // advance one index at a time so the basis stays a spanning tree
            if (j + 1 == n_)
                ++i;
            else if (i + 1 == m_)
                ++j;
            else if (s[i] <= d[j])
                ++i;
            else
                ++j;
        }
    }

    void compute_potentials() {
        u_.assign(m_, kPlusInfinity);
        v_.assign(n_, kPlusInfinity);
        u_[0] = 0.0;
        // breadth-first over the basis tree
        std::vector<std::size_t> stack{0};  // encoded: rows 0..m-1, cols m..m+n-1
        while (!stack.empty()) {
            std::size_t node = stack.back();
            stack.pop_back();
            if (node < m_) {
                for (std::size_t j = 0; j < n_; ++j)
                    if (basic_[node * n_ + j] && !is_finite_value(v_[j])) {
                        v_[j] = cost_[node * n_ + j] - u_[node];
                        stack.push_back(m_ + j);
                    }
            } else {
                std::size_t j = node - m_;
                for (std::size_t i = 0; i < m_; ++i)
                    if (basic_[i * n_ + j] && !is_finite_value(u_[i])) {
                        u_[i] = cost_[i * n_ + j] - v_[j];
                        stack.push_back(i);
                    }
            }
        }
    }

    std::size_t find_entering() const {
        std::size_t best = m_ * n_;
        double most_negative = -eps_;
        for (std::size_t c = 0; c < m_ * n_; ++c) {
            if (basic_[c]) continue;
            double rc = cost_[c] - u_[c / n_] - v_[c % n_];
            if (rc < most_negative) {
                most_negative = rc;
                best = c;
            }
        }
        return best;
    }

    // Find the unique cycle the entering cell closes in the basis tree and
    // rotate flow around it.
    void pivot(std::size_t enter) {
        std::size_t ei = enter / n_, ej = enter % n_;
        // Path from row ei to col ej through basic cells (tree search).
        std::vector<int> prev_cell(m_ + n_, -1);
        std::vector<char> seen(m_ + n_, 0);
        std::vector<std::size_t> stack{ei};
        seen[ei] = 1;
        while (!stack.empty()) {
            std::size_t node = stack.back();
            stack.pop_back();
            if (node < m_) {
                for (std::size_t j = 0; j < n_; ++j) {
                    if (basic_[node * n_ + j] && !seen[m_ + j]) {
                        seen[m_ + j] = 1;
                        prev_cell[m_ + j] = static_cast<int>(node * n_ + j);
                        stack.push_back(m_ + j);
                    }
                }
            } else {
                std::size_t j = node - m_;
                for (std::size_t i = 0; i < m_; ++i) {
                    if (basic_[i * n_ + j] && !seen[i]) {
                        seen[i] = 1;
                        prev_cell[i] = static_cast<int>(i * n_ + j);
                        stack.push_back(i);
                    }
                }
            }
        }
        // Reconstruct the alternating cycle: entering cell plus tree path
        // from col ej back to row ei.
        std::vector<std::size_t> minus, plus{enter};
        std::size_t node = m_ + ej;
        bool backward = true;  // arcs alternate -, +, -, ...
        while (node != ei) {
            int cell = prev_cell[node];
            if (cell < 0) throw std::runtime_error("disconnected basis tree");
            (backward ? minus : plus).push_back(static_cast<std::size_t>(cell));
            node = (node >= m_) ? static_cast<std::size_t>(cell) / n_
                                : m_ + static_cast<std::size_t>(cell) % n_;
            backward = !backward;
        }
        double theta = kPlusInfinity;
        std::size_t leave = minus.front();
        for (std::size_t c : minus) {
            if (flow_[c] < theta - 1e-15) {
                theta = flow_[c];
                leave = c;
            }
        }
        for (std::size_t c : plus) flow_[c] += theta;
        for (std::size_t c : minus) flow_[c] -= theta;
        flow_[leave] = 0.0;
        basic_[leave] = false;
        basic_[enter] = true;
    }

    std::size_t m_, n_;
    std::vector<double> cost_, flow_;
    std::vector<char> basic_;
    std::vector<double> u_, v_;
    double eps_ = 1e-12;
};

}  // namespace

std::pair<double, Coupling> brute_force_cost(const DiscreteMeasure& m1,
                                             const DiscreteMeasure& m2) {
    if (m1.dim() != m2.dim()) throw std::invalid_argument("dimension mismatch");
    if (m1.size() + m2.size() > 64)
        throw std::invalid_argument("discrete oracle supports at most 64 atoms in total");

    bool equal_counts = m1.size() == m2.size();
    bool uniform = true;
    for (double w : m1.weights()) uniform = uniform && std::abs(w * m1.size() - 1.0) < 1e-12;
    for (double w : m2.weights()) uniform = uniform && std::abs(w * m2.size() - 1.0) < 1e-12;
    if (equal_counts && uniform && m1.size() <= 8) return permutation_cost(m1, m2);

    TransportSimplex simplex(m1, m2);
    simplex.solve();
    const auto& flow = simplex.flows();
    double value = 0.0;
    for (std::size_t i = 0; i < m1.size(); ++i)
        for (std::size_t j = 0; j < m2.size(); ++j)
            value += flow[i * m2.size() + j] * dot(m1.atoms()[i], m2.atoms()[j]);
    return {value, Coupling(m1.size(), m2.size(), flow, m1, m2)};
}

double potential_pair_cost(const LogConcaveMeasure& m) {
    const GridFunction& g = m.potential().grid();
    std::size_t first = m.support_first();
    std::vector<double> integrand(m.node_count());
    for (std::size_t i = 0; i < integrand.size(); ++i) {
        std::size_t gi = first + i;
        std::size_t cell = gi > g.window_first() ? gi - 1 : gi;
        integrand[i] = m.node_coord(i) * g.cell_slope(cell);
    }
    return m.expectation(integrand);
}

double dual_feasibility_gap(const DiscreteMeasure& m1, const DiscreteMeasure& m2,
                            const ConvexGridFunction& f) {
    if (m1.dim() != 1 || m2.dim() != 1 || f.dim() != 1)
        throw std::invalid_argument("dual_feasibility_gap is 1D only");
    double primal = 0.0;
    for (std::size_t i = 0; i < m1.size(); ++i) {
        double v = f.value_at(m1.atoms()[i][0]);  // throws if outside the grid
        if (!is_finite_value(v)) return kPlusInfinity;
        primal += m1.weights()[i] * v;
    }
    // Conjugate evaluated exactly at the atom positions (no dual-grid
    // interpolation); atoms must still sit inside the default dual window.
    GridAxis window = default_dual_axis(f.grid());
    std::vector<std::size_t> order(m2.size());
    std::vector<double> ys(m2.size());
    for (std::size_t j = 0; j < m2.size(); ++j) {
        ys[j] = m2.atoms()[j][0];
        if (ys[j] < window.lo || ys[j] > window.hi)
            throw std::invalid_argument("atom outside the dual grid");
        order[j] = j;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return ys[a] < ys[b];
    });
    const GridFunction& grid = f.grid();
    std::size_t wf = grid.window_first(), wl = grid.window_last();
    std::vector<double> xs(wl - wf + 1), vs(wl - wf + 1), sorted_y(m2.size()),
        conj(m2.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = grid.axis().coord(wf + i);
        vs[i] = grid[wf + i];
    }
    for (std::size_t j = 0; j < m2.size(); ++j) sorted_y[j] = ys[order[j]];
    conjugate_cloud(xs.data(), vs.data(), xs.size(), sorted_y.data(), sorted_y.size(),
                    conj.data());
    double dual = 0.0;
    for (std::size_t j = 0; j < m2.size(); ++j) dual += m2.weights()[order[j]] * conj[j];
    return primal + dual - brute_force_cost(m1, m2).first;
}

QuantileMeasure discrete_quantiles(const DiscreteMeasure& m, std::size_t resolution) {
    if (m.dim() != 1) throw std::invalid_argument("discrete_quantiles is 1D only");
    std::vector<std::pair<double, double>> pts(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) pts[i] = {m.atoms()[i][0], m.weights()[i]};
    std::sort(pts.begin(), pts.end());
    std::vector<double> q(resolution);
    std::size_t k = 0;
    double cum = pts[0].second;
    for (std::size_t j = 0; j < resolution; ++j) {
        double t = (static_cast<double>(j) + 0.5) / static_cast<double>(resolution);
        while (cum < t && k + 1 < pts.size()) {
            ++k;
            cum += pts[k].second;
        }
        q[j] = pts[k].first;
    }
    return QuantileMeasure(std::move(q), /*require_monotone=*/true);
}

}  // namespace santalo

#include <doctest.h>

#include <cmath>

#include "santalo/families.hpp"
#include "santalo/rng.hpp"
#include "santalo/transport.hpp"

using namespace santalo;

namespace {

DiscreteMeasure atoms1d(std::vector<double> xs, std::vector<double> ws) {
    std::vector<std::vector<double>> pts;
    for (double x : xs) pts.push_back({x});
    return DiscreteMeasure(std::move(pts), std::move(ws));
}

DiscreteMeasure random_uniform_atoms(SplitMix64& rng, std::size_t n, double span = 5.0) {
    std::vector<double> xs(n);
    for (auto& x : xs) x = rng.uniform(-span, span);
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 1; i < n; ++i)
        if (xs[i] <= xs[i - 1]) xs[i] = xs[i - 1] + 1e-9;
    return atoms1d(std::move(xs), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscreteMeasure random_weighted_atoms(SplitMix64& rng, std::size_t n, double span = 5.0) {
    std::vector<double> xs(n), ws(n);
    for (auto& x : xs) x = rng.uniform(-span, span);
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 1; i < n; ++i)
        if (xs[i] <= xs[i - 1]) xs[i] = xs[i - 1] + 1e-9;
    double total = 0.0;
    for (auto& w : ws) {
        w = rng.uniform(0.05, 1.0);
        total += w;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        ws[i] /= total;
        acc += ws[i];
    }
    ws[n - 1] = 1.0 - acc;  // sums to 1 exactly
    return atoms1d(std::move(xs), std::move(ws));
}

}  // namespace

TEST_CASE("discrete measure invariants") {
    CHECK_THROWS(atoms1d({0.0, 1.0}, {0.7, 0.7}));
    CHECK_THROWS(atoms1d({0.0, 0.0}, {0.5, 0.5}));
    CHECK_THROWS(atoms1d({0.0, 1.0}, {1.2, -0.2}));
    auto m = atoms1d({-1.0, 1.0}, {0.5, 0.5});
    auto j = DiscreteMeasure::from_json(m.to_json());
    CHECK(j.atoms()[0][0] == -1.0);
    CHECK(j.weights()[1] == 0.5);
}

TEST_CASE("two atom costs") {
    auto m = atoms1d({-1.0, 1.0}, {0.5, 0.5});
    auto [cost, coupling] = brute_force_cost(m, m);
    CHECK(cost == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(coupling(0, 0) == doctest::Approx(0.5));
    CHECK(coupling(0, 1) == doctest::Approx(0.0));

    // any measure against a point mass at the origin costs zero
    auto delta = DiscreteMeasure({{0.0}}, {1.0});
    CHECK(brute_force_cost(m, delta).first == doctest::Approx(0.0));
}

TEST_CASE("matching equal atoms in 2d") {
    DiscreteMeasure m({{1.0, 0.0}, {0.0, 1.0}}, {0.5, 0.5});
    auto [cost, coupling] = brute_force_cost(m, m);
    CHECK(cost == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("oracle size cap") {
    SplitMix64 rng(5);
    auto a = random_uniform_atoms(rng, 40);
    auto b = random_uniform_atoms(rng, 40);
    CHECK_THROWS(brute_force_cost(a, b));
}

TEST_CASE("network simplex agrees with permutation search") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 2 + rng.below(6);
        auto a = random_uniform_atoms(rng, n);
        auto b = random_uniform_atoms(rng, n);
        auto [cp, cpl1] = brute_force_cost(a, b);
        // duplicate one atom of b into two half-weight atoms: same optimum,
        // but the weighted route now goes through the simplex
        std::vector<std::vector<double>> pts = b.atoms();
        std::vector<double> ws = b.weights();
        pts.push_back({pts.back()[0] + 1e-7});
        ws.back() *= 0.5;
        ws.push_back(ws.back());
        auto b2 = DiscreteMeasure(pts, ws);
        auto [cs, cpl2] = brute_force_cost(a, b2);
        CHECK(cs == doctest::Approx(cp).epsilon(1e-6));
    }
}

TEST_CASE("monotone coupling equals the oracle for equal weights") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n1 = 1 + rng.below(8), n2 = 1 + rng.below(8);
        auto a = random_uniform_atoms(rng, n1);
        auto b = random_uniform_atoms(rng, n2);
        std::size_t res = n1 * n2 * 8;
        double qc = quantile_correlation(discrete_quantiles(a, res), discrete_quantiles(b, res));
        double bf = brute_force_cost(a, b).first;
        CHECK(qc == doctest::Approx(bf).epsilon(1e-9));
    }
}

TEST_CASE("monotone coupling equals the oracle for general weights") {
    // rational weights whose denominators divide the table resolution keep
    // the discrete quantile table exact
    auto a = atoms1d({-2.0, 0.5, 3.0}, {0.25, 0.25, 0.5});
    auto b = atoms1d({-1.0, 1.0}, {0.75, 0.25});
    double qc = quantile_correlation(discrete_quantiles(a, 1024), discrete_quantiles(b, 1024));
    double bf = brute_force_cost(a, b).first;
    CHECK(qc == doctest::Approx(bf).epsilon(1e-9));
}

TEST_CASE("bilinearity under scaling") {
    SplitMix64 rng(11);
    auto a = random_weighted_atoms(rng, 5);
    auto b = random_weighted_atoms(rng, 7);
    double base = brute_force_cost(a, b).first;
    for (double s : {0.5, 2.0, 3.25}) {
        double scaled = brute_force_cost(a.scaled(s), b.scaled(2.0)).first;
        CHECK(scaled == doctest::Approx(2.0 * s * base).epsilon(1e-12));
    }
}

TEST_CASE("quantile correlation closed forms") {
    // uniform [0,1] against itself: int t^2 = 1/3
    std::size_t n = 4096;
    std::vector<double> q(n);
    for (std::size_t j = 0; j < n; ++j) q[j] = (static_cast<double>(j) + 0.5) / n;
    QuantileMeasure u(q, true);
    CHECK(quantile_correlation(u, u) == doctest::Approx(1.0 / 3.0).epsilon(1e-8));

    // standard gaussian second moment, bigger table for the log tails
    FamilySpec gs;
    gs.kind = FamilyKind::Gaussian;
    LogConcaveMeasure g = build_measure(gs);
    QuantileMeasure qg = quantiles(g, std::size_t{1} << 16);
    CHECK(quantile_correlation(qg, qg) == doctest::Approx(1.0).epsilon(1e-4));

    // matched signs of the two-atom measure
    auto two = atoms1d({-1.0, 1.0}, {0.5, 0.5});
    auto qt = discrete_quantiles(two, 4096);
    CHECK(quantile_correlation(qt, qt) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("quantile correlation t-grid mismatch") {
    std::vector<double> a(128, 1.0), b(256, 1.0);
    CHECK_THROWS(quantile_correlation(QuantileMeasure(a, false), QuantileMeasure(b, false)));
}

TEST_CASE("potential pair cost") {
    FamilySpec s;
    s.kind = FamilyKind::Laplace;
    CHECK(potential_pair_cost(build_measure(s)) == doctest::Approx(1.0).epsilon(1e-6));
    s.kind = FamilyKind::Gaussian;
    CHECK(potential_pair_cost(build_measure(s)) == doctest::Approx(1.0).epsilon(1e-6));
    s.kind = FamilyKind::UniformIndicator;
    CHECK(std::abs(potential_pair_cost(build_measure(s))) <= 1e-9);
}

TEST_CASE("dual feasibility gaps") {
    GridAxis a{-4.0, 4.0, 4097};
    std::vector<double> half(4097), dbl(4097), av(4097);
    for (std::size_t i = 0; i < 4097; ++i) {
        double x = a.coord(i);
        half[i] = 0.5 * x * x;
        dbl[i] = x * x;
        av[i] = std::abs(x);
    }
    auto two = atoms1d({-1.0, 1.0}, {0.5, 0.5});
    ConvexGridFunction fh(GridFunction(a, half)), fd(GridFunction(a, dbl)),
        fa(GridFunction(a, av));
    CHECK(dual_feasibility_gap(two, two, fh) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(dual_feasibility_gap(two, two, fd) == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(std::abs(dual_feasibility_gap(two, two, fa)) <= 1e-8);
    // atom outside the grid
    auto far = atoms1d({-9.0, 1.0}, {0.5, 0.5});
    CHECK_THROWS(dual_feasibility_gap(far, two, fh));
}

TEST_CASE("weak duality holds on random triples") {
    SplitMix64 rng(321);
    GridAxis ga{-6.0, 6.0, 2049};
    for (int trial = 0; trial < 60; ++trial) {
        // random convex potential: positive quadratic plus a kink
        double alpha = rng.uniform(0.2, 2.0), beta = rng.uniform(0.0, 1.5);
        double pivot = rng.uniform(-1.0, 1.0);
        std::vector<double> v(ga.samples);
        for (std::size_t i = 0; i < ga.samples; ++i) {
            double x = ga.coord(i);
            v[i] = 0.5 * alpha * x * x + beta * std::abs(x - pivot);
        }
        ConvexGridFunction f(GridFunction(ga, std::move(v)));
        auto m1 = random_weighted_atoms(rng, 2 + rng.below(7), 4.0);
        auto m2 = random_weighted_atoms(rng, 2 + rng.below(7), 2.0);
        CHECK(dual_feasibility_gap(m1, m2, f) >= -1e-8);
    }
}

TEST_CASE("pushforward lower bound for non monotone maps") {
    SplitMix64 rng(555);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 2 + rng.below(7);
        auto eta1 = random_uniform_atoms(rng, n);
        auto eta2 = random_uniform_atoms(rng, n);
        auto S1 = [](double x) { return std::sin(3.0 * x); };
        auto S2 = [](double x) { return std::cos(2.0 * x) + 0.3 * x; };
        // pushforward atoms under the maps (weights unchanged)
        std::vector<std::vector<double>> p1, p2;
        for (std::size_t i = 0; i < n; ++i) {
            p1.push_back({S1(eta1.atoms()[i][0]) + 1e-12 * static_cast<double>(i)});
            p2.push_back({S2(eta2.atoms()[i][0]) + 1e-12 * static_cast<double>(i)});
        }
        DiscreteMeasure nu1(p1, eta1.weights()), nu2(p2, eta2.weights());
        // comonotone-in-eta pairing of the pushforward values
        double lhs = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            lhs += eta1.weights()[i] * p1[i][0] * p2[i][0];
        double cost = brute_force_cost(nu1, nu2).first;
        CHECK(lhs <= cost + 1e-10);
    }
}

TEST_CASE("coupling serialization") {
    auto m = atoms1d({-1.0, 1.0}, {0.5, 0.5});
    auto [cost, coupling] = brute_force_cost(m, m);
    CHECK(coupling.to_json() == "[[0.5,0.0],[0.0,0.5]]");
}

TEST_CASE("network simplex at the size cap with degenerate weights") {
    SplitMix64 rng(90210);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n1 = 32, n2 = 32;
        auto a = random_uniform_atoms(rng, n1);
        auto b = random_uniform_atoms(rng, n2);
        double bf = brute_force_cost(a, b).first;
        std::size_t res = 32 * 32 * 4;
        double qc = quantile_correlation(discrete_quantiles(a, res), discrete_quantiles(b, res));
        CHECK(qc == doctest::Approx(bf).epsilon(1e-9));
    }
    // rational unequal weights against an exactly aligned quantile table
    auto m1 = atoms1d({-3.0, -1.0, 0.5, 2.0}, {0.125, 0.375, 0.25, 0.25});
    auto m2 = atoms1d({-2.5, -0.5, 1.0, 1.5, 3.5}, {0.0625, 0.1875, 0.25, 0.25, 0.25});
    double bf = brute_force_cost(m1, m2).first;
    double qc =
        quantile_correlation(discrete_quantiles(m1, 4096), discrete_quantiles(m2, 4096));
    CHECK(qc == doctest::Approx(bf).epsilon(1e-9));
}

TEST_CASE("quantile correlation rejects heavy tails") {
    // q(t) ~ t^{-0.6} is not square integrable: the edge-growth estimate
    // must reject the pair
    std::size_t n = 4096;
    std::vector<double> q(n);
    for (std::size_t j = 0; j < n; ++j) {
        double t = (static_cast<double>(j) + 0.5) / static_cast<double>(n);
        q[j] = std::pow(t, -0.6);
    }
    QuantileMeasure heavy(q, false);
    CHECK(heavy.tail_estimate(heavy) > 1e-4);
    CHECK_THROWS(quantile_correlation(heavy, heavy));
    // the bounded two-sided table sails through
    std::vector<double> flat(n, 1.0);
    QuantileMeasure ok(flat, false);
    CHECK(ok.tail_estimate(ok) == 0.0);
    CHECK(quantile_correlation(ok, ok) == doctest::Approx(1.0));
}

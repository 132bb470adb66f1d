#include "santalo/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "santalo/families.hpp"
#include "santalo/inequalities.hpp"
#include "santalo/suite.hpp"

namespace santalo {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct CliConfig {
    std::string command;
    std::string family = "gaussian";
    std::string family2;
    std::string grid;      // "lo,hi,samples"
    double p = 2.0;
    double eps = 0.1;
    std::string c = "auto";
    std::uint64_t seed = 1;
    std::string out = ".";
    double tolerance = -1.0;  // <0: policy default
    std::size_t nt = 0;
    std::size_t dim = 2;
    std::size_t samples_axis = 0;
    bool symmetric = false;
    std::string csv_path;
    std::size_t threads = 0;

    std::string canonical() const {
        std::ostringstream os;
        os << command << '|' << family << '|' << family2 << '|' << grid << '|' << p << '|'
           << eps << '|' << c << '|' << seed << '|' << nt << '|' << dim << '|' << samples_axis
           << '|' << symmetric << '|' << tolerance << '|' << csv_path;
        return os.str();
    }
};

FamilySpec make_spec(const CliConfig& cfg, const std::string& name) {
    FamilySpec spec;
    spec.kind = family_kind_from_name(name);
    spec.p = cfg.p;
    spec.eps = cfg.eps;
    spec.seed = cfg.seed;
    spec.symmetric = cfg.symmetric;
    spec.dim = cfg.dim;
    spec.profile_cells = cfg.nt;
    spec.csv_path = cfg.csv_path;
    if (!cfg.grid.empty()) {
        double lo, hi;
        unsigned long long n;
        if (std::sscanf(cfg.grid.c_str(), "%lf,%lf,%llu", &lo, &hi, &n) != 3)
            throw std::invalid_argument("grid must be lo,hi,samples");
        spec.grid = GridAxis{lo, hi, static_cast<std::size_t>(n)};
    }
    spec.validate();
    return spec;
}

std::optional<double> constant_override(const CliConfig& cfg) {
    if (cfg.c == "auto") return std::nullopt;
    return std::stod(cfg.c);
}

std::optional<double> tolerance_override(const CliConfig& cfg) {
    if (cfg.tolerance < 0.0) return std::nullopt;
    return cfg.tolerance;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

std::string profile_csv(const Profile& f) {
    std::string out = "t,value\n";
    char buf[64];
    for (std::size_t j = 0; j <= f.cells(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", f.node(j), f.values()[j]);
        out += buf;
    }
    return out;
}

VerificationReport run_transform(const CliConfig& cfg,
                                 std::vector<std::pair<std::string, std::string>>& artifacts) {
    ConvexGridFunction f = build_potential(make_spec(cfg, cfg.family));
    const GridFunction& g = f.grid();
    double smin = g.min_window_slope(), smax = g.max_window_slope();
    auto fstar = legendre_transform(f, smin - 1.0, smax + 1.0, g.axis().samples);
    auto fss = legendre_transform(fstar, g.lo(), g.hi(), g.axis().samples);
    double sup = 0.0;
    std::size_t margin = g.axis().samples / 100 + 1;
    for (std::size_t i = g.window_first() + margin; i + margin < g.window_last(); ++i)
        sup = std::max(sup, std::abs(fss.values()[i] - g[i]));
    double tol = 2.0 * g.step() * (smax - smin) + 1e-12;
    artifacts.emplace_back("conjugate.csv", fstar.grid().to_csv());
    return VerificationReport(
        "transform",
        {{"slope_min", smin}, {"slope_max", smax}, {"biconjugation_gap", sup}},
        tol - sup, 0.0, 0.0);
}

std::vector<VerificationReport> run_command(const CliConfig& cfg,
                                            std::vector<std::pair<std::string, std::string>>&
                                                artifacts) {
    if (cfg.command == "transform") return {run_transform(cfg, artifacts)};
    if (cfg.command == "product") {
        return {santalo_product(build_potential(make_spec(cfg, cfg.family)),
                                constant_override(cfg), tolerance_override(cfg))};
    }
    if (cfg.command == "et") {
        LogConcaveMeasure m1 = build_measure(make_spec(cfg, cfg.family));
        LogConcaveMeasure m2 =
            cfg.family2.empty() ? m1 : build_measure(make_spec(cfg, cfg.family2));
        std::size_t res = cfg.nt != 0 ? cfg.nt : (std::size_t{1} << 20);
        return {et_deficit(m1, m2, constant_override(cfg), res, tolerance_override(cfg))};
    }
    if (cfg.command == "profile" || cfg.command == "weighted") {
        CliConfig c1 = cfg;
        if (c1.nt == 0) c1.nt = 64000;
        Profile f1 = build_profile(make_spec(c1, cfg.family));
        CliConfig c2 = c1;
        c2.nt = f1.cells();
        Profile f2 = cfg.family2.empty() ? f1 : build_profile(make_spec(c2, cfg.family2));
        artifacts.emplace_back("profile.csv", profile_csv(f1));
        if (cfg.command == "weighted") return {weighted_product_gap(f1, f2)};
        return {profile_inequality_gap(f1, f2, constant_override(cfg),
                                       tolerance_override(cfg))};
    }
    if (cfg.command == "uncond") {
        FamilySpec spec = make_spec(cfg, cfg.family);
        if (!is_unconditional_family(spec.kind))
            throw std::invalid_argument("uncond needs an unconditional_* family");
        UnconditionalPotential U = build_unconditional(spec, cfg.samples_axis);
        double tol = cfg.tolerance < 0.0 ? 1e-3 : cfg.tolerance;
        return {unconditional_verify(U, {0.25, 0.5, 0.75, 1.0}, tol)};
    }
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

int run_suite(const CliConfig& cfg) {
    SuiteOptions opts;
    opts.seed = cfg.seed;
    opts.threads = cfg.threads;
    auto results = run_acceptance_suite(opts);

    std::filesystem::create_directories(cfg.out);
    std::vector<VerificationReport> all;
    bool ok = true;
    for (const auto& cr : results) {
        std::printf("[%s] %s (%.1f s)\n", cr.passed ? "PASS" : "FAIL", cr.name.c_str(),
                    cr.runtime_seconds);
        for (const auto& d : cr.details) std::printf("%s\n", d.c_str());
        ok = ok && cr.passed;
        for (const auto& r : cr.reports) all.push_back(r);
    }
    std::string stem = "suite-all-" + hex16(fnv1a(cfg.canonical()));
    write_file(std::filesystem::path(cfg.out) / (stem + ".json"), reports_to_json(all));
    write_file(std::filesystem::path(cfg.out) / "summary.csv", reports_to_csv(all));
    std::printf("overall: %s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"numerical workbench for sharp convex-duality inequalities"};
    app.set_config("--config", "", "TOML config file merged with flags (flags win)");

    CliConfig cfg;
    app.add_option("command", cfg.command,
                   "one of: transform, product, et, profile, weighted, uncond, suite")
        ->required();
    app.add_option("--family", cfg.family, "potential/profile family");
    app.add_option("--family2", cfg.family2, "second family for et/profile/weighted");
    app.add_option("--grid", cfg.grid, "grid as lo,hi,samples");
    app.add_option("--p", cfg.p, "power exponent");
    app.add_option("--eps", cfg.eps, "extremizer approximation parameter");
    app.add_option("--c", cfg.c, "sharp constant: a real or 'auto'");
    app.add_option("--seed", cfg.seed, "seed for randomized families and suites");
    app.add_option("--out", cfg.out, "output directory");
    app.add_option("--tolerance", cfg.tolerance, "report tolerance override");
    app.add_option("--nt", cfg.nt, "profile cells / quantile table resolution");
    app.add_option("--dim", cfg.dim, "dimension for unconditional families (2 or 3)");
    app.add_option("--samples-axis", cfg.samples_axis, "per-axis samples for uncond grids");
    app.add_flag("--symmetric", cfg.symmetric, "symmetric variant of random profiles");
    app.add_option("--csv", cfg.csv_path, "potential CSV for the custom_csv family");
    app.add_option("--threads", cfg.threads,
                   "parallelism cap (default: SANTALO_LAB_THREADS or hardware)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (cfg.command == "suite") return run_suite(cfg);

        std::vector<std::pair<std::string, std::string>> artifacts;
        std::vector<VerificationReport> reports = run_command(cfg, artifacts);

        std::filesystem::create_directories(cfg.out);
        std::string stem = cfg.command + "-" + cfg.family + "-" + hex16(fnv1a(cfg.canonical()));
        std::filesystem::path dir(cfg.out);
        write_file(dir / (stem + ".json"),
                   reports.size() == 1 ? reports[0].to_json(2) : reports_to_json(reports));
        for (const auto& [suffix, content] : artifacts)
            write_file(dir / (stem + "-" + suffix), content);
        write_file(dir / "summary.csv", reports_to_csv(reports));

        bool ok = true;
        for (const auto& r : reports) {
            std::printf("%s: deficit % .6g (tolerance %.2g) .. %s\n", r.name().c_str(),
                        r.deficit(), r.tolerance(), r.passed() ? "PASS" : "FAIL");
            ok = ok && r.passed();
        }
        return ok ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace santalo

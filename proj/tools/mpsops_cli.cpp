// Command-line front end: generate, validate, apply-op, bounds, study, corollary71.
//
// Exit codes: 0 success, 1 a check failed or the computation raised an error,
// 2 the configuration could not be parsed.

#include "mpsops/errors.hpp"
#include "mpsops/report.hpp"
#include "mpsops/study.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace mpsops;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitParse = 2;

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<double> lambda;
    std::string preset;
    int m = 1;
    std::vector<std::string> functions;
    std::optional<std::size_t> focal_index;
    std::string out;
    std::vector<std::string> ops;
    std::optional<double> r_sigma;
    std::optional<double> c_star;
};

void emit(const Flags& f, const std::string& file, const std::string& text) {
    if (f.out.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::create_directories(f.out);
    write_text_file((std::filesystem::path(f.out) / file).string(), text);
}

std::vector<std::string> function_list(const Flags& f) {
    if (f.functions.empty()) return test_function_names();
    const auto& known = test_function_names();
    for (const auto& n : f.functions) {
        if (std::find(known.begin(), known.end(), n) == known.end()) throw ConfigError("unknown test function '" + n + "'");
    }
    return f.functions;
}

ScenarioSpec load_scenario(const Flags& f) {
    if (f.config.empty()) throw ConfigError("--config is required");
    auto spec = scenario_from_json(read_json_file(f.config));
    if (f.lambda) spec.lambda = f.lambda;
    if (f.focal_index) spec.focal_index = f.focal_index;
    return spec;
}

Rect function_region(const Scenario& s) { return s.decomposition->domain().padded(); }

int cmd_generate(const Flags& f) {
    if (f.config.empty()) throw ConfigError("--config is required");
    const auto j = read_json_file(f.config);
    const Rect omega = rect_from_json(require_field(j, "omega", "config"));
    const double padding = require_number(j, "H", "config");
    auto gen = generator_spec_from_json(require_field(j, "generator", "config"));
    if (f.seed) gen.seed = *f.seed;
    ParticleConfiguration cfg;
    try {
        cfg.domain = DomainSpec::make(omega, padding);
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    cfg.sites = generate_sites(cfg.domain, gen);
    emit(f, "sites.json", to_json(cfg).dump(1) + "\n");
    std::cerr << "generated " << cfg.sites.size() << " sites (" << generator_name(gen.kind) << ", seed " << gen.seed
              << ")\n";
    return 0;
}

int cmd_validate(const Flags& f) {
    const auto s = resolve_scenario(load_scenario(f));
    bool ok = s.validation.all_pass();
    for (const auto& c : s.validation.clauses) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.message;
        if (!c.pass && c.witness) std::cout << " [witness (" << c.witness->x1 << ", " << c.witness->x2 << ")]";
        std::cout << "\n";
    }
    json report = to_json(s.validation);
    report["focal_index"] = s.k;
    report["delta_requested"] = s.delta_requested;
    try {
        const auto ctx = make_context(s);
        const auto& p = ctx.positivity();
        std::cout << "PASS positivity: C0 = " << p.c0 << " over " << p.samples << " points of B_δ(a_k)\n";
        report["positivity"] = {{"pass", true}, {"C0", p.c0}, {"samples", p.samples}};
    } catch (const Error& e) {
        ok = false;
        std::cout << "FAIL positivity: " << e.what() << "\n";
        report["positivity"] = {{"pass", false}, {"message", e.what()}};
    }
    if (!f.out.empty()) emit(f, "validation.json", report.dump(1) + "\n");
    return ok ? 0 : kExitFail;
}

int cmd_apply(const Flags& f) {
    const auto s = resolve_scenario(load_scenario(f));
    const auto ctx = make_context(s);
    std::vector<OperatorKind> kinds;
    if (f.ops.empty()) {
        for (int fam = 0; fam < 4; ++fam) {
            for (int st = 0; st < 4; ++st) kinds.push_back({static_cast<Family>(fam), static_cast<Stage>(st)});
        }
    } else {
        for (const auto& name : f.ops) {
            try {
                kinds.push_back(parse_operator(name));
            } catch (const InvalidArgument& e) {
                throw ConfigError(e.what());
            }
        }
    }
    json out = json::array();
    for (const auto& name : function_list(f)) {
        const auto fn = make_test_function(name, s.decomposition->domain().omega, function_region(s));
        for (const auto kind : kinds) {
            const auto r = apply_operator(kind, ctx, fn);
            const auto exact = exact_value(kind.family, ctx, fn);
            json j = to_json(r);
            j["function"] = name;
            j["exact"] = exact.is_vector() ? to_json(exact.vector()) : json(exact.scalar());
            j["error"] = difference_norm(exact, r);
            out.push_back(std::move(j));
        }
    }
    emit(f, "apply.json", out.dump(1) + "\n");
    return 0;
}

int cmd_bounds(const Flags& f) {
    const auto s = resolve_scenario(load_scenario(f));
    const auto ctx = make_context(s);
    const auto in = geometric_inputs(ctx);
    const auto consts = compute_constants(in);
    json reports = json::array();
    std::ostringstream csv;
    csv << "focal_index,theorem,function,C0,C1,C2,C3,f_C0,f_C1,f_C2,f_C3,rhs\n";
    const auto names = function_list(f);
    for (int t = 0; t < 4; ++t) {
        if (!s.lambda && t > 0) break;
        const auto rep = theorem_bound(static_cast<Theorem>(t), in, consts);
        json j = to_json(rep);
        json rhs = json::object();
        for (const auto& name : names) {
            const auto fn = make_test_function(name, s.decomposition->domain().omega, function_region(s));
            const double v = rep.rhs(fn.seminorms());
            rhs[name] = v;
            csv << s.k << ',' << theorem_name(rep.theorem) << ',' << name;
            for (double c : rep.coefficients) csv << ',' << format_double(c);
            for (double c : fn.seminorms()) csv << ',' << format_double(c);
            csv << ',' << format_double(v) << '\n';
        }
        j["rhs"] = std::move(rhs);
        reports.push_back(std::move(j));
    }
    if (!s.lambda) std::cerr << "note: no λ given; only the interpolation bound is evaluated\n";
    json doc{{"focal_index", s.k}, {"validation", to_json(s.validation)}, {"reports", std::move(reports)}};
    if (f.out.empty()) {
        std::cout << doc.dump(1) << "\n";
    } else {
        emit(f, "bounds.json", doc.dump(1) + "\n");
        emit(f, "bounds.csv", csv.str());
    }
    return 0;
}

int cmd_study(const Flags& f) {
    StudyConfig cfg;
    if (!f.config.empty()) {
        cfg = study_config_from_json(read_json_file(f.config));
    } else if (!f.preset.empty()) {
        cfg = study_preset(f.preset, f.m);
    } else {
        throw ConfigError("study needs --config or --preset");
    }
    if (f.seed) cfg.seed = *f.seed;
    if (f.lambda) {
        if (!(*f.lambda > 0.0 && *f.lambda < 1.0)) throw ConfigError("--lambda must lie in (0, 1)");
        cfg.lambda = *f.lambda;
    }
    if (!f.functions.empty()) cfg.functions = function_list(f);
    if (f.focal_index) cfg.focal_index = f.focal_index;

    const auto result = run_study(cfg);
    const std::string dir = f.out.empty() ? "." : f.out;
    std::filesystem::create_directories(dir);
    std::ostringstream csv, svg;
    write_study_csv(result, csv);
    write_study_svg(result, svg);
    write_text_file((std::filesystem::path(dir) / "study.csv").string(), csv.str());
    write_text_file((std::filesystem::path(dir) / "study.json").string(), to_json(result).dump(1) + "\n");
    write_text_file((std::filesystem::path(dir) / "study.svg").string(), svg.str());
    for (const auto& c : result.configurations) {
        if (c.skipped) std::cout << "skipped configuration " << c.id << " (" << c.weight << "): " << c.skip_reason << "\n";
    }
    std::cout << summary_line(result) << "\n";
    const auto s = result.summary();
    return s.passed == s.rows ? 0 : kExitFail;
}

int cmd_corollary(const Flags& f) {
    CorollaryScenario sc;
    if (f.preset == "corollary71-ii") {
        sc = CorollaryScenario::coarse();
    } else if (f.preset == "corollary71-i") {
        sc = CorollaryScenario::fine(f.m);
    } else if (f.preset.empty()) {
        if (!f.r_sigma || !f.c_star) throw ConfigError("corollary71 needs --preset or both --r-sigma and --c-star");
        sc.r_sigma = *f.r_sigma;
        sc.c_star = *f.c_star;
        sc.lambda = f.lambda.value_or(0.5);
    } else {
        throw ConfigError("unknown preset '" + f.preset + "'");
    }
    std::cout << to_json(corollary71(sc)).dump(1) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Voronoi-based particle operators: geometry, truncation-error bounds and verification sweeps"};
    app.require_subcommand(1);
    Flags f;

    const auto common = [&f](CLI::App* sub) {
        sub->add_option("--config", f.config, "configuration JSON file");
        sub->add_option("--out", f.out, "output directory");
    };
    const auto scenario_flags = [&f](CLI::App* sub) {
        sub->add_option("--lambda", f.lambda, "ring-splitting ratio λ in (0, 1)");
        sub->add_option("--focal-index", f.focal_index, "focal particle index");
        sub->add_option("--functions", f.functions, "test functions")->delimiter(',');
    };

    auto* gen = app.add_subcommand("generate", "write a particle configuration");
    common(gen);
    gen->add_option("--seed", f.seed, "generator seed");

    auto* val = app.add_subcommand("validate", "check the standing assumptions and weight positivity");
    common(val);
    scenario_flags(val);

    auto* apply = app.add_subcommand("apply-op", "evaluate operators at the focal particle");
    common(apply);
    scenario_flags(apply);
    apply->add_option("--op", f.ops, "operator names, e.g. grad_tilde,laplace")->delimiter(',');

    auto* bounds = app.add_subcommand("bounds", "constants c1..c12 and theorem right-hand sides");
    common(bounds);
    scenario_flags(bounds);

    auto* study = app.add_subcommand("study", "verification sweep: CSV, JSON and SVG");
    common(study);
    scenario_flags(study);
    study->add_option("--seed", f.seed, "base seed");
    study->add_option("--preset", f.preset, "corollary71-i or corollary71-ii");
    study->add_option("--m", f.m, "scenario index for corollary71-i");

    auto* cor = app.add_subcommand("corollary71", "closed-form indicator-weight coefficients");
    cor->add_option("--preset", f.preset, "corollary71-i or corollary71-ii");
    cor->add_option("--m", f.m, "scenario index for corollary71-i");
    cor->add_option("--r-sigma", f.r_sigma, "r_σ for a custom scenario");
    cor->add_option("--c-star", f.c_star, "C_* for a custom scenario");
    cor->add_option("--lambda", f.lambda, "λ for a custom scenario");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitParse;
    }

    try {
        if (*gen) return cmd_generate(f);
        if (*val) return cmd_validate(f);
        if (*apply) return cmd_apply(f);
        if (*bounds) return cmd_bounds(f);
        if (*study) return cmd_study(f);
        if (*cor) return cmd_corollary(f);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitFail;
}

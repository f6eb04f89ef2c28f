#include "mpsops/study.hpp"

#include "mpsops/errors.hpp"
#include "mpsops/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace mpsops {

namespace {

Point2 centroid(const Rect& r) { return {0.5 * (r.min.x1 + r.max.x1), 0.5 * (r.min.x2 + r.max.x2)}; }

std::optional<double> optional_number(const json& j, const char* key, const char* where) {
    if (!j.contains(key)) return std::nullopt;
    return require_number(j, key, where);
}

std::optional<std::size_t> optional_index(const json& j, const char* key, const char* where) {
    if (!j.contains(key)) return std::nullopt;
    const auto& v = j[key];
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ConfigError(std::string(where) + "." + key + ": expected a nonnegative integer");
    return v.get<std::size_t>();
}

std::vector<double> number_list(const json& j, const char* key, const char* where) {
    const auto& v = require_field(j, key, where);
    if (!v.is_array()) throw ConfigError(std::string(where) + "." + key + ": expected an array");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(std::string(where) + "." + key + ": expected numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::string validation_summary(const ValidationReport& rep) {
    const auto& cover = rep.get(Clause::NeighborCover);
    std::ostringstream os;
    os << "blocking clauses pass; cover ";
    if (cover.pass) os << "pass";
    else os << "fails (uncovered " << cover.measure / (std::numbers::pi * rep.h * rep.h) << " of B_h)";
    return os.str();
}

void check_functions(const std::vector<std::string>& names) {
    const auto& known = test_function_names();
    if (names.empty()) throw ConfigError("functions: empty list");
    for (const auto& n : names) {
        if (std::find(known.begin(), known.end(), n) == known.end())
            throw ConfigError("functions: unknown test function '" + n + "'");
    }
}

double default_padding(GeneratorKind kind, double spacing, double jitter, double c_star, int ring) {
    switch (kind) {
    case GeneratorKind::Lattice:
    case GeneratorKind::Jittered:
        // Every point is within (1 + 2 jitter) half-diagonals of some site, so r_σ is bounded by that.
        return (c_star + 1.0) * spacing / std::numbers::sqrt2 * (1.0 + 2.0 * jitter) + spacing;
    case GeneratorKind::PoissonDisk: return (c_star + 1.0) * 2.0 * spacing + spacing;
    case GeneratorKind::Rings: return (ring + 3.0) * spacing;
    }
    return 0.0;
}

} // namespace

std::vector<const ClauseResult*> blocking_failures(const ValidationReport& rep) {
    return rep.failures({Clause::NeighborCover});
}

ScenarioSpec scenario_from_json(const json& j) {
    ScenarioSpec s;
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    if (j.contains("sites")) {
        s.particles = particle_configuration_from_json(j);
    } else if (j.contains("generator")) {
        const Rect omega = rect_from_json(require_field(j, "omega", "config"));
        const double padding = require_number(j, "H", "config");
        try {
            s.particles.domain = DomainSpec::make(omega, padding);
        } catch (const InvalidArgument& e) {
            throw ConfigError(e.what());
        }
        s.particles.sites = generate_sites(s.particles.domain, generator_spec_from_json(j["generator"]));
    } else {
        throw ConfigError("missing field 'config.sites' (or 'config.generator')");
    }
    s.h = optional_number(j, "h", "config");
    s.c_star = optional_number(j, "C_star", "config");
    if (!s.h && !s.c_star) throw ConfigError("missing field 'config.h' (or 'config.C_star')");
    s.delta = optional_number(j, "delta", "config");
    s.focal_index = optional_index(j, "focal_index", "config");
    if (j.contains("x")) s.x = point_from_json(j["x"]);
    s.lambda = optional_number(j, "lambda", "config");
    if (j.contains("weight")) s.weight = weight_spec_from_json(j["weight"]);
    return s;
}

Scenario resolve_scenario(const ScenarioSpec& spec) {
    Scenario s;
    s.decomposition = std::make_shared<const VoronoiDecomposition>(build_voronoi(spec.particles.sites, spec.particles.domain));
    const auto& d = *s.decomposition;
    if (spec.focal_index) {
        if (*spec.focal_index >= d.size()) throw ConfigError("focal_index out of range");
        s.k = *spec.focal_index;
    } else {
        s.k = d.nearest_site(centroid(d.domain().omega));
    }
    const double r = d.r_sigma();
    s.h = spec.h ? *spec.h : *spec.c_star * r;
    s.delta_requested = spec.delta ? *spec.delta : 0.5 * r;
    s.delta = spec.delta ? *spec.delta : admissible_delta(d, s.k, 0.5 * r);
    s.x = spec.x.value_or(d.site(s.k));
    s.lambda = spec.lambda;
    s.weight = spec.weight;
    s.validation = validate_standing_assumptions(d, s.k, s.h, s.delta, s.x);
    return s;
}

NeighborContext make_context(const Scenario& s) {
    ContextOptions opts;
    opts.lambda = s.lambda;
    return NeighborContext::make(s.decomposition, s.k, make_weight(s.weight, s.delta, s.h), opts);
}

FocalChoice select_focal(const VoronoiDecomposition& decomp, const RadiusRule& h_rule,
                         std::optional<std::size_t> forced, std::size_t max_candidates) {
    FocalChoice out;
    std::vector<std::size_t> order;
    if (forced) {
        if (*forced >= decomp.size()) {
            out.reason = "focal index " + std::to_string(*forced) + " out of range";
            return out;
        }
        order.push_back(*forced);
    } else {
        const Point2 c = centroid(decomp.domain().omega);
        order.resize(decomp.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return distance(decomp.site(a), c) < distance(decomp.site(b), c);
        });
        if (order.size() > max_candidates) order.resize(max_candidates);
    }
    const double r = decomp.r_sigma();
    for (const std::size_t k : order) {
        const double h = h_rule(decomp, k);
        const double delta = admissible_delta(decomp, k, 0.5 * r);
        auto rep = validate_standing_assumptions(decomp, k, h, delta, decomp.site(k));
        const auto fails = blocking_failures(rep);
        if (fails.empty()) {
            out.k = k;
            out.h = h;
            out.delta_requested = 0.5 * r;
            out.delta = delta;
            out.validation = std::move(rep);
            out.reason.clear();
            return out;
        }
        if (out.reason.empty()) {
            out.h = h;
            out.delta_requested = 0.5 * r;
            out.delta = delta;
            out.validation = rep;
            out.reason = "no admissible focal site among the " + std::to_string(order.size()) +
                         " nearest to the centroid; nearest fails " + fails.front()->message;
        }
    }
    return out;
}

double ring_gap_radius(const VoronoiDecomposition& decomp, std::size_t k, int ring, double spacing) {
    const Point2 a = decomp.site(k);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < decomp.size(); ++i) {
        if (distance(decomp.site(i), a) <= (ring + 0.5) * spacing) continue;
        best = std::min(best, distance(decomp.cell(i).closest_point(a), a));
    }
    return best * (1.0 - 1e-9);
}

StudyConfig preset_corollary71_ii() {
    StudyConfig c;
    c.preset = "corollary71-ii";
    c.omega = Rect{{0.0, 0.0}, {0.2, 0.2}};
    c.generator = GeneratorKind::Jittered;
    c.r_sigma_targets = {0.0085};
    c.jitters = {0.1};
    c.c_stars = {4.0};
    c.lambda = 0.5;
    c.weights = {WeightSpec{}};
    c.corollary = CorollaryScenario::coarse();
    return c;
}

StudyConfig preset_corollary71_i(int m) {
    StudyConfig c;
    c.preset = "corollary71-i";
    c.corollary = CorollaryScenario::fine(m);
    c.r_sigma_targets = {c.corollary->r_sigma};
    c.c_stars = {c.corollary->c_star};
    c.lambda = c.corollary->lambda;
    std::ostringstream os;
    os << "r_σ = " << c.corollary->r_sigma << " with C_* = " << c.corollary->c_star << " puts about "
       << std::numbers::pi * c.corollary->c_star * c.corollary->c_star / 2.0
       << " sites inside B_h(a_k); only the closed-form coefficients are evaluated";
    c.closed_form_reason = os.str();
    return c;
}

StudyConfig study_preset(const std::string& name, int m) {
    if (name == "corollary71-ii") return preset_corollary71_ii();
    if (name == "corollary71-i") {
        if (m < 1) throw ConfigError("preset corollary71-i needs --m >= 1");
        return preset_corollary71_i(m);
    }
    throw ConfigError("unknown preset '" + name + "'");
}

StudyConfig study_config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("study config: expected a JSON object");
    StudyConfig c;
    if (j.contains("preset")) {
        if (!j["preset"].is_string()) throw ConfigError("study.preset: expected a string");
        int m = 1;
        if (j.contains("m")) m = static_cast<int>(require_number(j, "m", "study"));
        c = study_preset(j["preset"].get<std::string>(), m);
    }
    const bool from_preset = !c.preset.empty();
    if (j.contains("omega")) c.omega = rect_from_json(j["omega"]);
    if (j.contains("generator")) {
        if (!j["generator"].is_string()) throw ConfigError("study.generator: expected a string");
        c.generator = parse_generator(j["generator"].get<std::string>());
    }
    if (j.contains("r_sigma_targets") || !from_preset) c.r_sigma_targets = number_list(j, "r_sigma_targets", "study");
    if (j.contains("jitters")) c.jitters = number_list(j, "jitters", "study");
    if (c.generator == GeneratorKind::Rings) {
        if (j.contains("rings") || !from_preset) {
            c.rings.clear();
            for (double v : number_list(j, "rings", "study")) c.rings.push_back(static_cast<int>(v));
        }
    } else if (j.contains("c_stars") || !from_preset) {
        c.c_stars = number_list(j, "c_stars", "study");
    }
    c.padding = optional_number(j, "padding", "study");
    if (j.contains("lambda")) c.lambda = require_number(j, "lambda", "study");
    if (j.contains("weights")) {
        if (!j["weights"].is_array()) throw ConfigError("study.weights: expected an array");
        c.weights.clear();
        for (const auto& w : j["weights"]) c.weights.push_back(weight_spec_from_json(w));
    } else if (j.contains("weight")) {
        c.weights = {weight_spec_from_json(j["weight"])};
    }
    if (j.contains("functions")) {
        if (!j["functions"].is_array()) throw ConfigError("study.functions: expected an array");
        c.functions.clear();
        for (const auto& f : j["functions"]) {
            if (!f.is_string()) throw ConfigError("study.functions: expected names");
            c.functions.push_back(f.get<std::string>());
        }
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer()) throw ConfigError("study.seed: expected an integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    c.focal_index = optional_index(j, "focal_index", "study");
    if (j.contains("lemmas")) {
        if (!j["lemmas"].is_boolean()) throw ConfigError("study.lemmas: expected a boolean");
        c.lemmas = j["lemmas"].get<bool>();
    }

    check_functions(c.functions);
    if (c.closed_form_reason.empty()) {
        if (c.r_sigma_targets.empty() || c.jitters.empty() || c.weights.empty())
            throw ConfigError("study: every sweep list must be nonempty");
        for (double r : c.r_sigma_targets) {
            if (!(r > 0.0)) throw ConfigError("study.r_sigma_targets: values must be positive");
        }
        for (double v : c.jitters) {
            if (v < 0.0 || v >= 0.49) throw ConfigError("study.jitters: values must lie in [0, 0.49)");
            if (v > 0.0 && c.generator != GeneratorKind::Jittered)
                throw ConfigError("study.jitters: nonzero jitter needs the jittered generator");
        }
        if (c.generator == GeneratorKind::Rings) {
            if (c.rings.empty()) throw ConfigError("study.rings: empty list");
            for (int v : c.rings) {
                if (v < 1) throw ConfigError("study.rings: values must be >= 1");
            }
        } else {
            if (c.c_stars.empty()) throw ConfigError("study.c_stars: empty list");
            for (double v : c.c_stars) {
                if (!(v > 1.0)) throw ConfigError("study.c_stars: C_* must exceed 1");
            }
        }
    }
    if (!(c.lambda > 0.0 && c.lambda < 1.0)) throw ConfigError("study.lambda: must lie in (0, 1)");
    if (c.padding && !(*c.padding > 0.0)) throw ConfigError("study.padding: must be positive");
    return c;
}

json to_json(const StudyConfig& c) {
    json weights = json::array();
    for (const auto& w : c.weights) weights.push_back(to_json(w));
    json j{{"omega", to_json(c.omega)},
           {"generator", generator_name(c.generator)},
           {"r_sigma_targets", c.r_sigma_targets},
           {"jitters", c.jitters},
           {"lambda", c.lambda},
           {"weights", std::move(weights)},
           {"functions", c.functions},
           {"seed", c.seed},
           {"lemmas", c.lemmas}};
    if (c.generator == GeneratorKind::Rings) j["rings"] = c.rings;
    else j["c_stars"] = c.c_stars;
    if (c.padding) j["padding"] = *c.padding;
    if (c.focal_index) j["focal_index"] = *c.focal_index;
    if (!c.preset.empty()) j["preset"] = c.preset;
    if (c.corollary && c.corollary->preset == CorollaryScenario::Preset::Fine) j["m"] = c.corollary->m;
    return j;
}

StudySummary StudyResult::summary() const {
    StudySummary s;
    s.configurations = configurations.size();
    for (const auto& c : configurations) s.skipped += c.skipped ? 1 : 0;
    s.rows = rows.size();
    for (const auto& r : rows) {
        s.passed += r.pass ? 1 : 0;
        s.a_priori_passed += r.a_priori_pass ? 1 : 0;
    }
    s.lemma_rows = lemmas.size();
    for (const auto& l : lemmas) s.lemma_passed += l.pass ? 1 : 0;
    return s;
}

StudyResult run_study(const StudyConfig& cfg) {
    StudyResult out;
    out.config = cfg;
    if (cfg.corollary) out.corollary = corollary71(*cfg.corollary);
    if (!cfg.closed_form_reason.empty()) {
        ConfigurationRecord rec;
        rec.generator = generator_name(cfg.generator);
        if (cfg.corollary) {
            rec.r_sigma = cfg.corollary->r_sigma;
            rec.h = cfg.corollary->h();
            rec.c_star_target = cfg.corollary->c_star;
            rec.delta_requested = rec.delta = cfg.corollary->delta();
        }
        rec.weight = "indicator";
        rec.skipped = true;
        rec.skip_reason = cfg.closed_form_reason;
        out.configurations.push_back(std::move(rec));
        return out;
    }

    const bool ringed = cfg.generator == GeneratorKind::Rings;
    const std::size_t knobs = ringed ? cfg.rings.size() : cfg.c_stars.size();
    std::uint64_t geometry = 0;
    for (const double target : cfg.r_sigma_targets) {
        for (const double jitter : cfg.jitters) {
            for (std::size_t q = 0; q < knobs; ++q, ++geometry) {
                const double c_star = ringed ? 0.0 : cfg.c_stars[q];
                const int ring = ringed ? cfg.rings[q] : 0;
                const double spacing = cfg.generator == GeneratorKind::PoissonDisk ? target : target * std::numbers::sqrt2;
                const double padding = cfg.padding.value_or(default_padding(cfg.generator, spacing, jitter, c_star, ring));

                ConfigurationRecord base;
                base.generator = generator_name(cfg.generator);
                base.spacing = spacing;
                base.jitter = jitter;
                base.c_star_target = c_star;
                base.ring = ring;
                base.padding = padding;

                std::shared_ptr<const VoronoiDecomposition> decomp;
                FocalChoice focal;
                std::string failure;
                try {
                    const auto domain = DomainSpec::make(cfg.omega, padding);
                    GeneratorSpec g;
                    g.kind = cfg.generator;
                    g.spacing = spacing;
                    g.jitter = jitter;
                    g.seed = cfg.seed + 1000003ULL * geometry;
                    decomp = std::make_shared<const VoronoiDecomposition>(build_voronoi(generate_sites(domain, g), domain));
                    RadiusRule rule;
                    if (ringed) {
                        rule = [ring, spacing](const VoronoiDecomposition& d, std::size_t k) {
                            return ring_gap_radius(d, k, ring, spacing);
                        };
                    } else {
                        rule = [c_star](const VoronoiDecomposition& d, std::size_t) { return c_star * d.r_sigma(); };
                    }
                    focal = select_focal(*decomp, rule, cfg.focal_index);
                    base.sites = decomp->size();
                    base.r_sigma = decomp->r_sigma();
                    base.h = focal.h;
                    base.delta_requested = focal.delta_requested;
                    base.delta = focal.delta;
                    base.focal = focal.k;
                    base.clauses = focal.validation.clauses;
                    if (!base.clauses.empty()) {
                        base.uncovered_fraction = focal.validation.get(Clause::NeighborCover).measure /
                                                  (std::numbers::pi * focal.h * focal.h);
                    }
                    if (!focal.k) failure = focal.reason;
                } catch (const Error& e) {
                    failure = e.what();
                }

                for (const auto& ws : cfg.weights) {
                    ConfigurationRecord rec = base;
                    rec.id = out.configurations.size();
                    rec.weight = ws.name();
                    if (!failure.empty()) {
                        rec.skipped = true;
                        rec.skip_reason = failure;
                        out.configurations.push_back(std::move(rec));
                        continue;
                    }
                    std::vector<StudyRow> rows;
                    std::vector<LemmaRow> lemmas;
                    try {
                        ContextOptions opts;
                        opts.lambda = cfg.lambda;
                        const auto ctx = NeighborContext::make(decomp, *focal.k, make_weight(ws, focal.delta, focal.h), opts);
                        const auto in = geometric_inputs(ctx);
                        const auto consts = compute_constants(in);
                        std::array<BoundReport, 4> reports;
                        for (int t = 0; t < 4; ++t) reports[t] = theorem_bound(static_cast<Theorem>(t), in, consts);
                        const std::string summary = validation_summary(focal.validation);
                        for (const auto& name : cfg.functions) {
                            const auto f = make_test_function(name, cfg.omega, decomp->domain().padded());
                            const auto all = evaluate_all(ctx, f);
                            for (int fam = 0; fam < 4; ++fam) {
                                const auto family = static_cast<Family>(fam);
                                const auto& chain = all[static_cast<std::size_t>(fam)];
                                const auto exact = exact_value(family, ctx, f);
                                const auto& tilde = chain[static_cast<std::size_t>(Stage::Tilde)];
                                StudyRow row;
                                row.configuration = rec.id;
                                row.r_sigma = rec.r_sigma;
                                row.h = rec.h;
                                row.c_star = rec.h / rec.r_sigma;
                                row.lambda = cfg.lambda;
                                row.function = name;
                                row.op = operator_name(tilde.kind);
                                row.error = difference_norm(exact, tilde);
                                row.rhs = reports[static_cast<std::size_t>(fam)].rhs(f.seminorms());
                                row.pass = row.error <= row.rhs * kBoundSlack;
                                row.magnitude = tilde.is_vector() ? norm(tilde.vector()) : std::abs(tilde.scalar());
                                row.a_priori = a_priori_bound(family, ctx.delta(), f.seminorm(0));
                                row.a_priori_pass = row.magnitude <= row.a_priori * kBoundSlack;
                                row.validation = summary;
                                rows.push_back(std::move(row));
                                if (!cfg.lemmas) continue;
                                for (int step = 0; step < 4; ++step) {
                                    const auto g = lemma_gap(LemmaId{family, step}, exact, chain, in, consts, f);
                                    lemmas.push_back(LemmaRow{rec.id, name, lemma_label(g.id), g.lhs, g.rhs_bound,
                                                              g.uncertainty, g.pass});
                                }
                            }
                        }
                    } catch (const Error& e) {
                        rec.skipped = true;
                        rec.skip_reason = e.what();
                        rows.clear();
                        lemmas.clear();
                    }
                    out.rows.insert(out.rows.end(), rows.begin(), rows.end());
                    out.lemmas.insert(out.lemmas.end(), lemmas.begin(), lemmas.end());
                    out.configurations.push_back(std::move(rec));
                }
            }
        }
    }
    return out;
}

void write_study_csv(const StudyResult& r, std::ostream& out) {
    out << "r_sigma,h,C_star,lambda,function,operator,error,rhs,pass\n";
    for (const auto& row : r.rows) {
        out << format_double(row.r_sigma) << ',' << format_double(row.h) << ',' << format_double(row.c_star) << ','
            << format_double(row.lambda) << ',' << row.function << ',' << row.op << ',' << format_double(row.error)
            << ',' << format_double(row.rhs) << ',' << (row.pass ? "true" : "false") << '\n';
    }
}

json to_json(const StudyResult& r) {
    json configs = json::array();
    for (const auto& c : r.configurations) {
        json clauses = json::array();
        for (const auto& cl : c.clauses) clauses.push_back(to_json(cl));
        json j{{"id", c.id},
               {"generator", c.generator},
               {"spacing", c.spacing},
               {"jitter", c.jitter},
               {"weight", c.weight},
               {"sites", c.sites},
               {"H", c.padding},
               {"r_sigma", c.r_sigma},
               {"h", c.h},
               {"delta_requested", c.delta_requested},
               {"delta", c.delta},
               {"focal_index", c.focal ? json(*c.focal) : json(nullptr)},
               {"clauses", std::move(clauses)},
               {"uncovered_fraction", c.uncovered_fraction},
               {"skipped", c.skipped}};
        if (c.generator == "rings") j["ring"] = c.ring;
        else j["C_star_target"] = c.c_star_target;
        if (c.skipped) j["skip_reason"] = c.skip_reason;
        configs.push_back(std::move(j));
    }
    json rows = json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"configuration", row.configuration},
                        {"r_sigma", row.r_sigma},
                        {"h", row.h},
                        {"C_star", row.c_star},
                        {"lambda", row.lambda},
                        {"function", row.function},
                        {"operator", row.op},
                        {"error", row.error},
                        {"rhs", row.rhs},
                        {"pass", row.pass},
                        {"magnitude", row.magnitude},
                        {"a_priori", row.a_priori},
                        {"a_priori_pass", row.a_priori_pass},
                        {"validation", row.validation}});
    }
    json lemmas = json::array();
    for (const auto& l : r.lemmas) {
        lemmas.push_back({{"configuration", l.configuration},
                          {"function", l.function},
                          {"lemma", l.lemma},
                          {"lhs", l.lhs},
                          {"rhs", l.rhs},
                          {"uncertainty", l.uncertainty},
                          {"pass", l.pass}});
    }
    const auto s = r.summary();
    json j{{"config", to_json(r.config)},
           {"configurations", std::move(configs)},
           {"rows", std::move(rows)},
           {"lemmas", std::move(lemmas)},
           {"summary",
            {{"configurations", s.configurations},
             {"skipped", s.skipped},
             {"rows", s.rows},
             {"passed", s.passed},
             {"lemma_rows", s.lemma_rows},
             {"lemma_passed", s.lemma_passed},
             {"a_priori_passed", s.a_priori_passed}}}};
    if (r.corollary) j["corollary71"] = to_json(*r.corollary);
    return j;
}

void write_study_svg(const StudyResult& r, std::ostream& out) {
    constexpr double W = 760, Hgt = 500, left = 80, right = 170, top = 40, bottom = 60;
    static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    static const char* ops[] = {"pi_tilde", "grad_tilde", "laplace_tilde", "box_tilde"};

    double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
    std::size_t zeros = 0;
    for (const auto& row : r.rows) {
        xlo = std::min(xlo, row.r_sigma);
        xhi = std::max(xhi, row.r_sigma);
        for (double v : {row.error, row.rhs}) {
            if (v > 0.0 && std::isfinite(v)) {
                ylo = std::min(ylo, v);
                yhi = std::max(yhi, v);
            }
        }
        zeros += row.error > 0.0 ? 0 : 1;
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << Hgt << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!(xlo > 0.0) || !(ylo > 0.0)) {
        out << "<text x=\"20\" y=\"40\">no rows with positive values to plot</text>\n</svg>\n";
        return;
    }
    const double ex0 = std::floor(std::log10(xlo)), ex1 = std::max(std::ceil(std::log10(xhi)), ex0 + 1);
    const double ey0 = std::floor(std::log10(ylo)), ey1 = std::max(std::ceil(std::log10(yhi)), ey0 + 1);
    const double pw = W - left - right, ph = Hgt - top - bottom;
    const auto px = [&](double v) { return left + (std::log10(v) - ex0) / (ex1 - ex0) * pw; };
    const auto py = [&](double v) { return top + (ey1 - std::log10(v)) / (ey1 - ey0) * ph; };

    out << "<text x=\"" << left << "\" y=\"24\" font-size=\"14\">measured error (filled) and theorem bound (open) vs r_σ";
    if (zeros) out << "; " << zeros << " zero errors not shown";
    out << "</text>\n";
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double e = ex0; e <= ex1; e += 1.0) {
        const double x = left + (e - ex0) / (ex1 - ex0) * pw;
        out << "<line x1=\"" << x << "\" y1=\"" << top + ph << "\" x2=\"" << x << "\" y2=\"" << top + ph + 5
            << "\" stroke=\"black\"/><text x=\"" << x << "\" y=\"" << top + ph + 20 << "\" text-anchor=\"middle\">1e"
            << static_cast<int>(e) << "</text>\n";
    }
    const double ystep = std::max(1.0, std::ceil((ey1 - ey0) / 12.0));
    for (double e = ey0; e <= ey1; e += ystep) {
        const double y = top + (ey1 - e) / (ey1 - ey0) * ph;
        out << "<line x1=\"" << left - 5 << "\" y1=\"" << y << "\" x2=\"" << left << "\" y2=\"" << y
            << "\" stroke=\"black\"/><text x=\"" << left - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e"
            << static_cast<int>(e) << "</text>\n";
    }
    out << "<text x=\"" << left + pw / 2 << "\" y=\"" << Hgt - 15 << "\" text-anchor=\"middle\">r_σ (measured)</text>\n";
    for (const auto& row : r.rows) {
        const auto it = std::find(std::begin(ops), std::end(ops), row.op);
        const char* colour = it == std::end(ops) ? "black" : colours[it - std::begin(ops)];
        const double x = px(row.r_sigma);
        if (row.rhs > 0.0 && std::isfinite(row.rhs)) {
            out << "<rect x=\"" << x - 3.5 << "\" y=\"" << py(row.rhs) - 3.5 << "\" width=\"7\" height=\"7\" fill=\"none\" stroke=\""
                << colour << "\"/>\n";
        }
        if (row.error > 0.0) {
            out << "<circle cx=\"" << x << "\" cy=\"" << py(row.error) << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
        }
    }
    for (std::size_t i = 0; i < 4; ++i) {
        const double y = top + 20 + 20.0 * static_cast<double>(i);
        out << "<circle cx=\"" << W - right + 20 << "\" cy=\"" << y << "\" r=\"4\" fill=\"" << colours[i]
            << "\"/><text x=\"" << W - right + 32 << "\" y=\"" << y + 4 << "\">" << ops[i] << "</text>\n";
    }
    out << "</svg>\n";
}

std::string summary_line(const StudyResult& r) {
    const auto s = r.summary();
    std::ostringstream os;
    os << "study: " << s.configurations << " configurations (" << s.skipped << " skipped), " << s.passed << "/"
       << s.rows << " rows within their theorem bound";
    if (s.lemma_rows) os << ", " << s.lemma_passed << "/" << s.lemma_rows << " lemma steps pass";
    if (s.rows) os << ", " << s.a_priori_passed << "/" << s.rows << " within the a-priori bound";
    return os.str();
}

} // namespace mpsops

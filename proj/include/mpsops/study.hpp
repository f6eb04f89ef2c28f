#pragma once

#include "mpsops/assumptions.hpp"
#include "mpsops/bounds.hpp"
#include "mpsops/config_io.hpp"
#include "mpsops/lemmas.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mpsops {

/// Failed clauses that make a configuration unusable. The neighbor-cover
/// clause is recorded but not blocking: it fails on every lattice-like site
/// set (cells of sites just outside B_h reach into it), so treating it as
/// blocking would leave nothing to test.
std::vector<const ClauseResult*> blocking_failures(const ValidationReport& rep);

/// One focal site with its geometry: the input of validate, apply-op and bounds.
///   omega, H, and either sites or a generator object;
///   "h" or "C_star" (h = C_star * r_σ); optional "delta", "focal_index",
///   "x" (default a_k), "lambda", "weight" (default indicator).
struct ScenarioSpec {
    ParticleConfiguration particles;
    std::optional<double> h;
    std::optional<double> c_star;
    std::optional<double> delta;
    std::optional<std::size_t> focal_index;
    std::optional<Point2> x;
    std::optional<double> lambda;
    WeightSpec weight;
};

ScenarioSpec scenario_from_json(const json& j);

struct Scenario {
    std::shared_ptr<const VoronoiDecomposition> decomposition;
    std::size_t k = 0;
    double h = 0.0;
    double delta_requested = 0.0;
    double delta = 0.0;
    Point2 x;
    std::optional<double> lambda;
    WeightSpec weight;
    ValidationReport validation;
};

/// Builds the decomposition, picks the focal site (default: nearest to the
/// centroid of Ω), δ (default: admissible_delta with cap r_σ/2) and runs the validator.
Scenario resolve_scenario(const ScenarioSpec& spec);

/// Weight and λ of the scenario bound into a context. Throws AssumptionViolation
/// when the positivity check fails or R(a_k, λh) is empty.
NeighborContext make_context(const Scenario& s);

struct FocalChoice {
    std::optional<std::size_t> k;
    double delta_requested = 0.0;
    double delta = 0.0;
    double h = 0.0;
    ValidationReport validation;
    std::string reason;  ///< why no focal site was chosen
};

/// How h follows from the decomposition and a candidate focal index.
using RadiusRule = std::function<double(const VoronoiDecomposition&, std::size_t)>;

/// The site nearest to the centroid of Ω (ties: lower index) whose blocking
/// clauses all pass, among the `max_candidates` nearest; `forced` tries only that index.
FocalChoice select_focal(const VoronoiDecomposition& decomp, const RadiusRule& h_rule,
                         std::optional<std::size_t> forced = std::nullopt, std::size_t max_candidates = 64);

/// Radius just inside the gap before ring `ring` + 1 of a ring configuration:
/// the nearest point of any cell whose site lies beyond (ring + 1/2) spacing.
double ring_gap_radius(const VoronoiDecomposition& decomp, std::size_t k, int ring, double spacing);

struct StudyConfig {
    Rect omega{{0.0, 0.0}, {1.0, 1.0}};
    GeneratorKind generator = GeneratorKind::Jittered;
    /// Target r_σ per configuration; the lattice spacing is r_target * sqrt(2)
    /// (Poisson-disk: the minimum distance is r_target).
    std::vector<double> r_sigma_targets;
    std::vector<double> jitters{0.0};
    /// h = C_* r_σ with the measured r_σ (lattice, jittered, Poisson-disk).
    std::vector<double> c_stars;
    /// Rings generator: h sits in the gap after this many rings.
    std::vector<int> rings;
    std::optional<double> padding;
    double lambda = 0.5;
    std::vector<WeightSpec> weights{WeightSpec{}};
    std::vector<std::string> functions = test_function_names();
    std::uint64_t seed = 1;
    std::optional<std::size_t> focal_index;
    bool lemmas = true;
    /// Closed-form-only presets: no geometry is built, the scenario's
    /// coefficients are reported and every configuration is skipped with `closed_form_reason`.
    std::optional<CorollaryScenario> corollary;
    std::string closed_form_reason;
    std::string preset;
};

/// Throws ConfigError on malformed input or an empty sweep.
StudyConfig study_config_from_json(const json& j);
json to_json(const StudyConfig& cfg);

/// Jittered lattice with r_σ close to 10⁻², C_* = 4, λ = 1/2, indicator weight.
StudyConfig preset_corollary71_ii();
/// r_σ = 10^{-5m}, C_* = 10^{4m}: far beyond desk scale, closed forms only.
StudyConfig preset_corollary71_i(int m);
/// "corollary71-i" or "corollary71-ii"; throws ConfigError otherwise.
StudyConfig study_preset(const std::string& name, int m);

struct ConfigurationRecord {
    std::size_t id = 0;
    std::string generator;
    double spacing = 0.0;
    double jitter = 0.0;
    double c_star_target = 0.0;
    int ring = 0;
    std::string weight;
    std::size_t sites = 0;
    double padding = 0.0;
    double r_sigma = 0.0;
    double h = 0.0;
    double delta_requested = 0.0;
    double delta = 0.0;
    std::optional<std::size_t> focal;
    std::vector<ClauseResult> clauses;
    /// Uncovered fraction of B_h(a_k) from the cover clause.
    double uncovered_fraction = 0.0;
    bool skipped = false;
    std::string skip_reason;
};

/// One (configuration, function, operator) comparison against its theorem.
struct StudyRow {
    std::size_t configuration = 0;
    double r_sigma = 0.0;
    double h = 0.0;
    double c_star = 0.0;
    double lambda = 0.0;
    std::string function;
    std::string op;
    double error = 0.0;
    double rhs = 0.0;
    bool pass = false;
    double magnitude = 0.0;      ///< |value| of the discrete operator
    double a_priori = 0.0;       ///< its a-priori bound
    bool a_priori_pass = false;
    std::string validation;
};

struct LemmaRow {
    std::size_t configuration = 0;
    std::string function;
    std::string lemma;
    double lhs = 0.0;
    double rhs = 0.0;
    double uncertainty = 0.0;
    bool pass = false;
};

struct StudySummary {
    std::size_t configurations = 0;
    std::size_t skipped = 0;
    std::size_t rows = 0;
    std::size_t passed = 0;
    std::size_t lemma_rows = 0;
    std::size_t lemma_passed = 0;
    std::size_t a_priori_passed = 0;
};

struct StudyResult {
    StudyConfig config;
    std::vector<ConfigurationRecord> configurations;
    std::vector<StudyRow> rows;
    std::vector<LemmaRow> lemmas;
    std::optional<CorollaryBounds> corollary;

    StudySummary summary() const;
};

StudyResult run_study(const StudyConfig& cfg);

/// Header: r_sigma,h,C_star,lambda,function,operator,error,rhs,pass
void write_study_csv(const StudyResult& r, std::ostream& out);
json to_json(const StudyResult& r);
/// Log-log plot of measured error and theorem RHS against r_σ, one colour per operator.
void write_study_svg(const StudyResult& r, std::ostream& out);
std::string summary_line(const StudyResult& r);

} // namespace mpsops

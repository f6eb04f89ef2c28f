#pragma once

#include "mpsops/voronoi.hpp"
#include "mpsops/weights.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mpsops {

using json = nlohmann::json;

/// Sites plus the domain they live in. File form:
///   {"omega": {"min": [x, y], "max": [x, y]}, "H": real, "sites": [[x, y], ...]}
struct ParticleConfiguration {
    DomainSpec domain;
    std::vector<Point2> sites;
};

json to_json(const ParticleConfiguration& cfg);
/// Throws ConfigError on missing or mistyped fields.
ParticleConfiguration particle_configuration_from_json(const json& j);

/// Reads and parses a JSON file; ConfigError when unreadable or not JSON.
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Weight selection in configuration files:
///   {"type": "indicator"}
///   {"type": "linear_taper"}
///   {"type": "radial_table", "r": [...], "w": [...], "L_w": real?, "relative": bool?}
/// With "relative": true the table radii are fractions of h.
struct WeightSpec {
    enum class Type { Indicator, LinearTaper, RadialTable };
    Type type = Type::Indicator;
    std::vector<double> r;
    std::vector<double> w;
    std::optional<double> lipschitz;
    bool relative = false;

    std::string name() const;
};

WeightSpec weight_spec_from_json(const json& j);
json to_json(const WeightSpec& spec);
WeightFunction make_weight(const WeightSpec& spec, double delta, double h);

enum class GeneratorKind { Lattice, Jittered, PoissonDisk, Rings };

const char* generator_name(GeneratorKind kind);
GeneratorKind parse_generator(const std::string& name);

/// Site generator over the padded rectangle.
///
/// Lattice: cell centers of a uniform grid; the grid size is `counts` when
/// given, else width/spacing rounded. Jittered: each lattice site moved by
/// up to jitter * spacing per coordinate, jitter in [0, 0.49). Poisson-disk:
/// maximal dart throwing (Bridson) with minimum distance `spacing`. Rings:
/// one site at `center` (default: centroid of Ω) and concentric rings of
/// radius m * spacing carrying ceil(2πm) equally spaced sites each, every
/// ring rotated by a random offset.
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Lattice;
    double spacing = 0.0;
    std::optional<std::array<int, 2>> counts;
    double jitter = 0.0;
    std::uint64_t seed = 0;
    std::optional<Point2> center;
};

GeneratorSpec generator_spec_from_json(const json& j);
json to_json(const GeneratorSpec& spec);

/// Deterministic in the seed. Throws InvalidArgument when the requested
/// spacing cannot be realized; the message states the achieved spacing.
std::vector<Point2> generate_sites(const DomainSpec& domain, const GeneratorSpec& spec);

/// Smallest pairwise distance (brute force over a bucket grid).
double min_site_spacing(const std::vector<Point2>& sites);

// Field helpers shared by the configuration readers; all throw ConfigError.
Rect rect_from_json(const json& j);
json to_json(const Rect& r);
Point2 point_from_json(const json& j);
json to_json(Point2 p);
const json& require_field(const json& j, const char* key, const char* where);
double require_number(const json& j, const char* key, const char* where);

} // namespace mpsops

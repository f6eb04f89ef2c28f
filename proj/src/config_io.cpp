#include "mpsops/config_io.hpp"

#include "mpsops/errors.hpp"
#include "mpsops/random.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace mpsops {

namespace {

std::string where_key(const char* where, const char* key) {
    return std::string(where) + "." + key;
}

double as_number(const json& v, const std::string& what) {
    if (!v.is_number()) throw ConfigError(what + ": expected a number");
    return v.get<double>();
}

std::vector<double> number_array(const json& v, const std::string& what) {
    if (!v.is_array()) throw ConfigError(what + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(as_number(e, what));
    return out;
}

std::vector<Point2> lattice(const Rect& box, const GeneratorSpec& spec) {
    int nx = 0, ny = 0;
    if (spec.counts) {
        nx = (*spec.counts)[0];
        ny = (*spec.counts)[1];
        if (nx < 1 || ny < 1) throw InvalidArgument("lattice counts must be positive");
    } else {
        if (!(spec.spacing > 0.0)) throw InvalidArgument("lattice spacing must be positive");
        nx = static_cast<int>(std::lround(box.width() / spec.spacing));
        ny = static_cast<int>(std::lround(box.height() / spec.spacing));
    }
    if (static_cast<long>(nx) * ny < 2) {
        std::ostringstream os;
        os << "generator cannot satisfy spacing " << spec.spacing << ": padded domain " << box.width() << " x "
           << box.height() << " holds " << nx * ny << " site(s), achieved spacing "
           << std::max(box.width(), box.height());
        throw InvalidArgument(os.str());
    }
    const double dx = box.width() / nx;
    const double dy = box.height() / ny;
    const bool jitter = spec.kind == GeneratorKind::Jittered && spec.jitter > 0.0;
    const CounterRng rng(spec.seed, 1);
    std::vector<Point2> out;
    out.reserve(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            Point2 p{box.min.x1 + (i + 0.5) * dx, box.min.x2 + (j + 0.5) * dy};
            if (jitter) {
                const std::uint64_t n = 2 * out.size();
                p.x1 += (2.0 * rng.uniform(n) - 1.0) * spec.jitter * dx;
                p.x2 += (2.0 * rng.uniform(n + 1) - 1.0) * spec.jitter * dy;
            }
            out.push_back(p);
        }
    }
    return out;
}

std::vector<Point2> poisson_disk(const Rect& box, const GeneratorSpec& spec) {
    const double s = spec.spacing;
    if (!(s > 0.0)) throw InvalidArgument("Poisson-disk spacing must be positive");
    const double cell = s / std::numbers::sqrt2;
    const int gx = std::max(1, static_cast<int>(std::ceil(box.width() / cell)));
    const int gy = std::max(1, static_cast<int>(std::ceil(box.height() / cell)));
    std::vector<int> grid(static_cast<std::size_t>(gx) * gy, -1);
    std::vector<Point2> out;
    std::vector<std::size_t> active;
    CounterRng rng(spec.seed, 2);

    const auto slot = [&](Point2 p) {
        const int i = std::clamp(static_cast<int>((p.x1 - box.min.x1) / cell), 0, gx - 1);
        const int j = std::clamp(static_cast<int>((p.x2 - box.min.x2) / cell), 0, gy - 1);
        return std::pair{i, j};
    };
    const auto fits = [&](Point2 p) {
        if (!box.contains(p)) return false;
        const auto [i, j] = slot(p);
        for (int b = std::max(0, j - 2); b <= std::min(gy - 1, j + 2); ++b) {
            for (int a = std::max(0, i - 2); a <= std::min(gx - 1, i + 2); ++a) {
                const int m = grid[static_cast<std::size_t>(b) * gx + a];
                if (m >= 0 && distance(out[static_cast<std::size_t>(m)], p) < s) return false;
            }
        }
        return true;
    };
    const auto insert = [&](Point2 p) {
        const auto [i, j] = slot(p);
        grid[static_cast<std::size_t>(j) * gx + i] = static_cast<int>(out.size());
        active.push_back(out.size());
        out.push_back(p);
    };

    insert({box.min.x1 + rng.next() * box.width(), box.min.x2 + rng.next() * box.height()});
    constexpr int kAttempts = 30;
    while (!active.empty()) {
        const std::size_t pick = static_cast<std::size_t>(rng.next() * static_cast<double>(active.size()));
        const Point2 base = out[active[pick]];
        bool placed = false;
        for (int t = 0; t < kAttempts && !placed; ++t) {
            const double rad = s * (1.0 + rng.next());
            const double ang = 2.0 * std::numbers::pi * rng.next();
            const Point2 p = base + rad * Point2{std::cos(ang), std::sin(ang)};
            if (fits(p)) {
                insert(p);
                placed = true;
            }
        }
        if (!placed) {
            active[pick] = active.back();
            active.pop_back();
        }
    }
    if (out.size() < 2) {
        std::ostringstream os;
        os << "generator cannot satisfy spacing " << s << ": padded domain " << box.width() << " x " << box.height()
           << " holds a single site, achieved spacing " << std::max(box.width(), box.height());
        throw InvalidArgument(os.str());
    }
    return out;
}

std::vector<Point2> rings(const Rect& box, const Rect& omega, const GeneratorSpec& spec) {
    const double s = spec.spacing;
    if (!(s > 0.0)) throw InvalidArgument("ring spacing must be positive");
    const Point2 c = spec.center.value_or(Point2{0.5 * (omega.min.x1 + omega.max.x1), 0.5 * (omega.min.x2 + omega.max.x2)});
    if (!box.contains(c)) throw InvalidArgument("ring center lies outside the padded domain");
    const CounterRng rng(spec.seed, 3);
    const double reach = std::max({distance(c, box.min), distance(c, box.max), distance(c, {box.min.x1, box.max.x2}),
                                   distance(c, {box.max.x1, box.min.x2})});
    std::vector<Point2> out{c};
    for (int m = 1; (m - 1) * s <= reach; ++m) {
        const int n = static_cast<int>(std::ceil(2.0 * std::numbers::pi * m));
        const double offset = 2.0 * std::numbers::pi * rng.uniform(static_cast<std::uint64_t>(m));
        for (int j = 0; j < n; ++j) {
            const double t = offset + 2.0 * std::numbers::pi * j / n;
            const Point2 p = c + (m * s) * Point2{std::cos(t), std::sin(t)};
            if (box.contains(p)) out.push_back(p);
        }
    }
    if (out.size() < 2) {
        std::ostringstream os;
        os << "generator cannot satisfy spacing " << s << ": no ring fits in the padded domain, achieved spacing "
           << std::max(box.width(), box.height());
        throw InvalidArgument(os.str());
    }
    return out;
}

} // namespace

const json& require_field(const json& j, const char* key, const char* where) {
    if (!j.is_object()) throw ConfigError(std::string(where) + ": expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw ConfigError("missing field '" + where_key(where, key) + "'");
    return *it;
}

double require_number(const json& j, const char* key, const char* where) {
    return as_number(require_field(j, key, where), where_key(where, key));
}

Point2 point_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ConfigError("point: expected [x, y]");
    const Point2 p{as_number(j[0], "point"), as_number(j[1], "point")};
    if (!is_finite(p)) throw ConfigError("point: non-finite coordinate");
    return p;
}

json to_json(Point2 p) { return json::array({p.x1, p.x2}); }

Rect rect_from_json(const json& j) {
    const Point2 lo = point_from_json(require_field(j, "min", "omega"));
    const Point2 hi = point_from_json(require_field(j, "max", "omega"));
    return Rect{lo, hi};
}

json to_json(const Rect& r) { return {{"min", to_json(r.min)}, {"max", to_json(r.max)}}; }

json to_json(const ParticleConfiguration& cfg) {
    json sites = json::array();
    for (const auto& p : cfg.sites) sites.push_back(to_json(p));
    return {{"omega", to_json(cfg.domain.omega)}, {"H", cfg.domain.padding}, {"sites", std::move(sites)}};
}

ParticleConfiguration particle_configuration_from_json(const json& j) {
    ParticleConfiguration cfg;
    const Rect omega = rect_from_json(require_field(j, "omega", "config"));
    const double padding = require_number(j, "H", "config");
    try {
        cfg.domain = DomainSpec::make(omega, padding);
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    const auto& sites = require_field(j, "sites", "config");
    if (!sites.is_array()) throw ConfigError("config.sites: expected an array of [x, y]");
    cfg.sites.reserve(sites.size());
    for (const auto& s : sites) cfg.sites.push_back(point_from_json(s));
    return cfg;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
    if (!out) throw Error("write to '" + path + "' failed");
}

std::string WeightSpec::name() const {
    switch (type) {
    case Type::Indicator: return "indicator";
    case Type::LinearTaper: return "linear_taper";
    case Type::RadialTable: return "radial_table";
    }
    return "?";
}

WeightSpec weight_spec_from_json(const json& j) {
    WeightSpec spec;
    const auto& t = require_field(j, "type", "weight");
    if (!t.is_string()) throw ConfigError("weight.type: expected a string");
    const auto type = t.get<std::string>();
    if (type == "indicator") {
        spec.type = WeightSpec::Type::Indicator;
    } else if (type == "linear_taper") {
        spec.type = WeightSpec::Type::LinearTaper;
    } else if (type == "radial_table") {
        spec.type = WeightSpec::Type::RadialTable;
        spec.r = number_array(require_field(j, "r", "weight"), "weight.r");
        spec.w = number_array(require_field(j, "w", "weight"), "weight.w");
        if (j.contains("L_w")) spec.lipschitz = as_number(j["L_w"], "weight.L_w");
        if (j.contains("relative")) {
            if (!j["relative"].is_boolean()) throw ConfigError("weight.relative: expected a boolean");
            spec.relative = j["relative"].get<bool>();
        }
    } else {
        throw ConfigError("weight.type: unknown weight '" + type + "'");
    }
    return spec;
}

json to_json(const WeightSpec& spec) {
    json j{{"type", spec.name()}};
    if (spec.type == WeightSpec::Type::RadialTable) {
        j["r"] = spec.r;
        j["w"] = spec.w;
        if (spec.lipschitz) j["L_w"] = *spec.lipschitz;
        j["relative"] = spec.relative;
    }
    return j;
}

WeightFunction make_weight(const WeightSpec& spec, double delta, double h) {
    switch (spec.type) {
    case WeightSpec::Type::Indicator: return WeightFunction::indicator(delta, h);
    case WeightSpec::Type::LinearTaper: return WeightFunction::linear_taper(delta, h);
    case WeightSpec::Type::RadialTable: {
        auto r = spec.r;
        auto lip = spec.lipschitz;
        if (spec.relative) {
            for (auto& v : r) v *= h;
            if (lip) *lip /= h;
        }
        return WeightFunction::radial_table(std::move(r), spec.w, delta, h, lip);
    }
    }
    throw InvalidArgument("unknown weight type");
}

const char* generator_name(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::Lattice: return "lattice";
    case GeneratorKind::Jittered: return "jittered";
    case GeneratorKind::PoissonDisk: return "poisson_disk";
    case GeneratorKind::Rings: return "rings";
    }
    return "?";
}

GeneratorKind parse_generator(const std::string& name) {
    for (auto k : {GeneratorKind::Lattice, GeneratorKind::Jittered, GeneratorKind::PoissonDisk, GeneratorKind::Rings}) {
        if (name == generator_name(k)) return k;
    }
    throw ConfigError("unknown generator '" + name + "'");
}

GeneratorSpec generator_spec_from_json(const json& j) {
    GeneratorSpec spec;
    const auto& t = require_field(j, "type", "generator");
    if (!t.is_string()) throw ConfigError("generator.type: expected a string");
    spec.kind = parse_generator(t.get<std::string>());
    if (j.contains("counts")) {
        const auto c = number_array(j["counts"], "generator.counts");
        if (c.size() != 2) throw ConfigError("generator.counts: expected [nx, ny]");
        spec.counts = std::array<int, 2>{static_cast<int>(c[0]), static_cast<int>(c[1])};
    } else {
        spec.spacing = require_number(j, "spacing", "generator");
    }
    if (j.contains("jitter")) spec.jitter = as_number(j["jitter"], "generator.jitter");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            throw ConfigError("generator.seed: expected an integer");
        spec.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("center")) spec.center = point_from_json(j["center"]);
    return spec;
}

json to_json(const GeneratorSpec& spec) {
    json j{{"type", generator_name(spec.kind)}, {"jitter", spec.jitter}, {"seed", spec.seed}};
    if (spec.counts) j["counts"] = *spec.counts;
    else j["spacing"] = spec.spacing;
    if (spec.center) j["center"] = to_json(*spec.center);
    return j;
}

std::vector<Point2> generate_sites(const DomainSpec& domain, const GeneratorSpec& spec) {
    if (spec.jitter < 0.0 || spec.jitter >= 0.49) throw InvalidArgument("jitter fraction must lie in [0, 0.49)");
    const Rect box = domain.padded();
    switch (spec.kind) {
    case GeneratorKind::Lattice:
    case GeneratorKind::Jittered: return lattice(box, spec);
    case GeneratorKind::PoissonDisk: return poisson_disk(box, spec);
    case GeneratorKind::Rings: return rings(box, domain.omega, spec);
    }
    throw InvalidArgument("unknown generator");
}

double min_site_spacing(const std::vector<Point2>& sites) {
    if (sites.size() < 2) return std::numeric_limits<double>::infinity();
    std::vector<Point2> p = sites;
    std::sort(p.begin(), p.end(), [](Point2 a, Point2 b) { return a.x1 < b.x1 || (a.x1 == b.x1 && a.x2 < b.x2); });
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size() && p[j].x1 - p[i].x1 < best; ++j) {
            best = std::min(best, distance(p[i], p[j]));
        }
    }
    return best;
}

} // namespace mpsops

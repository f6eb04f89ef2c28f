#include "mpsops/report.hpp"

#include <cmath>
#include <cstdio>

namespace mpsops {

namespace {

// JSON has no NaN; constants that need λ are null without it.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json moments(const MomentNorms& m) {
    json j = json::object();
    for (int n = -1; n <= 2; ++n) j[std::to_string(n)] = number(m[n]);
    return j;
}

json pairs(const std::array<CoefficientPair, 4>& p) {
    static const char* names[] = {"pi_tilde", "grad_tilde", "laplace_tilde", "box_tilde"};
    json j = json::object();
    for (std::size_t i = 0; i < 4; ++i) j[names[i]] = {{"high", number(p[i].high)}, {"low", number(p[i].low)}};
    return j;
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json to_json(const ClauseResult& c) {
    json j{{"clause", clause_label(c.clause)}, {"pass", c.pass}, {"message", c.message}, {"measure", number(c.measure)}};
    if (c.witness) j["witness"] = to_json(*c.witness);
    return j;
}

json to_json(const ValidationReport& rep) {
    json clauses = json::array();
    for (const auto& c : rep.clauses) clauses.push_back(to_json(c));
    return {{"pass", rep.all_pass()},
            {"r_sigma", rep.r_sigma},
            {"h", rep.h},
            {"delta", rep.delta},
            {"H", rep.padding},
            {"clauses", std::move(clauses)}};
}

json to_json(const OperatorResult& r) {
    json j{{"operator", operator_name(r.kind)}, {"denominator", number(r.denominator)}, {"uncertainty", number(r.uncertainty)}};
    if (r.is_vector()) j["value"] = to_json(r.vector());
    else j["value"] = number(r.scalar());
    return j;
}

json to_json(const BoundInputs& in) {
    json j{{"h", in.h},
           {"delta", in.delta},
           {"r_sigma", in.r_sigma},
           {"lambda", in.lambda ? json(*in.lambda) : json(nullptr)},
           {"L_w", in.lipschitz},
           {"annulus", moments(in.annulus)},
           {"focal_cell", moments(in.focal_cell)},
           {"outside_cell", moments(in.outside_cell)},
           {"moment_ratio", number(in.moment_ratio)},
           {"inverse_distance_ratio", number(in.inverse_distance_ratio)},
           {"appendix_simplified", in.appendix_simplified}};
    if (in.lambda) {
        j["ring"] = moments(in.ring);
        j["ring_radius"] = in.ring_radius;
        j["ring_radius_effective"] = in.ring_radius_effective;
    }
    return j;
}

json to_json(const ConstantSet& c) {
    json j = json::object();
    for (int i = 1; i <= 12; ++i) {
        const auto& k = c.c[static_cast<std::size_t>(i)];
        j["c" + std::to_string(i)] = {{"value", number(k.value)}, {"numerator", number(k.numerator)},
                                      {"denominator", number(k.denominator)}};
    }
    return j;
}

json to_json(const BoundReport& rep) {
    json used = json::array();
    for (int i : rep.used_constants) used.push_back("c" + std::to_string(i));
    return {{"theorem", theorem_name(rep.theorem)},
            {"coefficients", {{"C0", rep.coefficients[0]}, {"C1", rep.coefficients[1]}, {"C2", rep.coefficients[2]},
                              {"C3", rep.coefficients[3]}}},
            {"used_constants", std::move(used)},
            {"constants", to_json(rep.constants)},
            {"inputs", to_json(rep.inputs)},
            {"notes", rep.notes}};
}

json to_json(const CorollaryBounds& b) {
    const auto& s = b.scenario;
    const char* preset = s.preset == CorollaryScenario::Preset::Fine     ? "corollary71-i"
                         : s.preset == CorollaryScenario::Preset::Coarse ? "corollary71-ii"
                                                                         : "none";
    json j{{"scenario",
            {{"r_sigma", s.r_sigma}, {"C_star", s.c_star}, {"lambda", s.lambda}, {"h", s.h()}, {"delta", s.delta()},
             {"preset", preset}, {"m", s.m}}},
           {"general", pairs(b.general)},
           {"via_constants", pairs(b.via_constants)}};
    if (b.stated) j["stated"] = pairs(*b.stated);
    return j;
}

json to_json(const GapReport& g) {
    return {{"lemma", lemma_label(g.id)},
            {"lhs", number(g.lhs)},
            {"rhs", number(g.rhs_bound)},
            {"uncertainty", number(g.uncertainty)},
            {"pass", g.pass}};
}

} // namespace mpsops

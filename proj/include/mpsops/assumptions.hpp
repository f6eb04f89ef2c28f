#pragma once

#include "mpsops/geometry.hpp"
#include "mpsops/voronoi.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mpsops {

enum class Clause {
    RadiusOrdering,   ///< r_σ < h < H
    FocalSite,        ///< a_k ∈ σ_k ∩ Ω
    InnerBall,        ///< B_δ(a_k) ⊂ σ_k ∩ Ω
    PaddingBall,      ///< B_{h+r_σ}(x) ⊂ Ω_H
    NeighborCover,    ///< B_h(x) ⊂ ⋃_{i∈R̄(x,h)} closure(σ_i)
};

const char* clause_label(Clause c);

struct ClauseResult {
    Clause clause;
    bool pass = false;
    std::string message;
    std::optional<Point2> witness;
    /// Clause-specific slack: a margin for the ball clauses, the uncovered area for the cover clause.
    double measure = 0.0;
};

struct ValidationReport {
    std::vector<ClauseResult> clauses;
    double r_sigma = 0.0;
    double h = 0.0;
    double delta = 0.0;
    double padding = 0.0;

    bool all_pass() const;
    const ClauseResult& get(Clause c) const;
    /// Failures except those listed in `ignored`.
    std::vector<const ClauseResult*> failures(std::initializer_list<Clause> ignored = {}) const;
};

/// Checks every standing assumption for focal index k at the point x ∈ B_δ(a_k).
///
/// Ω_H is taken as the true H-neighborhood of the rectangle Ω for the padding
/// clause (stricter than the outset rectangle the cells are clipped to). The
/// cover clause is decided exactly: every cell outside R̄(x,h) must meet B_h(x)
/// in zero area, and the cells together must cover the disk.
ValidationReport validate_standing_assumptions(const VoronoiDecomposition& decomp, std::size_t k, double h,
                                               double delta, Point2 x);

/// Largest δ <= cap with B_δ(a_k) ⊂ σ_k ∩ Ω (σ_k's inradius about a_k and the distance to ∂Ω).
double admissible_delta(const VoronoiDecomposition& decomp, std::size_t k, double cap);

} // namespace mpsops

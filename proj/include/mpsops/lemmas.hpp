#pragma once

#include "mpsops/bounds.hpp"
#include "mpsops/operators.hpp"

#include <array>
#include <string>
#include <vector>

namespace mpsops {

/// One step of an operator chain exact → continuous → hat → breve → tilde.
/// `step` 0 compares the exact value with the continuous operator, step 3
/// compares breve with tilde.
struct LemmaId {
    Family family;
    int step;
    friend constexpr bool operator==(LemmaId, LemmaId) = default;
};

/// "3.1a".."3.1d", "4.1", "4.2a".."4.2c", "5.1", "5.2a".."5.2c", "6.1", "6.2a".."6.2c".
std::string lemma_label(LemmaId id);
LemmaId parse_lemma(const std::string& label);
const std::array<LemmaId, 16>& all_lemmas();

/// Coefficients of |f|_{C⁰}..|f|_{C³} in the right-hand side of one step.
std::array<double, 4> lemma_coefficients(LemmaId id, const BoundInputs& in, const ConstantSet& c);

struct GapReport {
    LemmaId id;
    double lhs = 0.0;
    double rhs_bound = 0.0;
    /// Combined numerical uncertainty of the two compared values.
    double uncertainty = 0.0;
    /// lhs <= rhs_bound (1 + 1e-9) + uncertainty
    bool pass = false;
};

/// Multiplicative slack on every bound comparison.
inline constexpr double kBoundSlack = 1.0 + 1e-9;

/// Gap of one step given the already evaluated chain of its family.
GapReport lemma_gap(LemmaId id, const OperatorResult& exact, const FamilyChain& chain, const BoundInputs& in,
                    const ConstantSet& c, const TestFunction& f);

/// Evaluates the chain and the geometric bound inputs itself.
GapReport lemma_gap(LemmaId id, const NeighborContext& ctx, const TestFunction& f);

/// Sum of the four step differences minus the total difference exact - tilde
/// (zero up to rounding; scalar families use the value, vector families the norm of the vector residual).
double telescoping_residual(const OperatorResult& exact, const FamilyChain& chain);

} // namespace mpsops

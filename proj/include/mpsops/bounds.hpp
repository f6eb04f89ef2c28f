#pragma once

#include "mpsops/context.hpp"
#include "mpsops/operators.hpp"
#include "mpsops/weights.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace mpsops {

/// Weighted L¹ norms ‖|a_k - ·|^n w(a_k - ·)‖ over one region, for n = -1, 0, 1, 2.
struct MomentNorms {
    std::array<double, 4> by_power{};
    double operator[](int n) const { return by_power.at(static_cast<std::size_t>(n + 1)); }
    double& operator[](int n) { return by_power.at(static_cast<std::size_t>(n + 1)); }
};

/// Every geometric quantity the constants c₁..c₁₂ are built from.
struct BoundInputs {
    double h = 0.0;
    double delta = 0.0;
    double r_sigma = 0.0;
    std::optional<double> lambda;
    double lipschitz = 0.0;

    MomentNorms annulus;       ///< over B_h \ B_δ
    MomentNorms focal_cell;    ///< over σ_k \ B_δ
    MomentNorms outside_cell;  ///< over B_h \ σ_k
    MomentNorms ring;          ///< over B_{λh+r_σ} \ σ_k (outer radius capped at h)
    double ring_radius = 0.0;          ///< λh + r_σ as written
    double ring_radius_effective = 0.0; ///< min(λh + r_σ, h)

    /// Σ_{R(a_k,h)} V|a_k-a_i| w / Σ_{R(a_k,h)} V|a_k-a_j|² w
    double moment_ratio = 0.0;
    /// Σ_{R(a_k,λh)} V w/|a_k-a_i| / Σ_{R(a_k,h)} V w
    double inverse_distance_ratio = 0.0;

    /// Built from the closed-form identifications of the indicator appendix
    /// rather than from the actual cells.
    bool appendix_simplified = false;
};

/// Quantities measured on the actual Voronoi geometry around a_k.
BoundInputs geometric_inputs(const NeighborContext& ctx);

/// The appendix identifications: σ_k-excluded norms are replaced by B_δ-excluded
/// ones, the σ_k \ B_δ region by B_{r_σ} \ B_δ, and the discrete ratios by
/// their continuous counterparts. No cells are involved.
BoundInputs appendix_inputs(const WeightFunction& w, double r_sigma, std::optional<double> lambda);

/// A constant together with the numerator and denominator it was formed from.
struct Constant {
    double value = 0.0;
    double numerator = 0.0;
    double denominator = 1.0;
};

/// c[1]..c[12]; c[0] is unused. Constants needing λ are NaN without it.
struct ConstantSet {
    std::array<Constant, 13> c{};
    double operator()(int i) const { return c.at(static_cast<std::size_t>(i)).value; }
};

/// Throws AssumptionViolation on a vanishing denominator.
ConstantSet compute_constants(const BoundInputs& in);

enum class Theorem { Interpolation, Gradient, Laplacian, BoxLaplacian };

Theorem theorem_for(Family family);
const char* theorem_name(Theorem t);

struct BoundReport {
    Theorem theorem;
    /// Coefficients multiplying |f|_{C⁰}, |f|_{C¹}, |f|_{C²}, |f|_{C³}.
    std::array<double, 4> coefficients{};
    std::vector<int> used_constants;
    BoundInputs inputs;
    ConstantSet constants;
    std::vector<std::string> notes;

    double rhs(const std::array<double, 4>& seminorms) const;
};

BoundReport theorem_bound(Theorem t, const BoundInputs& in);
BoundReport theorem_bound(Theorem t, const BoundInputs& in, const ConstantSet& c);

/// Convenience wrappers on a context (geometric inputs).
ConstantSet constants_thm13(const NeighborContext& ctx);
ConstantSet constants_thm14(const NeighborContext& ctx);
ConstantSet constants_thm15(const NeighborContext& ctx);
ConstantSet constants_thm16(const NeighborContext& ctx);

/// Parameters of the indicator-weight appendix: h = C_* r_σ, δ = r_σ/2.
struct CorollaryScenario {
    enum class Preset { None, Fine, Coarse };

    double r_sigma = 0.0;
    double c_star = 0.0;
    double lambda = 0.5;
    Preset preset = Preset::None;
    int m = 0;

    double h() const { return c_star * r_sigma; }
    double delta() const { return 0.5 * r_sigma; }

    /// r_σ = 10^{-5m}, C_* = 10^{4m}, λ = 10^{-2m}.
    static CorollaryScenario fine(int m);
    /// r_σ = 10^{-2}, C_* = 4, λ = 1/2.
    static CorollaryScenario coarse();
};

/// (coefficient of the highest seminorm, coefficient of the lowest) per operator:
/// Π̃ (C¹, C⁰), ∇̃ (C², C¹), Δ̃ (C³, C¹), □̃ (C³, C¹).
struct CoefficientPair {
    double high = 0.0;
    double low = 0.0;
};

struct CorollaryBounds {
    CorollaryScenario scenario;
    /// Closed forms in (r_σ, C_*, λ).
    std::array<CoefficientPair, 4> general{};
    /// The same bounds assembled from c₁..c₁₂ on appendix_inputs.
    std::array<CoefficientPair, 4> via_constants{};
    /// The rounded coefficients stated for the two presets.
    std::optional<std::array<CoefficientPair, 4>> stated;
};

CorollaryBounds corollary71(const CorollaryScenario& s);

/// 2(m+1) dist^{m+1} seminorm, the bound on the Taylor remainder of order m+1.
double taylor_remainder_bound(int m, double dist, double seminorm);

/// Σ_{|α|=m} 1/α! over two-index multi-indices (= 2^m/m!).
double multinomial_inverse_sum(int m);

} // namespace mpsops

#pragma once

#include "mpsops/context.hpp"
#include "mpsops/test_functions.hpp"

#include <array>
#include <string>
#include <variant>

namespace mpsops {

/// Which derivative is being approximated.
enum class Family { Interpolation, Gradient, Laplacian, BoxLaplacian };

/// Continuous integral over the annulus, cell-wise integral (hat), cell-wise
/// with f and distances frozen at the sites (breve), fully discrete (tilde).
enum class Stage { Continuous, Hat, Breve, Tilde };

struct OperatorKind {
    Family family;
    Stage stage;
    friend constexpr bool operator==(OperatorKind, OperatorKind) = default;
};

/// "pi_tilde", "grad_hat", "laplace", "box_breve", ...
std::string operator_name(OperatorKind kind);
/// Inverse of operator_name; throws InvalidArgument.
OperatorKind parse_operator(const std::string& name);
const char* family_name(Family f);

struct OperatorResult {
    OperatorKind kind;
    std::variant<double, Vec2> value;
    double denominator = 0.0;
    /// Estimated absolute numerical error of `value` (quadrature and rounding).
    double uncertainty = 0.0;

    bool is_vector() const { return std::holds_alternative<Vec2>(value); }
    double scalar() const;
    Vec2 vector() const;
};

/// |a - b| for scalars, Euclidean norm of a - b for vectors.
double difference_norm(const OperatorResult& a, const OperatorResult& b);

/// The quantity each family approximates at a_k: f, ∇f, Δf, Δf.
OperatorResult exact_value(Family family, const NeighborContext& ctx, const TestFunction& f);

/// Quadrature controls. The polar rules start at the base sizes and are
/// doubled until two successive levels agree to `rel_tol` relative to the
/// integral of the absolute integrand.
struct QuadratureOptions {
    int radial_points = 64;
    int angular_pieces = 8;   ///< continuous sweep: pieces of 16 Gauss nodes each (128 angles)
    int cell_radial_points = 8;
    int cell_angular_points = 12;
    int max_doublings = 4;
    double rel_tol = 1e-8;
};

OperatorResult apply_operator(OperatorKind kind, const NeighborContext& ctx, const TestFunction& f,
                              const QuadratureOptions& opts = {});

/// All four stages of one family, index = Stage.
using FamilyChain = std::array<OperatorResult, 4>;
FamilyChain evaluate_family(Family family, const NeighborContext& ctx, const TestFunction& f,
                            const QuadratureOptions& opts = {});

/// Every family at once; shares the polar sweeps.
std::array<FamilyChain, 4> evaluate_all(const NeighborContext& ctx, const TestFunction& f,
                                        const QuadratureOptions& opts = {});

OperatorResult pi_tilde(const NeighborContext& ctx, const TestFunction& f);
OperatorResult grad_tilde(const NeighborContext& ctx, const TestFunction& f);
OperatorResult laplace_tilde(const NeighborContext& ctx, const TestFunction& f);
OperatorResult box_tilde(const NeighborContext& ctx, const TestFunction& f);

/// The a-priori size bound of each family's operators: |f|_{C⁰}, 4δ⁻¹|f|_{C⁰}, 8δ⁻²|f|_{C⁰}, 8δ⁻²|f|_{C⁰}.
double a_priori_bound(Family family, double delta, double c0_seminorm);

} // namespace mpsops

#pragma once

#include "mpsops/geometry.hpp"
#include "mpsops/voronoi.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace mpsops {

enum class WeightKind { Indicator, PiecewiseLinear, ClosedForm };

/// Radial weight w(z) = ŵ(|z|) supported on the closed annulus δ <= |z| <= h.
///
/// The profile is nonnegative there, Lipschitz with constant `lipschitz()`,
/// and identically zero outside. Copies share the underlying profile.
class WeightFunction {
public:
    /// ŵ ≡ 1 on the closed annulus, L_w = 0.
    static WeightFunction indicator(double delta, double h);

    /// ŵ(r) = (h - r) / (h - δ), L_w = 1 / (h - δ).
    static WeightFunction linear_taper(double delta, double h);

    /// Piecewise-linear interpolation of (r, w) samples. The table must cover
    /// [δ, h]. Without an analytic L_w the largest segment slope on [δ, h] is
    /// used, inflated by 5%.
    static WeightFunction radial_table(std::vector<double> r, std::vector<double> w, double delta, double h,
                                       std::optional<double> lipschitz = std::nullopt);

    /// Arbitrary profile. Without an analytic L_w the constant is estimated as
    /// the largest finite-difference slope on a 10^4-point grid, inflated by 5%.
    static WeightFunction closed_form(std::function<double(double)> profile, double delta, double h,
                                      std::optional<double> lipschitz = std::nullopt,
                                      std::string name = "closed_form");

    WeightKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    double delta() const { return delta_; }
    double h() const { return h_; }
    double lipschitz() const { return lipschitz_; }

    /// ŵ(r) on [δ, h], zero elsewhere.
    double profile(double r) const;
    double operator()(Vec2 z) const { return profile(norm(z)); }

    /// Radii in (δ, h) where the profile's derivative may jump.
    std::span<const double> breakpoints() const { return breaks_; }

    /// ∫ r^(n+1) ŵ(r) dr over [a, b] ∩ [δ, h]; closed form except for ClosedForm profiles.
    double radial_integral(int n, double a, double b) const;

private:
    WeightFunction() = default;

    WeightKind kind_ = WeightKind::Indicator;
    std::string name_;
    double delta_ = 0.0;
    double h_ = 0.0;
    double lipschitz_ = 0.0;
    std::vector<double> table_r_;
    std::vector<double> table_w_;
    std::vector<double> breaks_;
    std::shared_ptr<const std::function<double(double)>> closed_;
};

/// ‖|x - ·|^n w(x - ·)‖ over the full annulus = 2π ∫_δ^h r^(n+1) ŵ(r) dr.
double radial_moment(const WeightFunction& w, int n);

/// Excluded ball B_q about the evaluation center.
struct BallExclusion {
    double radius = 0.0;
};

/// Excluded cell; `cell` must outlive the call.
struct CellExclusion {
    const ConvexPolygon* cell = nullptr;
};

using Exclusion = std::variant<BallExclusion, CellExclusion>;

struct NormResult {
    double value = 0.0;
    /// Set when the requested outer radius exceeded h (the weight vanishes there).
    bool clamped = false;
};

/// ‖|c - ·|^n w(c - ·)‖_{L¹(B_p(c) \ E)} with E a ball about c or a polygon.
NormResult annular_l1_norm(const WeightFunction& w, int n, Point2 center, double p, const Exclusion& excluded);

/// ‖|c - ·|^n w(c - ·)‖_{L¹((cell ∩ B_p(c)) \ B_δ(c))} by polar quadrature about c.
/// The polygon quadrature is refined until two levels agree to 1e-10 relative.
double cell_l1_norm(const WeightFunction& w, int n, const ConvexPolygon& cell, Point2 center,
                    double p = std::numeric_limits<double>::infinity());

/// Lower bounds of the two positivity sums over the checked sample points.
struct PositivityConstant {
    double c0 = 0.0;
    double min_integral_sum = 0.0;
    double min_discrete_sum = 0.0;
    Point2 witness;             ///< sample attaining the minimum
    std::size_t samples = 0;
};

/// 64 quasi-random points (Halton 2,3) in B_δ(center); the first is the center itself.
std::vector<Point2> positivity_samples(Point2 center, double delta, std::size_t count = 64);

/// For every sample x evaluates Σ_{i∈R(x,h)} ∫_{σ_i} w(x-y) dy and Σ_{j∈R(x,h)} V_j(x) w(x-a_j).
/// Throws AssumptionViolation naming the witness when the minimum is not positive.
PositivityConstant check_positivity(const WeightFunction& w, const VoronoiDecomposition& decomp, std::size_t k,
                                    std::span<const Point2> samples);

} // namespace mpsops

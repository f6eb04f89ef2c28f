#pragma once

#include "mpsops/voronoi.hpp"
#include "mpsops/weights.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace mpsops {

/// One member i of R(a_k, h) with everything the operators need about it.
struct NeighborTerm {
    std::size_t index = 0;
    Point2 site;
    double distance = 0.0;     ///< |a_k - a_i|
    double volume = 0.0;       ///< V_i(a_k)
    double weight = 0.0;       ///< w(a_k - a_i)
    double cell_weight = 0.0;  ///< ∫_{σ_i} w(a_k - y) dy
    double cell_moment2 = 0.0; ///< ∫_{σ_i} |a_k - y|² w(a_k - y) dy
};

struct ContextOptions {
    std::optional<double> lambda;
    std::size_t positivity_samples = 64;
};

/// Focal particle k with its weight, neighbor set R(a_k, h) and the
/// positivity constant of the two normalizing sums. Immutable once built.
class NeighborContext {
public:
    /// Throws AssumptionViolation when the positivity sums vanish somewhere in
    /// B_δ(a_k) or when λ is given and R(a_k, λh) is empty.
    static NeighborContext make(std::shared_ptr<const VoronoiDecomposition> decomp, std::size_t k, WeightFunction w,
                                ContextOptions options = {});

    const VoronoiDecomposition& decomposition() const { return *decomp_; }
    std::shared_ptr<const VoronoiDecomposition> decomposition_ptr() const { return decomp_; }
    std::size_t k() const { return k_; }
    Point2 focal() const { return decomp_->site(k_); }
    const ConvexPolygon& focal_cell() const { return decomp_->cell(k_); }
    const WeightFunction& weight() const { return weight_; }
    double h() const { return weight_.h(); }
    double delta() const { return weight_.delta(); }
    double r_sigma() const { return decomp_->r_sigma(); }

    const std::optional<double>& lambda() const { return lambda_; }
    /// λ, or InvalidArgument naming the caller when it was not supplied.
    double require_lambda(const char* what) const;

    /// R(a_k, h) in ascending index order.
    const std::vector<NeighborTerm>& neighbors() const { return neighbors_; }
    /// Members of R(a_k, radius) for radius <= h.
    std::vector<const NeighborTerm*> neighbors_within(double radius) const;

    const PositivityConstant& positivity() const { return positivity_; }
    /// Smallest admissible value of a weight-sum denominator: 1e-3 C0.
    double floor() const { return 1e-3 * positivity_.c0; }
    /// Same for |·|²-weighted denominators, which are at least δ² times the plain sums.
    double moment_floor() const { return floor() * delta() * delta(); }

    double discrete_weight_sum() const { return sum_vw_; }    ///< Σ V_j w(a_k - a_j)
    double discrete_moment_sum() const { return sum_vd2w_; }  ///< Σ V_j |a_k - a_j|² w(a_k - a_j)
    double cell_weight_sum() const { return sum_cw_; }        ///< Σ ∫_{σ_j} w
    double cell_moment_sum() const { return sum_cm2_; }       ///< Σ ∫_{σ_j} |a_k - z|² w

private:
    NeighborContext() = default;

    std::shared_ptr<const VoronoiDecomposition> decomp_;
    std::size_t k_ = 0;
    WeightFunction weight_ = WeightFunction::indicator(0.5, 1.0);
    std::optional<double> lambda_;
    std::vector<NeighborTerm> neighbors_;
    PositivityConstant positivity_;
    double sum_vw_ = 0.0;
    double sum_vd2w_ = 0.0;
    double sum_cw_ = 0.0;
    double sum_cm2_ = 0.0;
};

} // namespace mpsops

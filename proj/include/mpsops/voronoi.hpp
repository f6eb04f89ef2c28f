#pragma once

#include "mpsops/geometry.hpp"

#include <cstddef>
#include <vector>

namespace mpsops {

/// Physical domain Ω (axis-aligned rectangle) and padding width H.
///
/// The padded domain is realized as the H-outset rectangle, a superset of the
/// rounded-corner Minkowski padding that keeps every Voronoi cell polygonal.
struct DomainSpec {
    Rect omega;
    double padding = 0.0;

    /// Throws InvalidArgument for a degenerate rectangle or H <= 0.
    static DomainSpec make(Rect omega, double padding);
    Rect padded() const { return omega.outset(padding); }
};

/// Sites closer than this are rejected as duplicates.
inline constexpr double kDuplicateSiteDistance = 1e-9;

/// Voronoi cells of a site set clipped to the closed padded domain.
class VoronoiDecomposition {
public:
    const std::vector<Point2>& sites() const { return sites_; }
    const std::vector<ConvexPolygon>& cells() const { return cells_; }
    const ConvexPolygon& cell(std::size_t i) const { return cells_.at(i); }
    Point2 site(std::size_t i) const { return sites_.at(i); }
    std::size_t size() const { return sites_.size(); }
    const DomainSpec& domain() const { return domain_; }

    /// max_i max_{y in closure(σ_i)} |y - a_i|
    double r_sigma() const { return r_sigma_; }

    /// Indices i with |x - a_i| < radius, ascending.
    std::vector<std::size_t> sites_within(Point2 x, double radius) const;

    /// Index of the site nearest to x (smallest index on ties).
    std::size_t nearest_site(Point2 x) const;

private:
    friend VoronoiDecomposition build_voronoi(std::vector<Point2> sites, const DomainSpec& domain);
    std::vector<Point2> sites_;
    std::vector<ConvexPolygon> cells_;
    DomainSpec domain_;
    double r_sigma_ = 0.0;
};

/// Per-cell half-plane clipping of the padded rectangle.
///
/// Throws InvalidArgument for fewer than two sites, a site outside the padded
/// domain, or two sites closer than kDuplicateSiteDistance (message names both indices).
VoronoiDecomposition build_voronoi(std::vector<Point2> sites, const DomainSpec& domain);

/// Closed and punctured neighbor sets about x: R̄(x,h) and R(x,h) = R̄ \ {k}.
struct NeighborSets {
    std::vector<std::size_t> closed;
    std::vector<std::size_t> open;
};

NeighborSets neighbor_sets(const VoronoiDecomposition& decomp, std::size_t k, Point2 x, double h);

} // namespace mpsops

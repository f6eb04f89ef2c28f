#pragma once

#include "mpsops/geometry.hpp"

#include <functional>
#include <span>
#include <vector>

namespace mpsops {

/// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached rule with `points` nodes (1 <= points <= 128).
const GaussLegendreRule& gauss_legendre(int points);

/// Composite Gauss–Legendre over [a, b] split at the given interior breakpoints.
/// `visit(x, weight)` is called once per node.
template <class Visit>
void composite_gauss(double a, double b, std::span<const double> breaks, int points, Visit&& visit) {
    const auto& rule = gauss_legendre(points);
    double lo = a;
    const auto piece = [&](double p, double q) {
        const double half = 0.5 * (q - p);
        const double mid = 0.5 * (q + p);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) visit(mid + half * rule.nodes[i], half * rule.weights[i]);
    };
    for (double br : breaks) {
        if (br <= lo || br >= b) continue;
        piece(lo, br);
        lo = br;
    }
    if (b > lo) piece(lo, b);
}

/// Adaptive Gauss–Kronrod (7/15) on [a, b] to absolute tolerance `abs_tol`.
/// Throws QuadratureError if the error estimate stays above the tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol);

/// Angular resolution of a polar sweep: `points` Gauss nodes on each of
/// `subdivisions` equal parts of every smooth angular piece.
struct AngularRule {
    int points = 12;
    int subdivisions = 1;
};

/// One quadrature ray of a polar sweep about a center c: the ray at absolute
/// angle `theta` carries angular weight `weight`, and the region meets the ray
/// in the radial interval (r_lo, r_hi).
struct Ray {
    double theta;
    double weight;
    double r_lo;
    double r_hi;
};

using RayVisitor = std::function<void(const Ray&)>;

/// Polar sweep of { y in cell : r_min < |y - c| < r_max } about c.
///
/// The angular range is split at vertex directions and at the angles where
/// the cell boundary crosses any of the circles r_min, r_max, `radial_breaks`,
/// so every radial endpoint is a smooth function of the angle on each piece.
/// Each ray's radial interval is exact (convex clip of the ray).
void sweep_polygon(const ConvexPolygon& cell, Point2 center, double r_min, double r_max,
                   std::span<const double> radial_breaks, const AngularRule& rule, const RayVisitor& visit);

/// Polar sweep of the full annulus r_min < |y - c| < r_max.
void sweep_annulus(double r_min, double r_max, const AngularRule& rule, const RayVisitor& visit);

} // namespace mpsops

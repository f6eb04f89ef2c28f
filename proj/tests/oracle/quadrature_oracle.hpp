#pragma once

// Brute-force integration used only by the tests. Nothing here calls into the
// library's geometry or quadrature code, so agreement is an independent check.

#include "mpsops/geometry.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using mpsops::Point2;
using mpsops::Rect;

struct OracleEstimate {
    double value = 0.0;
    /// Monte Carlo: standard error of the mean. Grid: discretization bound.
    double standard_error = 0.0;
    std::size_t samples = 0;
    int resolution = 0;
    std::uint64_t seed = 0;
};

using Integrand = std::function<double(Point2)>;

/// Plain Monte Carlo over the box with a counter-based stream; throws
/// std::invalid_argument for zero samples. Reproducible from the seed.
OracleEstimate mc_region_integral(const Integrand& f, const Rect& box, std::size_t samples, std::uint64_t seed);

/// Midpoint rule on a resolution x resolution grid over the box. The error
/// estimate is |I(n) - I(n/2)|. It is reliable for smooth integrands and for jumps
/// across curves; a jump along a grid-aligned straight edge converges erratically
/// and can exceed it. Throws for resolution < 64.
OracleEstimate grid_integral(const Integrand& f, const Rect& box, int resolution);

/// Closed convex polygon membership by edge cross products (any orientation).
bool inside_convex(const std::vector<Point2>& poly, Point2 p);

/// Random convex polygon: the convex hull of `count` points in the box.
std::vector<Point2> random_convex_polygon(const Rect& box, int count, std::uint64_t seed);

/// Uniform double in [0, 1) from (seed, n).
double uniform(std::uint64_t seed, std::uint64_t n);

} // namespace oracle

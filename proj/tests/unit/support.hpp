#pragma once

#include "mpsops/assumptions.hpp"
#include "mpsops/config_io.hpp"
#include "mpsops/context.hpp"
#include "mpsops/voronoi.hpp"

#include <memory>
#include <vector>

namespace testing_support {

using namespace mpsops;

inline const Rect kUnit{{0.0, 0.0}, {1.0, 1.0}};

/// Regular or jittered lattice over the padded unit square.
std::shared_ptr<const VoronoiDecomposition> lattice(double spacing, double padding, double jitter = 0.0,
                                                    std::uint64_t seed = 1);

/// Ring configuration about the centroid of the unit square.
std::shared_ptr<const VoronoiDecomposition> rings(double spacing, double padding, std::uint64_t seed = 1);

/// Site index nearest to the centroid of Ω.
std::size_t central_site(const VoronoiDecomposition& d);

/// Context at the central site with h = c_star r_σ and δ from admissible_delta(r_σ/2).
NeighborContext central_context(const std::shared_ptr<const VoronoiDecomposition>& d, double c_star, bool taper,
                                std::optional<double> lambda = 0.5);

/// Ring context with h in the gap after `ring` rings; every standing assumption holds there.
NeighborContext ring_context(const std::shared_ptr<const VoronoiDecomposition>& d, double spacing, int ring,
                             bool taper, std::optional<double> lambda = 0.5);

/// Uniform random points in a box from a fixed seed.
std::vector<Point2> random_points(const Rect& box, std::size_t n, std::uint64_t seed);

/// Index of the site nearest to y by exhaustive scan.
std::size_t brute_nearest(const std::vector<Point2>& sites, Point2 y);

} // namespace testing_support

#include "support.hpp"

#include "quadrature_oracle.hpp"
#include "mpsops/study.hpp"

#include <cmath>
#include <limits>

namespace testing_support {

std::shared_ptr<const VoronoiDecomposition> lattice(double spacing, double padding, double jitter, std::uint64_t seed) {
    const auto domain = DomainSpec::make(kUnit, padding);
    GeneratorSpec g;
    g.kind = jitter > 0.0 ? GeneratorKind::Jittered : GeneratorKind::Lattice;
    g.spacing = spacing;
    g.jitter = jitter;
    g.seed = seed;
    return std::make_shared<const VoronoiDecomposition>(build_voronoi(generate_sites(domain, g), domain));
}

std::shared_ptr<const VoronoiDecomposition> rings(double spacing, double padding, std::uint64_t seed) {
    const auto domain = DomainSpec::make(kUnit, padding);
    GeneratorSpec g;
    g.kind = GeneratorKind::Rings;
    g.spacing = spacing;
    g.seed = seed;
    return std::make_shared<const VoronoiDecomposition>(build_voronoi(generate_sites(domain, g), domain));
}

std::size_t central_site(const VoronoiDecomposition& d) { return d.nearest_site(d.domain().omega.centroid()); }

NeighborContext central_context(const std::shared_ptr<const VoronoiDecomposition>& d, double c_star, bool taper,
                                std::optional<double> lambda) {
    const std::size_t k = central_site(*d);
    const double h = c_star * d->r_sigma();
    const double delta = admissible_delta(*d, k, 0.5 * d->r_sigma());
    auto w = taper ? WeightFunction::linear_taper(delta, h) : WeightFunction::indicator(delta, h);
    ContextOptions opts;
    opts.lambda = lambda;
    return NeighborContext::make(d, k, w, opts);
}

NeighborContext ring_context(const std::shared_ptr<const VoronoiDecomposition>& d, double spacing, int ring, bool taper,
                             std::optional<double> lambda) {
    const std::size_t k = central_site(*d);
    const double h = ring_gap_radius(*d, k, ring, spacing);
    const double delta = admissible_delta(*d, k, 0.5 * d->r_sigma());
    auto w = taper ? WeightFunction::linear_taper(delta, h) : WeightFunction::indicator(delta, h);
    ContextOptions opts;
    opts.lambda = lambda;
    return NeighborContext::make(d, k, w, opts);
}

std::vector<Point2> random_points(const Rect& box, std::size_t n, std::uint64_t seed) {
    std::vector<Point2> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back({box.min.x1 + oracle::uniform(seed, 2 * i) * box.width(),
                       box.min.x2 + oracle::uniform(seed, 2 * i + 1) * box.height()});
    }
    return out;
}

std::size_t brute_nearest(const std::vector<Point2>& sites, Point2 y) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const double d = std::hypot(sites[i].x1 - y.x1, sites[i].x2 - y.x2);
        if (d < bd) {
            bd = d;
            best = i;
        }
    }
    return best;
}

} // namespace testing_support

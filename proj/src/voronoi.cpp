#include "mpsops/voronoi.hpp"

#include "mpsops/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mpsops {

namespace {

// Uniform bucket grid over the padded rectangle, used to visit sites in
// Chebyshev rings of growing radius around a given site.
class SiteGrid {
public:
    SiteGrid(const std::vector<Point2>& sites, const Rect& box) : box_(box) {
        const double n = static_cast<double>(sites.size());
        cell_ = std::sqrt(box.area() / n);
        nx_ = std::max(1, static_cast<int>(std::ceil(box.width() / cell_)));
        ny_ = std::max(1, static_cast<int>(std::ceil(box.height() / cell_)));
        std::vector<int> counts(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
        cell_of_.resize(sites.size());
        for (std::size_t i = 0; i < sites.size(); ++i) {
            cell_of_[i] = locate(sites[i]);
            ++counts[bucket(cell_of_[i].first, cell_of_[i].second) + 1];
        }
        for (std::size_t b = 1; b < counts.size(); ++b) counts[b] += counts[b - 1];
        start_ = counts;
        members_.resize(sites.size());
        for (std::size_t i = 0; i < sites.size(); ++i) {
            members_[counts[bucket(cell_of_[i].first, cell_of_[i].second)]++] = i;
        }
    }

    double cell_size() const { return cell_; }
    int max_ring() const { return std::max(nx_, ny_); }
    std::pair<int, int> cell_of(std::size_t i) const { return cell_of_[i]; }

    template <class Visit>
    void visit_ring(std::pair<int, int> c, int ring, Visit&& visit) const {
        const auto visit_cell = [&](int ix, int iy) {
            if (ix < 0 || iy < 0 || ix >= nx_ || iy >= ny_) return;
            const std::size_t b = bucket(ix, iy);
            for (int m = start_[b]; m < start_[b + 1]; ++m) visit(members_[m]);
        };
        if (ring == 0) {
            visit_cell(c.first, c.second);
            return;
        }
        for (int d = -ring; d <= ring; ++d) {
            visit_cell(c.first + d, c.second - ring);
            visit_cell(c.first + d, c.second + ring);
        }
        for (int d = -ring + 1; d <= ring - 1; ++d) {
            visit_cell(c.first - ring, c.second + d);
            visit_cell(c.first + ring, c.second + d);
        }
    }

private:
    std::pair<int, int> locate(Point2 p) const {
        const int ix = std::clamp(static_cast<int>((p.x1 - box_.min.x1) / cell_), 0, nx_ - 1);
        const int iy = std::clamp(static_cast<int>((p.x2 - box_.min.x2) / cell_), 0, ny_ - 1);
        return {ix, iy};
    }
    std::size_t bucket(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(ix);
    }

    Rect box_;
    double cell_ = 1.0;
    int nx_ = 1;
    int ny_ = 1;
    std::vector<int> start_;
    std::vector<std::size_t> members_;
    std::vector<std::pair<int, int>> cell_of_;
};

[[noreturn]] void throw_duplicate(std::size_t i, std::size_t j) {
    std::ostringstream os;
    os << "duplicate sites " << std::min(i, j) << " and " << std::max(i, j);
    throw InvalidArgument(os.str());
}

} // namespace

DomainSpec DomainSpec::make(Rect omega, double padding) {
    if (!is_finite(omega.min) || !is_finite(omega.max) || !(omega.width() > 0.0) ||
        !(omega.height() > 0.0)) {
        throw InvalidArgument("domain rectangle must have positive width and height");
    }
    if (!(padding > 0.0) || !std::isfinite(padding)) {
        throw InvalidArgument("padding H must be positive");
    }
    return {omega, padding};
}

std::vector<std::size_t> VoronoiDecomposition::sites_within(Point2 x, double radius) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < sites_.size(); ++i) {
        if (distance(x, sites_[i]) < radius) out.push_back(i);
    }
    return out;
}

std::size_t VoronoiDecomposition::nearest_site(Point2 x) const {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sites_.size(); ++i) {
        const double d = distance(x, sites_[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

VoronoiDecomposition build_voronoi(std::vector<Point2> sites, const DomainSpec& domain) {
    if (sites.size() < 2) throw InvalidArgument("at least two sites are required");
    const Rect box = domain.padded();
    for (std::size_t i = 0; i < sites.size(); ++i) {
        if (!is_finite(sites[i]) || !box.contains(sites[i])) {
            std::ostringstream os;
            os << "site " << i << " (" << sites[i].x1 << ", " << sites[i].x2
               << ") lies outside the padded domain";
            throw InvalidArgument(os.str());
        }
    }

    const double scale = std::max({1.0, std::abs(box.min.x1), std::abs(box.min.x2),
                                   std::abs(box.max.x1), std::abs(box.max.x2)});
    const double clip_tol = 1e-12 * scale;
    const ConvexPolygon base = ConvexPolygon::from_rect(box);
    const SiteGrid grid(sites, box);

    VoronoiDecomposition out;
    out.cells_.reserve(sites.size());
    double r_sigma = 0.0;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const Point2 a = sites[i];
        ConvexPolygon cell = base;
        double reach = cell.max_distance_from(a);
        const auto clip = [&](std::size_t j) {
            if (j == i) return;
            const Vec2 d = sites[j] - a;
            const double dist = norm(d);
            if (dist < kDuplicateSiteDistance) throw_duplicate(i, j);
            if (dist >= 2.0 * reach) return;
            cell = cell.clip_halfplane(a + 0.5 * d, d, clip_tol);
            reach = cell.max_distance_from(a);
        };
        const auto c = grid.cell_of(i);
        for (int ring = 0; ring <= grid.max_ring(); ++ring) {
            // Sites in rings beyond `ring` are at least ring * cell_size away.
            if (ring >= 1 && (ring - 1) * grid.cell_size() >= 2.0 * reach) break;
            grid.visit_ring(c, ring, clip);
        }
        if (cell.empty()) {
            std::ostringstream os;
            os << "Voronoi cell of site " << i << " degenerated during clipping";
            throw InvalidArgument(os.str());
        }
        r_sigma = std::max(r_sigma, reach);
        out.cells_.push_back(std::move(cell));
    }
    out.sites_ = std::move(sites);
    out.domain_ = domain;
    out.r_sigma_ = r_sigma;
    return out;
}

NeighborSets neighbor_sets(const VoronoiDecomposition& decomp, std::size_t k, Point2 x, double h) {
    NeighborSets out;
    out.closed = decomp.sites_within(x, h);
    out.open.reserve(out.closed.size());
    for (auto i : out.closed) {
        if (i != k) out.open.push_back(i);
    }
    return out;
}

} // namespace mpsops

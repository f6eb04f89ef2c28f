#include "mpsops/geometry.hpp"

#include "mpsops/errors.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace mpsops {

namespace {

// Relative tolerance used when deduplicating vertices produced by clipping.
constexpr double kVertexMergeRel = 1e-12;

double loop_scale(std::span<const Point2> loop) {
    double s = 0.0;
    for (const auto& p : loop) s = std::max({s, std::abs(p.x1), std::abs(p.x2)});
    return std::max(s, 1.0);
}

std::vector<Point2> merge_close_vertices(std::vector<Point2> v, double tol) {
    std::vector<Point2> out;
    out.reserve(v.size());
    for (const auto& p : v) {
        if (out.empty() || distance(out.back(), p) > tol) out.push_back(p);
    }
    while (out.size() > 1 && distance(out.front(), out.back()) <= tol) out.pop_back();
    return out;
}

Point2 closest_on_segment(Point2 p, Point2 a, Point2 b) {
    const Vec2 d = b - a;
    const double len2 = norm2(d);
    if (len2 == 0.0) return a;
    const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    return a + t * d;
}

// Signed area of triangle(0, a, b) ∩ disk(0, r).
double edge_disk_area(Vec2 a, Vec2 b, double r) {
    const Vec2 d = b - a;
    const double qa = norm2(d);
    const double r2 = r * r;
    double ts[4] = {0.0, 0.0, 0.0, 1.0};
    int n = 1;
    if (qa > 0.0) {
        const double qb = dot(a, d);
        const double qc = norm2(a) - r2;
        const double disc = qb * qb - qa * qc;
        if (disc > 0.0) {
            const double s = std::sqrt(disc);
            const double t1 = (-qb - s) / qa;
            const double t2 = (-qb + s) / qa;
            if (t1 > 0.0 && t1 < 1.0) ts[n++] = t1;
            if (t2 > 0.0 && t2 < 1.0) ts[n++] = t2;
        }
    }
    ts[n++] = 1.0;
    double area = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        const Point2 p = a + ts[i] * d;
        const Point2 q = a + ts[i + 1] * d;
        const Point2 mid = a + (0.5 * (ts[i] + ts[i + 1])) * d;
        if (norm2(mid) <= r2) {
            area += 0.5 * cross(p, q);
        } else {
            area += 0.5 * r2 * std::atan2(cross(p, q), dot(p, q));
        }
    }
    return area;
}

} // namespace

Annulus Annulus::make(Point2 center, double inner, double outer) {
    if (!is_finite(center) || !(inner >= 0.0) || !(outer > inner) || !std::isfinite(outer)) {
        std::ostringstream os;
        os << "annulus requires 0 <= inner < outer, got inner=" << inner << " outer=" << outer;
        throw InvalidArgument(os.str());
    }
    return {center, inner, outer};
}

double Rect::inner_distance(Point2 p) const {
    return std::min({p.x1 - min.x1, max.x1 - p.x1, p.x2 - min.x2, max.x2 - p.x2});
}

double shoelace_area(std::span<const Point2> loop) {
    double a = 0.0;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) a += cross(loop[i], loop[(i + 1) % n]);
    return 0.5 * a;
}

ConvexPolygon ConvexPolygon::from_vertices(std::vector<Point2> vertices) {
    for (const auto& p : vertices) {
        if (!is_finite(p)) throw InvalidArgument("polygon vertex is not finite");
    }
    const double tol = kVertexMergeRel * loop_scale(vertices);
    const std::size_t given = vertices.size();
    vertices = merge_close_vertices(std::move(vertices), tol);
    if (vertices.size() != given) throw InvalidArgument("polygon has repeated vertices");
    if (vertices.size() < 3) throw InvalidArgument("polygon needs at least three vertices");
    if (!(shoelace_area(vertices) > 0.0)) {
        throw InvalidArgument("polygon must be counterclockwise with positive area");
    }
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e0 = vertices[(i + 1) % n] - vertices[i];
        const Vec2 e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
        if (cross(e0, e1) < -tol * (norm(e0) + norm(e1))) {
            throw InvalidArgument("polygon is not convex");
        }
    }
    return ConvexPolygon(std::move(vertices));
}

ConvexPolygon ConvexPolygon::from_rect(const Rect& r) {
    return from_vertices({r.min, {r.max.x1, r.min.x2}, r.max, {r.min.x1, r.max.x2}});
}

double ConvexPolygon::area() const { return empty() ? 0.0 : shoelace_area(vertices_); }

Point2 ConvexPolygon::centroid() const {
    Point2 c;
    double a = 0.0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 p = vertices_[i];
        const Point2 q = vertices_[(i + 1) % n];
        const double w = cross(p, q);
        a += w;
        c += w * (p + q);
    }
    return c / (3.0 * a);
}

bool ConvexPolygon::contains(Point2 p, double tol) const {
    const std::size_t n = vertices_.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = vertices_[i];
        const Vec2 e = vertices_[(i + 1) % n] - a;
        if (cross(e, p - a) < -tol * norm(e)) return false;
    }
    return true;
}

double ConvexPolygon::max_distance_from(Point2 p) const {
    double m = 0.0;
    for (const auto& v : vertices_) m = std::max(m, distance(v, p));
    return m;
}

double ConvexPolygon::min_edge_distance(Point2 p) const {
    double m = std::numeric_limits<double>::infinity();
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = vertices_[i];
        const Vec2 e = vertices_[(i + 1) % n] - a;
        m = std::min(m, std::abs(cross(e, p - a)) / norm(e));
    }
    return m;
}

Point2 ConvexPolygon::closest_point(Point2 p) const {
    if (contains(p)) return p;
    Point2 best = vertices_.front();
    double best_d = std::numeric_limits<double>::infinity();
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 c = closest_on_segment(p, vertices_[i], vertices_[(i + 1) % n]);
        const double d = distance(c, p);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

ConvexPolygon ConvexPolygon::clip_halfplane(Point2 origin, Vec2 normal, double tol) const {
    const double nn = norm(normal);
    const Vec2 u = normal / nn;
    const std::size_t n = vertices_.size();
    std::vector<double> s(n);
    bool any_out = false;
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = dot(vertices_[i] - origin, u);
        if (s[i] > tol) any_out = true;
    }
    if (!any_out) return *this;

    std::vector<Point2> out;
    out.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        const bool in_i = s[i] <= tol;
        const bool in_j = s[j] <= tol;
        if (in_i) out.push_back(vertices_[i]);
        if (in_i != in_j) {
            // Strict crossing of the line; s[i] and s[j] have opposite signs beyond tol on one side.
            const double t = s[i] / (s[i] - s[j]);
            if (t > 0.0 && t < 1.0) out.push_back(vertices_[i] + t * (vertices_[j] - vertices_[i]));
        }
    }
    out = merge_close_vertices(std::move(out), kVertexMergeRel * loop_scale(out));
    if (out.size() < 3 || !(shoelace_area(out) > 0.0)) return ConvexPolygon();
    return ConvexPolygon(std::move(out));
}

double polygon_disk_area(const ConvexPolygon& cell, Point2 center, double radius) {
    if (!(radius >= 0.0)) throw InvalidArgument("disk radius must be nonnegative");
    if (radius == 0.0 || cell.empty()) return 0.0;
    const auto v = cell.vertices();
    const std::size_t n = v.size();
    double a = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        a += edge_disk_area(v[i] - center, v[(i + 1) % n] - center, radius);
    }
    return std::max(a, 0.0);
}

double cell_annulus_area(const ConvexPolygon& cell, const Annulus& annulus) {
    const double outer = polygon_disk_area(cell, annulus.center, annulus.outer);
    const double inner = polygon_disk_area(cell, annulus.center, annulus.inner);
    return std::max(outer - inner, 0.0);
}

} // namespace mpsops

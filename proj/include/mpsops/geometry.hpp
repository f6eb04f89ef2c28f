#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace mpsops {

struct Point2 {
    double x1 = 0.0;
    double x2 = 0.0;

    friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
    friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
    friend constexpr Point2 operator-(Point2 a) { return {-a.x1, -a.x2}; }
    friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x1, s * a.x2}; }
    friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x1, s * a.x2}; }
    friend constexpr Point2 operator/(Point2 a, double s) { return {a.x1 / s, a.x2 / s}; }
    Point2& operator+=(Point2 b) {
        x1 += b.x1;
        x2 += b.x2;
        return *this;
    }
    Point2& operator-=(Point2 b) {
        x1 -= b.x1;
        x2 -= b.x2;
        return *this;
    }
    friend constexpr bool operator==(Point2, Point2) = default;
};

/// Vectors share the point representation (gradients, displacements).
using Vec2 = Point2;

constexpr double dot(Vec2 a, Vec2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x1 * b.x2 - a.x2 * b.x1; }
inline double norm(Vec2 a) { return std::hypot(a.x1, a.x2); }
constexpr double norm2(Vec2 a) { return dot(a, a); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x1) && std::isfinite(p.x2); }

/// Open annulus { y : inner < |y - center| < outer }; inner == 0 gives a punctured disk.
struct Annulus {
    Point2 center;
    double inner = 0.0;
    double outer = 0.0;

    /// Throws InvalidArgument unless 0 <= inner < outer.
    static Annulus make(Point2 center, double inner, double outer);
};

/// Axis-aligned rectangle [min, max].
struct Rect {
    Point2 min;
    Point2 max;

    double width() const { return max.x1 - min.x1; }
    double height() const { return max.x2 - min.x2; }
    double area() const { return width() * height(); }
    Point2 centroid() const { return 0.5 * (min + max); }
    bool contains(Point2 p, double tol = 0.0) const {
        return p.x1 >= min.x1 - tol && p.x1 <= max.x1 + tol && p.x2 >= min.x2 - tol &&
               p.x2 <= max.x2 + tol;
    }
    /// Distance from an interior point to the rectangle boundary (negative outside).
    double inner_distance(Point2 p) const;
    Rect outset(double d) const { return {{min.x1 - d, min.x2 - d}, {max.x1 + d, max.x2 + d}}; }
};

/// Counterclockwise convex polygon with at least three vertices.
class ConvexPolygon {
public:
    ConvexPolygon() = default;

    /// Validates convexity, orientation and vertex distinctness; throws InvalidArgument.
    static ConvexPolygon from_vertices(std::vector<Point2> vertices);
    static ConvexPolygon from_rect(const Rect& r);

    std::span<const Point2> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    Point2 vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

    double area() const;
    Point2 centroid() const;
    /// Closed containment with absolute tolerance on the edge half-planes.
    bool contains(Point2 p, double tol = 0.0) const;
    /// max over vertices |v - p|, i.e. the farthest point of the closed polygon from p.
    double max_distance_from(Point2 p) const;
    /// Distance from p to the nearest edge line; the inradius about p for interior p.
    double min_edge_distance(Point2 p) const;
    /// Closest point of the closed polygon to p.
    Point2 closest_point(Point2 p) const;

    /// Keeps the part with dot(y - origin, normal) <= 0. May return an empty polygon.
    ConvexPolygon clip_halfplane(Point2 origin, Vec2 normal, double tol) const;
    bool empty() const { return vertices_.size() < 3; }

private:
    explicit ConvexPolygon(std::vector<Point2> v) : vertices_(std::move(v)) {}
    std::vector<Point2> vertices_;
};

/// Signed shoelace area of an arbitrary vertex loop.
double shoelace_area(std::span<const Point2> loop);

/// Area of polygon ∩ disk(center, radius), exact up to rounding.
double polygon_disk_area(const ConvexPolygon& cell, Point2 center, double radius);

/// Area of cell ∩ annulus computed as the difference of two polygon–disk areas.
double cell_annulus_area(const ConvexPolygon& cell, const Annulus& annulus);

} // namespace mpsops

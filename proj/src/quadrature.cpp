#include "mpsops/quadrature.hpp"

#include "mpsops/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>

namespace mpsops {

namespace {

GaussLegendreRule make_rule(int n) {
    // legendre_p_zeros returns the nonnegative roots in ascending order.
    const auto zeros = boost::math::legendre_p_zeros<double>(n);
    GaussLegendreRule rule;
    for (double x : zeros) {
        const double dp = boost::math::legendre_p_prime<double>(n, x);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        if (x == 0.0) {
            rule.nodes.push_back(0.0);
            rule.weights.push_back(w);
        } else {
            rule.nodes.push_back(x);
            rule.weights.push_back(w);
            rule.nodes.push_back(-x);
            rule.weights.push_back(w);
        }
    }
    return rule;
}

// Angular coordinate relative to a reference direction, in (-pi, pi].
double relative_angle(Vec2 ref, Vec2 v) { return std::atan2(cross(ref, v), dot(ref, v)); }

void push_circle_crossings(const ConvexPolygon& cell, Point2 c, double r, std::vector<Point2>& out) {
    if (!(r > 0.0)) return;
    const std::size_t n = cell.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = cell.vertex(i) - c;
        const Vec2 d = cell.vertex(i + 1) - cell.vertex(i);
        const double qa = norm2(d);
        const double qb = dot(a, d);
        const double qc = norm2(a) - r * r;
        const double disc = qb * qb - qa * qc;
        if (qa == 0.0 || disc <= 0.0) continue;
        const double s = std::sqrt(disc);
        for (double t : {(-qb - s) / qa, (-qb + s) / qa}) {
            if (t > 0.0 && t < 1.0) out.push_back(a + t * d);
        }
    }
}

// Exact intersection of the ray c + t e (t >= 0) with a convex polygon.
bool clip_ray(const ConvexPolygon& cell, Point2 c, Vec2 e, double& t_in, double& t_out) {
    t_in = 0.0;
    t_out = std::numeric_limits<double>::infinity();
    const std::size_t n = cell.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 v0 = cell.vertex(i);
        const Vec2 edge = cell.vertex(i + 1) - v0;
        const Vec2 outward{edge.x2, -edge.x1};
        const double num = dot(c - v0, outward);
        const double den = dot(e, outward);
        if (den == 0.0) {
            if (num > 0.0) return false;
            continue;
        }
        const double t = -num / den;
        if (den > 0.0) {
            t_out = std::min(t_out, t);
        } else {
            t_in = std::max(t_in, t);
        }
        if (t_in >= t_out) return false;
    }
    return t_out > t_in;
}

} // namespace

const GaussLegendreRule& gauss_legendre(int points) {
    static std::array<GaussLegendreRule, 129> cache;
    static std::array<std::once_flag, 129> flags;
    if (points < 1 || points > 128) throw InvalidArgument("Gauss-Legendre order must be in [1, 128]");
    std::call_once(flags[static_cast<std::size_t>(points)], [&] { cache[static_cast<std::size_t>(points)] = make_rule(points); });
    return cache[static_cast<std::size_t>(points)];
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    if (!(b > a)) return 0.0;
    double err = 0.0;
    double l1 = 0.0;
    // Boost terminates on error <= tol * L1; the absolute target is checked afterwards.
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 30, 1e-13, &err, &l1);
    if (!std::isfinite(value) || err > std::max(abs_tol, 1e-11 * l1)) {
        std::ostringstream os;
        os << "adaptive quadrature on [" << a << ", " << b << "] stalled with error estimate " << err;
        throw QuadratureError(os.str());
    }
    return value;
}

void sweep_polygon(const ConvexPolygon& cell, Point2 center, double r_min, double r_max,
                   std::span<const double> radial_breaks, const AngularRule& rule, const RayVisitor& visit) {
    if (cell.empty() || !(r_max > r_min)) return;
    // Quick reject: the polygon lies entirely inside the inner disk or beyond the outer circle.
    if (cell.max_distance_from(center) <= r_min) return;
    if (distance(cell.closest_point(center), center) >= r_max) return;

    const double scale = std::max(cell.max_distance_from(center), 1e-300);
    const bool inside = cell.contains(center, 1e-13 * scale);

    std::vector<Point2> marks;
    for (const auto& v : cell.vertices()) marks.push_back(v - center);
    push_circle_crossings(cell, center, r_min, marks);
    push_circle_crossings(cell, center, r_max, marks);
    for (double r : radial_breaks) {
        if (r > r_min && r < r_max) push_circle_crossings(cell, center, r, marks);
    }

    // Angles are measured from a reference direction; outside the polygon the
    // reference points at the centroid so the visible cone never wraps.
    const Vec2 ref = inside ? Vec2{1.0, 0.0} : cell.centroid() - center;
    const double ref_angle = std::atan2(ref.x2, ref.x1);
    std::vector<double> angles;
    angles.reserve(marks.size() + 1);
    for (const auto& m : marks) {
        if (norm2(m) > 0.0) angles.push_back(relative_angle(ref, m));
    }
    std::sort(angles.begin(), angles.end());
    const double merge = 1e-14;
    angles.erase(std::unique(angles.begin(), angles.end(), [&](double a, double b) { return b - a <= merge; }),
                 angles.end());
    if (inside) {
        if (angles.empty()) angles.push_back(0.0);
        angles.push_back(angles.front() + 2.0 * std::numbers::pi);
    }

    const auto& gl = gauss_legendre(rule.points);
    const int sub = std::max(1, rule.subdivisions);
    for (std::size_t p = 0; p + 1 < angles.size(); ++p) {
        const double width = (angles[p + 1] - angles[p]) / sub;
        if (!(width > 0.0)) continue;
        for (int s = 0; s < sub; ++s) {
            const double lo = angles[p] + s * width;
            const double half = 0.5 * width;
            const double mid = lo + half;
            for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
                const double theta = ref_angle + mid + half * gl.nodes[q];
                const Vec2 e{std::cos(theta), std::sin(theta)};
                double t_in = 0.0;
                double t_out = 0.0;
                if (!clip_ray(cell, center, e, t_in, t_out)) continue;
                const double r_lo = std::max(t_in, r_min);
                const double r_hi = std::min(t_out, r_max);
                if (r_hi > r_lo) visit(Ray{theta, half * gl.weights[q], r_lo, r_hi});
            }
        }
    }
}

void sweep_annulus(double r_min, double r_max, const AngularRule& rule, const RayVisitor& visit) {
    if (!(r_max > r_min)) return;
    const auto& gl = gauss_legendre(rule.points);
    const int pieces = 8 * std::max(1, rule.subdivisions);
    const double width = 2.0 * std::numbers::pi / pieces;
    for (int p = 0; p < pieces; ++p) {
        const double half = 0.5 * width;
        const double mid = p * width + half;
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            visit(Ray{mid + half * gl.nodes[q], half * gl.weights[q], r_min, r_max});
        }
    }
}

} // namespace mpsops

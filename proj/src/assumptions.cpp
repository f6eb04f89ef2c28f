#include "mpsops/assumptions.hpp"

#include "mpsops/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace mpsops {

namespace {

// Distance from p to the closed rectangle (0 inside).
double distance_to_rect(const Rect& r, Point2 p) {
    const double dx = std::max({r.min.x1 - p.x1, 0.0, p.x1 - r.max.x1});
    const double dy = std::max({r.min.x2 - p.x2, 0.0, p.x2 - r.max.x2});
    return std::hypot(dx, dy);
}

std::string fmt_point(Point2 p) {
    std::ostringstream os;
    os << "(" << p.x1 << ", " << p.x2 << ")";
    return os.str();
}

} // namespace

const char* clause_label(Clause c) {
    switch (c) {
    case Clause::RadiusOrdering: return "r_σ < h < H";
    case Clause::FocalSite: return "a_k ∈ σ_k ∩ Ω";
    case Clause::InnerBall: return "B_δ(a_k) ⊂ σ_k ∩ Ω";
    case Clause::PaddingBall: return "B_{h+r_σ}(x) ⊂ Ω_H";
    case Clause::NeighborCover: return "B_h(x) ⊂ ∪_{i∈R̄(x,h)} σ̄_i";
    }
    return "?";
}

bool ValidationReport::all_pass() const {
    return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.pass; });
}

const ClauseResult& ValidationReport::get(Clause c) const {
    for (const auto& r : clauses) {
        if (r.clause == c) return r;
    }
    throw InvalidArgument("clause missing from validation report");
}

std::vector<const ClauseResult*> ValidationReport::failures(std::initializer_list<Clause> ignored) const {
    std::vector<const ClauseResult*> out;
    for (const auto& r : clauses) {
        if (r.pass) continue;
        if (std::find(ignored.begin(), ignored.end(), r.clause) != ignored.end()) continue;
        out.push_back(&r);
    }
    return out;
}

double admissible_delta(const VoronoiDecomposition& decomp, std::size_t k, double cap) {
    const Point2 a = decomp.site(k);
    const double inradius = decomp.cell(k).min_edge_distance(a);
    const double to_boundary = decomp.domain().omega.inner_distance(a);
    return std::max(0.0, std::min({cap, inradius, to_boundary}));
}

ValidationReport validate_standing_assumptions(const VoronoiDecomposition& decomp, std::size_t k, double h,
                                               double delta, Point2 x) {
    if (k >= decomp.size()) throw InvalidArgument("focal index out of range");
    ValidationReport rep;
    rep.r_sigma = decomp.r_sigma();
    rep.h = h;
    rep.delta = delta;
    rep.padding = decomp.domain().padding;
    const Rect& omega = decomp.domain().omega;
    const Point2 a = decomp.site(k);
    const auto& cell = decomp.cell(k);

    {
        ClauseResult c{Clause::RadiusOrdering, false, {}, {}, 0.0};
        c.pass = rep.r_sigma < h && h < rep.padding;
        c.measure = std::min(h - rep.r_sigma, rep.padding - h);
        std::ostringstream os;
        os << clause_label(c.clause) << ": r_σ=" << rep.r_sigma << ", h=" << h << ", H=" << rep.padding;
        c.message = os.str();
        rep.clauses.push_back(c);
    }
    {
        ClauseResult c{Clause::FocalSite, false, {}, {}, 0.0};
        c.pass = omega.contains(a) && cell.contains(a);
        c.measure = omega.inner_distance(a);
        c.message = std::string(clause_label(c.clause)) + ": a_k=" + fmt_point(a);
        if (!c.pass) c.witness = a;
        rep.clauses.push_back(c);
    }
    {
        ClauseResult c{Clause::InnerBall, false, {}, {}, 0.0};
        const double inradius = cell.min_edge_distance(a);
        const double to_boundary = omega.inner_distance(a);
        const double room = std::min(inradius, to_boundary);
        c.pass = delta > 0.0 && delta <= room;
        c.measure = room - delta;
        std::ostringstream os;
        os << clause_label(c.clause) << ": δ=" << delta << ", inradius of σ_k about a_k=" << inradius
           << ", distance to ∂Ω=" << to_boundary;
        c.message = os.str();
        if (!c.pass) {
            // The point of the cell boundary (or of ∂Ω) nearest to a_k lies inside B_δ(a_k).
            if (inradius <= to_boundary) {
                const auto verts = cell.vertices();
                Point2 best = a;
                double best_d = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < verts.size(); ++i) {
                    const Point2 p = verts[i];
                    const Vec2 e = cell.vertex(i + 1) - p;
                    const double t = std::clamp(dot(a - p, e) / norm2(e), 0.0, 1.0);
                    const Point2 q = p + t * e;
                    if (distance(q, a) < best_d) {
                        best_d = distance(q, a);
                        best = q;
                    }
                }
                c.witness = best;
            } else {
                const double dl = a.x1 - omega.min.x1, dr = omega.max.x1 - a.x1;
                const double db = a.x2 - omega.min.x2, dt = omega.max.x2 - a.x2;
                const double m = std::min({dl, dr, db, dt});
                if (m == dl) c.witness = Point2{omega.min.x1, a.x2};
                else if (m == dr) c.witness = Point2{omega.max.x1, a.x2};
                else if (m == db) c.witness = Point2{a.x1, omega.min.x2};
                else c.witness = Point2{a.x1, omega.max.x2};
            }
        }
        rep.clauses.push_back(c);
    }
    {
        ClauseResult c{Clause::PaddingBall, false, {}, {}, 0.0};
        const double reach = distance_to_rect(omega, x) + h + rep.r_sigma;
        c.pass = reach <= rep.padding;
        c.measure = rep.padding - reach;
        std::ostringstream os;
        os << clause_label(c.clause) << ": dist(x,Ω)+h+r_σ=" << reach << ", H=" << rep.padding;
        c.message = os.str();
        if (!c.pass) {
            // Farthest point of the ball in the direction away from Ω.
            const Point2 q{std::clamp(x.x1, omega.min.x1, omega.max.x1), std::clamp(x.x2, omega.min.x2, omega.max.x2)};
            Vec2 dir = x - q;
            if (norm(dir) == 0.0) {
                const double dl = x.x1 - omega.min.x1, dr = omega.max.x1 - x.x1;
                const double db = x.x2 - omega.min.x2, dt = omega.max.x2 - x.x2;
                const double m = std::min({dl, dr, db, dt});
                dir = m == dl ? Vec2{-1, 0} : m == dr ? Vec2{1, 0} : m == db ? Vec2{0, -1} : Vec2{0, 1};
            }
            c.witness = x + (h + rep.r_sigma) * (dir / norm(dir));
        }
        rep.clauses.push_back(c);
    }
    {
        ClauseResult c{Clause::NeighborCover, false, {}, {}, 0.0};
        const auto closed = decomp.sites_within(x, h);
        const double disk = std::numbers::pi * h * h;
        const double tol = 1e-12 * disk;
        double in_closed = 0.0;
        double foreign = 0.0;
        std::size_t foreign_cells = 0;
        std::optional<std::size_t> worst;
        double worst_area = 0.0;
        // Cells of sites farther than h + r_σ cannot reach B_h(x).
        for (std::size_t i = 0; i < decomp.size(); ++i) {
            const double d = distance(x, decomp.site(i));
            if (d >= h + rep.r_sigma) continue;
            const double area = polygon_disk_area(decomp.cell(i), x, h);
            if (d < h) {
                in_closed += area;
            } else if (area > tol) {
                foreign += area;
                ++foreign_cells;
                if (area > worst_area) {
                    worst_area = area;
                    worst = i;
                }
            }
        }
        const double outside = std::max(disk - in_closed - foreign, 0.0);
        const double uncovered = foreign + (outside > tol ? outside : 0.0);
        c.pass = uncovered <= tol;
        c.measure = uncovered;
        std::ostringstream os;
        os << clause_label(c.clause) << ": |R̄(x,h)|=" << closed.size() << ", uncovered area " << uncovered
           << " (" << uncovered / disk << " of the disk) in " << foreign_cells << " cells outside R̄";
        if (outside > tol) os << " plus " << outside << " outside the padded domain";
        c.message = os.str();
        if (!c.pass && worst) {
            // A point of the offending cell inside B_h(x): its closest point, nudged toward the site.
            const auto& bad = decomp.cell(*worst);
            const Point2 q = bad.closest_point(x);
            c.witness = q + 1e-9 * (decomp.site(*worst) - q);
            os << "; witness cell " << *worst;
            c.message = os.str();
        } else if (!c.pass) {
            c.witness = x;
        }
        rep.clauses.push_back(c);
    }
    return rep;
}

} // namespace mpsops

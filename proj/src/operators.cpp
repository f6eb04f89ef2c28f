#include "mpsops/operators.hpp"

#include "mpsops/errors.hpp"
#include "mpsops/quadrature.hpp"

#include <cmath>
#include <sstream>

namespace mpsops {

namespace {

constexpr std::array<const char*, 4> kFamilyNames{"pi", "grad", "laplace", "box"};
constexpr std::array<const char*, 4> kStageSuffix{"", "_hat", "_breve", "_tilde"};

// Relative accuracy of the ingredients: closed-form radial integrals, the
// refined cell norms ∫σ_i |·|^n w, and plain floating-point sums.
constexpr double kRadialRel = 1e-13;
constexpr double kCellRel = 1e-10;
constexpr double kRoundoffRel = 1e-13;

// Numerators of all four families plus the integral of each absolute integrand.
struct Sums {
    double pi = 0.0;
    Vec2 grad;
    double lap = 0.0;
    double box = 0.0;
    std::array<double, 4> mag{};

    void add(double wt, double fy, double fk, double r, Vec2 toward_center) {
        const double d = fk - fy;
        pi += wt * fy;
        grad += (wt * d / r) * toward_center;
        lap += wt * d;
        box += wt * d / (r * r);
        const double aw = std::abs(wt);
        mag[0] += aw * std::abs(fy);
        mag[1] += aw * std::abs(d) / r;
        mag[2] += aw * std::abs(d);
        mag[3] += aw * std::abs(d) / (r * r);
    }

    bool agrees_with(const Sums& o, double rel) const {
        const auto close = [&](double a, double b, double m) { return std::abs(a - b) <= rel * m + 1e-300; };
        return close(pi, o.pi, mag[0]) && close(grad.x1, o.grad.x1, mag[1]) && close(grad.x2, o.grad.x2, mag[1]) &&
               close(lap, o.lap, mag[2]) && close(box, o.box, mag[3]);
    }
};

// Per-family absolute numerator uncertainty that accompanies a Sums value.
using Spread = std::array<double, 4>;

template <class Level>
std::pair<Sums, Spread> refine(Level&& level, const QuadratureOptions& opts, const char* what) {
    Sums coarse = level(0);
    for (int l = 1; l <= opts.max_doublings; ++l) {
        Sums fine = level(l);
        if (fine.agrees_with(coarse, opts.rel_tol)) {
            // The last change bounds the remaining error of the finer level generously.
            const Spread spread{std::abs(fine.pi - coarse.pi) + 1e-13 * fine.mag[0],
                                norm(fine.grad - coarse.grad) + 1e-13 * fine.mag[1],
                                std::abs(fine.lap - coarse.lap) + 1e-13 * fine.mag[2],
                                std::abs(fine.box - coarse.box) + 1e-13 * fine.mag[3]};
            return {fine, spread};
        }
        coarse = fine;
    }
    std::ostringstream os;
    os << what << " quadrature did not reach relative tolerance " << opts.rel_tol << " after "
       << opts.max_doublings << " doublings";
    throw QuadratureError(os.str());
}

void require_floor(double value, double floor, const char* what) {
    if (!(value >= floor) || !(value > 0.0)) {
        std::ostringstream os;
        os << what << " denominator " << value << " is below the positivity floor " << floor;
        throw DegenerateConfiguration(os.str());
    }
}

using Stages = std::array<OperatorResult, 4>;

// `spread` bounds the numerator errors; `den_rel` the relative error of the normalizers.
Stages make_stage(Stage stage, const Sums& s, double dw, double dm, const Spread& spread, double den_rel) {
    Stages out{OperatorResult{{Family::Interpolation, stage}, s.pi / dw, dw, 0.0},
               OperatorResult{{Family::Gradient, stage}, (2.0 / dw) * s.grad, dw, 0.0},
               OperatorResult{{Family::Laplacian, stage}, -4.0 * s.lap / dm, dm, 0.0},
               OperatorResult{{Family::BoxLaplacian, stage}, -4.0 * s.box / dw, dw, 0.0}};
    const std::array<double, 4> scale{1.0 / dw, 2.0 / dw, 4.0 / dm, 4.0 / dw};
    for (std::size_t i = 0; i < 4; ++i) {
        const double mag = out[i].is_vector() ? norm(out[i].vector()) : std::abs(out[i].scalar());
        out[i].uncertainty = scale[i] * spread[i] + 2.0 * den_rel * mag;
    }
    return out;
}

Spread relative_spread(const Sums& s, double rel) {
    return {rel * s.mag[0], rel * s.mag[1], rel * s.mag[2], rel * s.mag[3]};
}

Stages continuous_stage(const NeighborContext& ctx, const TestFunction& f, const QuadratureOptions& opts) {
    const auto& w = ctx.weight();
    const Point2 a = ctx.focal();
    const double fk = f(a);
    const auto level = [&](int l) {
        Sums s;
        const int radial = opts.radial_points << l;
        const int pieces = opts.angular_pieces << l;
        sweep_annulus(ctx.delta(), ctx.h(), AngularRule{16, std::max(1, pieces / 8)}, [&](const Ray& ray) {
            const Vec2 u{std::cos(ray.theta), std::sin(ray.theta)};
            composite_gauss(ray.r_lo, ray.r_hi, w.breakpoints(), radial, [&](double r, double wr) {
                const double wt = ray.weight * wr * r * w.profile(r);
                s.add(wt, f(a + r * u), fk, r, -u);
            });
        });
        return s;
    };
    const auto [s, spread] = refine(level, opts, "annulus");
    return make_stage(Stage::Continuous, s, radial_moment(w, 0), radial_moment(w, 2), spread, kRadialRel);
}

Stages hat_stage(const NeighborContext& ctx, const TestFunction& f, const QuadratureOptions& opts) {
    const auto& w = ctx.weight();
    const Point2 a = ctx.focal();
    const double fk = f(a);
    const auto& decomp = ctx.decomposition();
    const auto level = [&](int l) {
        Sums s;
        const int radial = opts.cell_radial_points << l;
        const AngularRule rule{opts.cell_angular_points, 1 << l};
        for (const auto& n : ctx.neighbors()) {
            sweep_polygon(decomp.cell(n.index), a, ctx.delta(), ctx.h(), w.breakpoints(), rule, [&](const Ray& ray) {
                const Vec2 u{std::cos(ray.theta), std::sin(ray.theta)};
                composite_gauss(ray.r_lo, ray.r_hi, w.breakpoints(), radial, [&](double r, double wr) {
                    const double wt = ray.weight * wr * r * w.profile(r);
                    s.add(wt, f(a + r * u), fk, r, -u);
                });
            });
        }
        return s;
    };
    const auto [s, spread] = refine(level, opts, "cell-wise");
    require_floor(ctx.cell_weight_sum(), ctx.floor(), "Σ∫σ_j w");
    require_floor(ctx.cell_moment_sum(), ctx.moment_floor(), "Σ∫σ_j |a_k-z|² w");
    return make_stage(Stage::Hat, s, ctx.cell_weight_sum(), ctx.cell_moment_sum(), spread, kCellRel);
}

// Breve and tilde share the site-frozen integrand; they differ in the cell
// measure (∫σ_i w versus V_i w(a_k - a_i)) and in the normalizers.
Stages site_stage(const NeighborContext& ctx, const TestFunction& f, Stage stage) {
    const Point2 a = ctx.focal();
    const double fk = f(a);
    Sums s;
    double deviation = 0.0;
    for (const auto& n : ctx.neighbors()) {
        const double fi = f(n.site);
        const double d = fk - fi;
        const Vec2 e = (a - n.site) / n.distance;
        const double m = stage == Stage::Breve ? n.cell_weight : n.volume * n.weight;
        // Π̆ keeps V_i w(a_k - a_i) in its numerator; only the normalizer changes.
        s.pi += n.volume * n.weight * fi;
        deviation += n.volume * n.weight * (fi - fk);
        s.grad += (m * d / n.distance) * e;
        s.lap += m * d;
        s.box += m * d / (n.distance * n.distance);
        s.mag[0] += std::abs(n.volume * n.weight * fi);
        s.mag[1] += std::abs(m * d / n.distance);
        s.mag[2] += std::abs(m * d);
        s.mag[3] += std::abs(m * d / (n.distance * n.distance));
    }
    if (stage == Stage::Breve) {
        require_floor(ctx.cell_weight_sum(), ctx.floor(), "Σ∫σ_j w");
        require_floor(ctx.cell_moment_sum(), ctx.moment_floor(), "Σ∫σ_j |a_k-z|² w");
        return make_stage(stage, s, ctx.cell_weight_sum(), ctx.cell_moment_sum(), relative_spread(s, kCellRel),
                          kCellRel);
    }
    require_floor(ctx.discrete_weight_sum(), ctx.floor(), "Σ V_j w");
    require_floor(ctx.discrete_moment_sum(), ctx.moment_floor(), "Σ V_j |a_k-a_j|² w");
    auto out = make_stage(stage, s, ctx.discrete_weight_sum(), ctx.discrete_moment_sum(),
                          relative_spread(s, kRoundoffRel), kRoundoffRel);
    // Same value as Σ V_i w f(a_i) / Σ V_j w, written so that constants are reproduced bit-exactly.
    out[0].value = fk + deviation / ctx.discrete_weight_sum();
    return out;
}

Stages stage_values(Stage stage, const NeighborContext& ctx, const TestFunction& f, const QuadratureOptions& opts) {
    switch (stage) {
    case Stage::Continuous: return continuous_stage(ctx, f, opts);
    case Stage::Hat: return hat_stage(ctx, f, opts);
    case Stage::Breve:
    case Stage::Tilde: return site_stage(ctx, f, stage);
    }
    throw InvalidArgument("unknown stage");
}

} // namespace

std::string operator_name(OperatorKind kind) {
    return std::string(kFamilyNames[static_cast<std::size_t>(kind.family)]) +
           kStageSuffix[static_cast<std::size_t>(kind.stage)];
}

const char* family_name(Family f) { return kFamilyNames[static_cast<std::size_t>(f)]; }

OperatorKind parse_operator(const std::string& name) {
    for (std::size_t fi = 0; fi < 4; ++fi) {
        for (std::size_t si = 0; si < 4; ++si) {
            const OperatorKind k{static_cast<Family>(fi), static_cast<Stage>(si)};
            if (operator_name(k) == name) return k;
        }
    }
    throw InvalidArgument("unknown operator '" + name + "'");
}

double OperatorResult::scalar() const {
    if (const auto* v = std::get_if<double>(&value)) return *v;
    throw InvalidArgument(operator_name(kind) + " is vector-valued");
}

Vec2 OperatorResult::vector() const {
    if (const auto* v = std::get_if<Vec2>(&value)) return *v;
    throw InvalidArgument(operator_name(kind) + " is scalar-valued");
}

double difference_norm(const OperatorResult& a, const OperatorResult& b) {
    if (a.is_vector() != b.is_vector()) throw InvalidArgument("cannot compare scalar and vector results");
    if (a.is_vector()) return norm(a.vector() - b.vector());
    return std::abs(a.scalar() - b.scalar());
}

OperatorResult exact_value(Family family, const NeighborContext& ctx, const TestFunction& f) {
    const Point2 a = ctx.focal();
    const OperatorKind kind{family, Stage::Continuous};
    switch (family) {
    case Family::Interpolation: return {kind, f(a), 1.0, 0.0};
    case Family::Gradient: return {kind, f.gradient(a), 1.0, 0.0};
    case Family::Laplacian:
    case Family::BoxLaplacian: return {kind, f.laplacian(a), 1.0, 0.0};
    }
    throw InvalidArgument("unknown family");
}

OperatorResult apply_operator(OperatorKind kind, const NeighborContext& ctx, const TestFunction& f,
                              const QuadratureOptions& opts) {
    return stage_values(kind.stage, ctx, f, opts)[static_cast<std::size_t>(kind.family)];
}

FamilyChain evaluate_family(Family family, const NeighborContext& ctx, const TestFunction& f,
                            const QuadratureOptions& opts) {
    return evaluate_all(ctx, f, opts)[static_cast<std::size_t>(family)];
}

std::array<FamilyChain, 4> evaluate_all(const NeighborContext& ctx, const TestFunction& f,
                                        const QuadratureOptions& opts) {
    std::array<Stages, 4> by_stage{stage_values(Stage::Continuous, ctx, f, opts),
                                   stage_values(Stage::Hat, ctx, f, opts),
                                   stage_values(Stage::Breve, ctx, f, opts),
                                   stage_values(Stage::Tilde, ctx, f, opts)};
    std::array<FamilyChain, 4> out{by_stage[0], by_stage[0], by_stage[0], by_stage[0]};
    for (std::size_t fam = 0; fam < 4; ++fam) {
        for (std::size_t st = 0; st < 4; ++st) out[fam][st] = by_stage[st][fam];
    }
    return out;
}

OperatorResult pi_tilde(const NeighborContext& ctx, const TestFunction& f) {
    return apply_operator({Family::Interpolation, Stage::Tilde}, ctx, f);
}
OperatorResult grad_tilde(const NeighborContext& ctx, const TestFunction& f) {
    return apply_operator({Family::Gradient, Stage::Tilde}, ctx, f);
}
OperatorResult laplace_tilde(const NeighborContext& ctx, const TestFunction& f) {
    return apply_operator({Family::Laplacian, Stage::Tilde}, ctx, f);
}
OperatorResult box_tilde(const NeighborContext& ctx, const TestFunction& f) {
    return apply_operator({Family::BoxLaplacian, Stage::Tilde}, ctx, f);
}

double a_priori_bound(Family family, double delta, double c0_seminorm) {
    switch (family) {
    case Family::Interpolation: return c0_seminorm;
    case Family::Gradient: return 4.0 / delta * c0_seminorm;
    case Family::Laplacian:
    case Family::BoxLaplacian: return 8.0 / (delta * delta) * c0_seminorm;
    }
    return 0.0;
}

} // namespace mpsops

#include "mpsops/bounds.hpp"

#include "mpsops/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace mpsops {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi = std::numbers::pi;

double ball_norm(const WeightFunction& w, int n, double inner, double outer) {
    return 2.0 * kPi * w.radial_integral(n, inner, outer);
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) {
        std::ostringstream os;
        os << "bound denominator " << what << " = " << v << " is not positive";
        throw AssumptionViolation(os.str());
    }
}

Constant ratio(double num, double den) { return {num / den, num, den}; }

double pow10(int e) { return std::pow(10.0, e); }

} // namespace

BoundInputs geometric_inputs(const NeighborContext& ctx) {
    const auto& w = ctx.weight();
    const Point2 a = ctx.focal();
    const auto& cell = ctx.focal_cell();
    BoundInputs in;
    in.h = ctx.h();
    in.delta = ctx.delta();
    in.r_sigma = ctx.r_sigma();
    in.lambda = ctx.lambda();
    in.lipschitz = w.lipschitz();
    for (int n = -1; n <= 2; ++n) {
        in.annulus[n] = radial_moment(w, n);
        in.focal_cell[n] = cell_l1_norm(w, n, cell, a);
        in.outside_cell[n] = std::max(in.annulus[n] - in.focal_cell[n], 0.0);
    }
    double vdw = 0.0;
    for (const auto& t : ctx.neighbors()) vdw += t.volume * t.distance * t.weight;
    in.moment_ratio = vdw / ctx.discrete_moment_sum();
    if (in.lambda) {
        const double lh = *in.lambda * in.h;
        in.ring_radius = lh + in.r_sigma;
        in.ring_radius_effective = std::min(in.ring_radius, in.h);
        for (int n = -1; n <= 2; ++n) {
            in.ring[n] = std::max(ball_norm(w, n, in.delta, in.ring_radius_effective) -
                                      cell_l1_norm(w, n, cell, a, in.ring_radius_effective),
                                  0.0);
        }
        double inner = 0.0;
        for (const auto* t : ctx.neighbors_within(lh)) inner += t->volume * t->weight / t->distance;
        in.inverse_distance_ratio = inner / ctx.discrete_weight_sum();
    } else {
        in.ring_radius = in.ring_radius_effective = kNaN;
        for (auto& v : in.ring.by_power) v = kNaN;
        in.inverse_distance_ratio = kNaN;
    }
    return in;
}

BoundInputs appendix_inputs(const WeightFunction& w, double r_sigma, std::optional<double> lambda) {
    BoundInputs in;
    in.h = w.h();
    in.delta = w.delta();
    in.r_sigma = r_sigma;
    in.lambda = lambda;
    in.lipschitz = w.lipschitz();
    in.appendix_simplified = true;
    for (int n = -1; n <= 2; ++n) {
        in.annulus[n] = radial_moment(w, n);
        in.focal_cell[n] = ball_norm(w, n, in.delta, r_sigma);
        in.outside_cell[n] = in.annulus[n];
    }
    in.moment_ratio = in.annulus[1] / in.annulus[2];
    if (lambda) {
        in.ring_radius = *lambda * in.h + r_sigma;
        in.ring_radius_effective = std::min(in.ring_radius, in.h);
        for (int n = -1; n <= 2; ++n) in.ring[n] = ball_norm(w, n, in.delta, in.ring_radius_effective);
        in.inverse_distance_ratio = ball_norm(w, -1, in.delta, *lambda * in.h) / in.annulus[0];
    } else {
        in.ring_radius = in.ring_radius_effective = kNaN;
        for (auto& v : in.ring.by_power) v = kNaN;
        in.inverse_distance_ratio = kNaN;
    }
    return in;
}

ConstantSet compute_constants(const BoundInputs& in) {
    require_positive(in.annulus[0], "‖w‖_{B_h∖B_δ}");
    require_positive(in.annulus[2], "‖|·|²w‖_{B_h∖B_δ}");
    require_positive(in.outside_cell[0], "‖w‖_{B_h∖σ_k}");
    require_positive(in.outside_cell[2], "‖|·|²w‖_{B_h∖σ_k}");

    const double r = in.r_sigma;
    const double h = in.h;
    const double L = in.lipschitz;
    const auto& N = in.annulus;
    const auto& S = in.focal_cell;
    const auto& E = in.outside_cell;
    const auto& F = in.ring;
    const double D1 = in.moment_ratio;

    ConstantSet c;
    for (auto& k : c.c) k = {kNaN, kNaN, kNaN};
    c.c[1] = ratio(S[0], N[0]);
    c.c[2] = ratio(kPi * L * r * h * h, E[0]);
    c.c[4] = ratio(S[1] * (1.0 + r * N[1] / E[2]), N[2]);
    c.c[7] = ratio(2.0 * r * h * E[0] * D1, E[2]);
    c.c[8] = ratio(kPi * L * r * h * h * h * (1.0 + h * D1), E[2]);
    c.c[9] = ratio(S[-1] + S[0] * E[-1] / E[0], N[0]);
    if (in.lambda) {
        const double lam = *in.lambda;
        c.c[3] = ratio(F[0], E[0]);
        c.c[5] = ratio(r / (lam * h) * E[1], E[2]);
        c.c[6] = ratio(r * F[0], E[2]);
        c.c[10] = ratio(r / (lam * h) * E[-1], E[0]);
        c.c[11] = ratio(F[-1], E[0]);
        const double lhr = lam * h + r;
        c.c[12] = ratio(kPi * L * (2.0 * r * h / lam + lhr * lhr + r * h * h * in.inverse_distance_ratio), E[0]);
    }
    return c;
}

Theorem theorem_for(Family family) {
    switch (family) {
    case Family::Interpolation: return Theorem::Interpolation;
    case Family::Gradient: return Theorem::Gradient;
    case Family::Laplacian: return Theorem::Laplacian;
    case Family::BoxLaplacian: return Theorem::BoxLaplacian;
    }
    throw InvalidArgument("unknown family");
}

const char* theorem_name(Theorem t) {
    switch (t) {
    case Theorem::Interpolation: return "interpolation";
    case Theorem::Gradient: return "gradient";
    case Theorem::Laplacian: return "laplacian";
    case Theorem::BoxLaplacian: return "box_laplacian";
    }
    return "?";
}

double BoundReport::rhs(const std::array<double, 4>& seminorms) const {
    double total = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        if (coefficients[j] != 0.0) total += coefficients[j] * seminorms[j];
    }
    return total;
}

BoundReport theorem_bound(Theorem t, const BoundInputs& in) { return theorem_bound(t, in, compute_constants(in)); }

BoundReport theorem_bound(Theorem t, const BoundInputs& in, const ConstantSet& c) {
    BoundReport rep;
    rep.theorem = t;
    rep.inputs = in;
    rep.constants = c;
    const double h = in.h;
    const double r = in.r_sigma;
    const auto need_lambda = [&] {
        if (!in.lambda) throw InvalidArgument(std::string(theorem_name(t)) + " bound requires λ");
        return *in.lambda;
    };
    const auto note_ring = [&] {
        if (in.ring_radius > in.h) {
            std::ostringstream os;
            os << "λh+r_σ=" << in.ring_radius << " exceeds h; ring norms evaluated on B_h where the weight lives";
            rep.notes.push_back(os.str());
        }
    };
    switch (t) {
    case Theorem::Interpolation:
        rep.coefficients = {2.0 * c(1) + 2.0 * c(2), h + r, 0.0, 0.0};
        rep.used_constants = {1, 2};
        break;
    case Theorem::Gradient: {
        const double lam = need_lambda();
        rep.coefficients = {0.0, 8.0 * r / (lam * h) + 4.0 * c(1) + 4.0 * c(2) + 8.0 * c(3), 4.0 * h, 0.0};
        rep.used_constants = {1, 2, 3};
        note_ring();
        break;
    }
    case Theorem::Laplacian:
        need_lambda();
        rep.coefficients = {0.0, 4.0 * (c(4) + c(5) + c(6) + c(7)) + 4.0 * c(8), 0.0, 24.0 * h};
        rep.used_constants = {4, 5, 6, 7, 8};
        rep.notes.push_back("the displayed sum stops at c7 while c8 enters the site-freezing step; 4 c8 |f|_{C1} is included");
        note_ring();
        break;
    case Theorem::BoxLaplacian:
        need_lambda();
        rep.coefficients = {0.0, 4.0 * c(9) + 12.0 * c(10) + 12.0 * c(11) + 4.0 * c(12), 0.0, 24.0 * h};
        rep.used_constants = {9, 10, 11, 12};
        note_ring();
        break;
    }
    if (in.appendix_simplified) rep.notes.push_back("appendix identifications in effect");
    return rep;
}

ConstantSet constants_thm13(const NeighborContext& ctx) { return compute_constants(geometric_inputs(ctx)); }

ConstantSet constants_thm14(const NeighborContext& ctx) {
    ctx.require_lambda("constants c1..c3");
    return compute_constants(geometric_inputs(ctx));
}

ConstantSet constants_thm15(const NeighborContext& ctx) {
    ctx.require_lambda("constants c4..c8");
    return compute_constants(geometric_inputs(ctx));
}

ConstantSet constants_thm16(const NeighborContext& ctx) {
    ctx.require_lambda("constants c9..c12");
    return compute_constants(geometric_inputs(ctx));
}

CorollaryScenario CorollaryScenario::fine(int m) {
    if (m < 1) throw InvalidArgument("m must be a positive integer");
    CorollaryScenario s;
    s.r_sigma = pow10(-5 * m);
    s.c_star = pow10(4 * m);
    s.lambda = pow10(-2 * m);
    s.preset = Preset::Fine;
    s.m = m;
    return s;
}

CorollaryScenario CorollaryScenario::coarse() {
    CorollaryScenario s;
    s.r_sigma = 1e-2;
    s.c_star = 4.0;
    s.lambda = 0.5;
    s.preset = Preset::Coarse;
    return s;
}

CorollaryBounds corollary71(const CorollaryScenario& s) {
    if (!(s.r_sigma > 0.0) || !(s.c_star > 1.0) || !(s.lambda > 0.0 && s.lambda < 1.0)) {
        throw InvalidArgument("scenario needs r_σ > 0, C_* > 1 and 0 < λ < 1");
    }
    CorollaryBounds out;
    out.scenario = s;
    const double C = s.c_star;
    const double r = s.r_sigma;
    const double lam = s.lambda;
    const double lc = lam * C;
    const double q2 = C * C - 0.25;
    const double q4 = C * C * C * C - 1.0 / 16.0;
    out.general[0] = {(C + 1.0) * r, 1.5 / q2};
    out.general[1] = {4.0 * C * r, 8.0 / lc + (8.0 * (lc + 1.0) * (lc + 1.0) + 1.0) / q2};
    out.general[2] = {24.0 * C * r,
                      (8.0 + 24.0 * (lc + 1.0) * (lc + 1.0) + (56.0 * C * C * C - 7.0) / (3.0 * q4) +
                       C * (64.0 * C * C * C - 8.0) / (C * C + 0.25) + (16.0 * C * C * C - 2.0) / lc) /
                          (3.0 * r * q4)};
    out.general[3] = {24.0 * C * r, (12.0 / (2.0 * C + 1.0) + 16.0 + 24.0 * lc + (24.0 * C - 12.0) / lc) / (r * q2)};

    // Second route: the theorem constants on the appendix identifications.
    const auto w = WeightFunction::indicator(s.delta(), s.h());
    const auto in = appendix_inputs(w, r, lam);
    const auto c = compute_constants(in);
    const std::array<Theorem, 4> th{Theorem::Interpolation, Theorem::Gradient, Theorem::Laplacian, Theorem::BoxLaplacian};
    for (std::size_t i = 0; i < 4; ++i) {
        const auto rep = theorem_bound(th[i], in, c);
        const auto& k = rep.coefficients;
        out.via_constants[i] = i == 0 ? CoefficientPair{k[1], k[0]}
                             : i == 1 ? CoefficientPair{k[2], k[1]}
                                      : CoefficientPair{k[3], k[1]};
    }

    if (s.preset == CorollaryScenario::Preset::Coarse) {
        out.stated = std::array<CoefficientPair, 4>{
            CoefficientPair{1.0 / 20.0, 1.0 / 10.0}, CoefficientPair{4.0 / 25.0, 10.0},
            CoefficientPair{24.0 / 25.0, 300.0}, CoefficientPair{24.0 / 25.0, 700.0}};
    } else if (s.preset == CorollaryScenario::Preset::Fine) {
        const int m = s.m;
        out.stated = std::array<CoefficientPair, 4>{
            CoefficientPair{pow10(-m) + pow10(-5 * m), pow10(-(8 * m - 1))},
            CoefficientPair{4.0 * pow10(-m), pow10(-(2 * m - 1))},
            CoefficientPair{24.0 * pow10(-m), pow10(-(m - 1))},
            CoefficientPair{24.0 * pow10(-m), 5.0 * pow10(-(m - 1))}};
    }
    return out;
}

double taylor_remainder_bound(int m, double dist, double seminorm) {
    if (m < 1 || dist < 0.0 || seminorm < 0.0) throw InvalidArgument("need m >= 1, dist >= 0, seminorm >= 0");
    return 2.0 * (m + 1) * std::pow(dist, m + 1) * seminorm;
}

double multinomial_inverse_sum(int m) {
    if (m < 0) throw InvalidArgument("m must be nonnegative");
    // Σ_{a=0}^{m} 1/(a!(m-a)!) by direct enumeration of α = (a, m-a).
    double total = 0.0;
    for (int a = 0; a <= m; ++a) total += 1.0 / (std::tgamma(a + 1.0) * std::tgamma(m - a + 1.0));
    return total;
}

} // namespace mpsops

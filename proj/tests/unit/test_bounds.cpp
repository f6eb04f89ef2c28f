#include "support.hpp"

#include "quadrature_oracle.hpp"
#include "mpsops/bounds.hpp"
#include "mpsops/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace mpsops;
using namespace testing_support;

namespace {

NeighborContext make_ctx(const std::shared_ptr<const VoronoiDecomposition>& d, std::size_t k, double delta, double h,
                         bool taper, std::optional<double> lambda) {
    auto w = taper ? WeightFunction::linear_taper(delta, h) : WeightFunction::indicator(delta, h);
    ContextOptions o;
    o.lambda = lambda;
    return NeighborContext::make(d, k, w, o);
}

void expect_rel(double got, double want, double rel, const std::string& what) {
    EXPECT_NEAR(got, want, rel * std::abs(want)) << what;
}

const char* kOps[] = {"pi_tilde", "grad_tilde", "laplace_tilde", "box_tilde"};

} // namespace

TEST(Bounds, FocalCellInsideInnerBallGivesZeroC1AndUnitC3) {
    const auto d = lattice(0.05, 0.5);
    const auto k = central_site(*d);
    const double delta = 0.036;  // the focal cell reaches 0.0354 from its site
    ASSERT_LT(d->cell(k).max_distance_from(d->site(k)), delta);
    const auto ctx = make_ctx(d, k, delta, 0.2, false, 0.9);
    const auto c = constants_thm14(ctx);
    EXPECT_EQ(c(1), 0.0);
    EXPECT_NEAR(c(3), 1.0, 1e-12);  // λh + r_σ > h and σ_k adds nothing to the B_δ exclusion
    const auto in = geometric_inputs(ctx);
    EXPECT_GT(in.ring_radius, in.h);
    EXPECT_EQ(in.ring_radius_effective, in.h);
}

TEST(Bounds, IndicatorWeightDropsLipschitzConstants) {
    const auto d = lattice(0.05, 0.5, 0.15, 2);
    const auto ctx = central_context(d, 4.0, false, 0.5);
    const auto c = constants_thm16(ctx);
    EXPECT_EQ(c(2), 0.0);
    EXPECT_EQ(c(8), 0.0);
    EXPECT_EQ(c(12), 0.0);
    const auto tctx = central_context(d, 4.0, true, 0.5);
    const auto t = constants_thm16(tctx);
    EXPECT_GT(t(2), 0.0);
    EXPECT_GT(t(8), 0.0);
    EXPECT_GT(t(12), 0.0);
    for (int i = 1; i <= 12; ++i) {
        EXPECT_TRUE(std::isfinite(t(i))) << i;
        EXPECT_GE(t(i), 0.0) << i;
    }
}

TEST(Bounds, GradientCoefficientByHand) {
    const auto d = lattice(0.05, 0.5, 0.3, 3);
    const auto ctx = central_context(d, 4.0, false, 0.5);
    const auto in = geometric_inputs(ctx);
    const auto rep = theorem_bound(Theorem::Gradient, in);
    const double lam = 0.5, h = in.h, r = in.r_sigma;
    const double focal = cell_l1_norm(ctx.weight(), 0, ctx.focal_cell(), ctx.focal());
    const double full = radial_moment(ctx.weight(), 0);
    const double outside = full - focal;
    const double re = std::min(lam * h + r, h);
    const double ring = 2 * std::numbers::pi * ctx.weight().radial_integral(0, ctx.delta(), re) -
                        cell_l1_norm(ctx.weight(), 0, ctx.focal_cell(), ctx.focal(), re);
    const double expect = 8 * r / (lam * h) + 4 * focal / full + 8 * ring / outside;
    expect_rel(rep.coefficients[1], expect, 1e-12, "C1 coefficient");
    EXPECT_DOUBLE_EQ(rep.coefficients[2], 4 * h);
    EXPECT_EQ(rep.coefficients[0], 0.0);
    EXPECT_EQ(rep.coefficients[3], 0.0);
}

TEST(Bounds, FocalCellNormMatchesMonteCarlo) {
    const auto d = lattice(0.05, 0.5, 0.3, 3);
    const auto ctx = central_context(d, 4.0, true, 0.5);
    const auto in = geometric_inputs(ctx);
    const auto& cell = ctx.focal_cell();
    std::vector<Point2> verts(cell.vertices().begin(), cell.vertices().end());
    const Point2 a = ctx.focal();
    const double r = ctx.r_sigma();
    const Rect box{{a.x1 - r, a.x2 - r}, {a.x1 + r, a.x2 + r}};
    for (int n = -1; n <= 2; ++n) {
        const auto f = [&](Point2 y) {
            if (!oracle::inside_convex(verts, y)) return 0.0;
            const double q = std::hypot(y.x1 - a.x1, y.x2 - a.x2);
            return std::pow(q, n) * ctx.weight().profile(q);
        };
        const auto mc = oracle::mc_region_integral(f, box, 400000, 77 + n);
        EXPECT_NEAR(in.focal_cell[n], mc.value, 3 * mc.standard_error) << n;
    }
}

TEST(Bounds, SingleInnerNeighborInverseDistanceRatio) {
    const auto base = lattice(0.1, 0.5);
    const auto k = central_site(*base);
    auto sites = base->sites();
    const auto j = base->nearest_site(base->site(k) + Point2{0.1, 0.0});
    sites[j] = base->site(k) + Point2{0.08, 0.0};
    const auto d = std::make_shared<const VoronoiDecomposition>(build_voronoi(sites, base->domain()));
    const double h = 0.3;
    const auto ctx = make_ctx(d, k, 0.02, h, true, 0.09 / h);
    ASSERT_EQ(ctx.neighbors_within(0.09).size(), 1u);
    const auto* t = ctx.neighbors_within(0.09).front();
    EXPECT_EQ(t->index, j);
    const auto in = geometric_inputs(ctx);
    expect_rel(in.inverse_distance_ratio, t->volume * t->weight / 0.08 / ctx.discrete_weight_sum(), 1e-13, "ratio");
}

TEST(Bounds, MissingLambdaIsReported) {
    const auto d = lattice(0.05, 0.5);
    const auto ctx = central_context(d, 4.0, false, std::nullopt);
    EXPECT_THROW(constants_thm14(ctx), InvalidArgument);
    const auto in = geometric_inputs(ctx);
    EXPECT_NO_THROW(theorem_bound(Theorem::Interpolation, in));
    EXPECT_THROW(theorem_bound(Theorem::Laplacian, in), InvalidArgument);
    EXPECT_TRUE(std::isnan(compute_constants(in)(3)));
}

TEST(Bounds, LaplacianReportIncludesC8) {
    const auto d = lattice(0.05, 0.5, 0.15, 1);
    const auto ctx = central_context(d, 4.0, true, 0.5);
    const auto in = geometric_inputs(ctx);
    const auto c = compute_constants(in);
    const auto rep = theorem_bound(Theorem::Laplacian, in, c);
    expect_rel(rep.coefficients[1], 4 * (c(4) + c(5) + c(6) + c(7) + c(8)), 1e-14, "C1");
    EXPECT_NE(std::find(rep.used_constants.begin(), rep.used_constants.end(), 8), rep.used_constants.end());
    EXPECT_FALSE(rep.notes.empty());
}

TEST(Corollary, CoarseScenarioStatedCoefficients) {
    const auto b = corollary71(CorollaryScenario::coarse());
    ASSERT_TRUE(b.stated.has_value());
    const double want[4][2] = {{1.0 / 20, 1.0 / 10}, {4.0 / 25, 10}, {24.0 / 25, 300}, {24.0 / 25, 700}};
    for (int i = 0; i < 4; ++i) {
        expect_rel((*b.stated)[i].high, want[i][0], 1e-12, kOps[i]);
        expect_rel((*b.stated)[i].low, want[i][1], 1e-12, kOps[i]);
        EXPECT_LE(b.general[i].high, (*b.stated)[i].high * (1 + 1e-12)) << kOps[i];
        EXPECT_LE(b.general[i].low, (*b.stated)[i].low * (1 + 1e-12)) << kOps[i];
    }
    // 8/(λC) + (8(λC+1)² + 1)/(C² - 1/4) = 4 + 73/15.75
    expect_rel(b.general[1].low, 4.0 + 73.0 / 15.75, 1e-14, "grad C1 form");
    EXPECT_NEAR(b.general[1].low, 8.635, 1e-3);
    expect_rel(b.general[0].low, 1.5 / 15.75, 1e-14, "pi C0 form");
    expect_rel(b.general[0].high, 0.05, 1e-14, "pi C1 form");
}

TEST(Corollary, FineScenarioStatedCoefficients) {
    for (int m : {1, 2}) {
        const auto b = corollary71(CorollaryScenario::fine(m));
        ASSERT_TRUE(b.stated.has_value());
        const double p = std::pow(10.0, -m);
        const double want[4][2] = {{p + std::pow(10.0, -5 * m), std::pow(10.0, -(8 * m - 1))},
                                   {4 * p, std::pow(10.0, -(2 * m - 1))},
                                   {24 * p, std::pow(10.0, -(m - 1))},
                                   {24 * p, 5 * std::pow(10.0, -(m - 1))}};
        for (int i = 0; i < 4; ++i) {
            expect_rel((*b.stated)[i].high, want[i][0], 1e-12, kOps[i]);
            expect_rel((*b.stated)[i].low, want[i][1], 1e-12, kOps[i]);
        }
    }
    EXPECT_THROW(CorollaryScenario::fine(0), InvalidArgument);
}

TEST(Corollary, ClosedFormsAgreeWithConstantsRoute) {
    std::vector<CorollaryScenario> cases{CorollaryScenario::coarse(), CorollaryScenario::fine(1)};
    for (double C : {1.5, 2.0, 4.0, 8.0, 16.0, 100.0}) {
        for (double lam : {0.1, 0.5, 0.9}) {
            for (double r : {1e-3, 1e-2, 0.1}) {
                CorollaryScenario s;
                s.r_sigma = r;
                s.c_star = C;
                s.lambda = lam;
                cases.push_back(s);
            }
        }
    }
    for (const auto& s : cases) {
        const auto b = corollary71(s);
        for (int i = 0; i < 4; ++i) {
            expect_rel(b.via_constants[i].high, b.general[i].high, 1e-9, kOps[i]);
            if (s.lambda * s.c_star + 1.0 <= s.c_star) {
                expect_rel(b.via_constants[i].low, b.general[i].low, 1e-9, kOps[i]);
            } else {
                // λh + r_σ > h: the constants route clamps the ring norm at h, the closed form keeps π(λh + r_σ)².
                EXPECT_LE(b.via_constants[i].low, b.general[i].low * (1 + 1e-12)) << kOps[i];
            }
        }
    }
}

TEST(Corollary, ScalingStructure) {
    for (double C : {4.0, 10.0}) {
        CorollaryScenario s;
        s.c_star = C;
        s.lambda = 0.5;
        s.r_sigma = 0.01;
        const auto a = corollary71(s);
        s.r_sigma = 0.02;
        const auto b = corollary71(s);
        // Π̃: the C⁰ coefficient is scale free, the (h + r_σ) term doubles.
        expect_rel(b.general[0].low, a.general[0].low, 1e-14, "pi C0");
        expect_rel(b.general[0].high, 2 * a.general[0].high, 1e-14, "pi C1");
        expect_rel(b.general[1].low, a.general[1].low, 1e-14, "grad C1");
        expect_rel(b.general[1].high, 2 * a.general[1].high, 1e-14, "grad C2");
        // Δ̃, □̃: the |f|_{C¹} coefficient scales like 1/r_σ.
        expect_rel(b.general[2].low, 0.5 * a.general[2].low, 1e-14, "laplace C1");
        expect_rel(b.general[3].low, 0.5 * a.general[3].low, 1e-14, "box C1");

        const auto w1 = WeightFunction::indicator(0.005, 0.01 * C);
        const auto w2 = WeightFunction::indicator(0.01, 0.02 * C);
        const auto r1 = theorem_bound(Theorem::Interpolation, appendix_inputs(w1, 0.01, 0.5));
        const auto r2 = theorem_bound(Theorem::Interpolation, appendix_inputs(w2, 0.02, 0.5));
        expect_rel(r2.coefficients[0], r1.coefficients[0], 1e-13, "thm C0");
        expect_rel(r2.coefficients[1], 2 * r1.coefficients[1], 1e-13, "thm C1");
    }
}

TEST(Bounds, RefinementOnNestedLattices) {
    // C_* = 10, λ = 1/2, indicator weight, spacing halved twice.
    const auto f = make_test_function("sincos", kUnit, kUnit.outset(1.0));
    std::vector<std::array<double, 4>> rhs;
    std::vector<std::array<double, 4>> c1_times_r;
    for (double s : {0.08, 0.04, 0.02}) {
        const double r = s / std::sqrt(2.0);
        const auto d = lattice(s, 11 * r);
        const auto ctx = central_context(d, 10.0, false, 0.5);
        const auto in = geometric_inputs(ctx);
        const auto c = compute_constants(in);
        std::array<double, 4> row{}, scaled{};
        for (int t = 0; t < 4; ++t) {
            const auto rep = theorem_bound(static_cast<Theorem>(t), in, c);
            row[t] = rep.rhs(f.seminorms());
            scaled[t] = rep.coefficients[1] * in.r_sigma;
        }
        rhs.push_back(row);
        c1_times_r.push_back(scaled);
    }
    for (std::size_t i = 1; i < rhs.size(); ++i) {
        EXPECT_LT(rhs[i][0], rhs[i - 1][0]) << "interpolation";
        EXPECT_LT(rhs[i][1], rhs[i - 1][1]) << "gradient";
        // The Laplacian bounds carry an r_σ⁻¹ term at fixed C_*; r_σ times it is level independent,
        // so their right-hand sides do not decrease under refinement.
        for (int t : {2, 3}) {
            EXPECT_NEAR(c1_times_r[i][t], c1_times_r[0][t], 1e-6 * c1_times_r[0][t]) << t;
        }
    }
}

TEST(Taylor, RemainderBound) {
    EXPECT_EQ(taylor_remainder_bound(1, 0.0, 3.0), 0.0);
    EXPECT_EQ(taylor_remainder_bound(1, 1.0, 1.0), 4.0);
    EXPECT_THROW(taylor_remainder_bound(0, 1.0, 1.0), InvalidArgument);
    // f = x1³: R₃[f](x, y) = (y1 - x1)³ and |f|_{C³} = 6.
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const Point2 x{4 * oracle::uniform(3, 4 * i) - 2, 4 * oracle::uniform(3, 4 * i + 1) - 2};
        const Point2 y{4 * oracle::uniform(3, 4 * i + 2) - 2, 4 * oracle::uniform(3, 4 * i + 3) - 2};
        const double t = y.x1 - x.x1;
        const double taylor2 = x.x1 * x.x1 * x.x1 + 3 * x.x1 * x.x1 * t + 3 * x.x1 * t * t;
        const double rem = y.x1 * y.x1 * y.x1 - taylor2;
        EXPECT_LE(std::abs(rem), taylor_remainder_bound(2, distance(x, y), 6.0) * (1 + 1e-12) + 1e-12);
    }
}

TEST(Multinomial, InverseFactorialSum) {
    EXPECT_EQ(multinomial_inverse_sum(0), 1.0);
    EXPECT_NEAR(multinomial_inverse_sum(1), 2.0, 1e-15);
    EXPECT_NEAR(multinomial_inverse_sum(2), 2.0, 1e-15);
    double fact = 1.0;
    for (int m = 1; m <= 20; ++m) {
        fact *= m;
        EXPECT_LE(multinomial_inverse_sum(m), 2.0 + 1e-15) << m;
        EXPECT_NEAR(multinomial_inverse_sum(m), std::pow(2.0, m) / fact, 1e-14 * std::pow(2.0, m) / fact) << m;
    }
}

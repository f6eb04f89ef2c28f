#include "support.hpp"

#include "quadrature_oracle.hpp"
#include "mpsops/errors.hpp"
#include "mpsops/lemmas.hpp"
#include "mpsops/operators.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace mpsops;
using namespace testing_support;

namespace {

TestFunction named(const std::string& name, const VoronoiDecomposition& d) {
    return make_test_function(name, d.domain().omega, d.domain().padded());
}

// Lattice with a site exactly at the centre of Ω and mirror symmetry about it.
std::shared_ptr<const VoronoiDecomposition> symmetric_lattice() {
    const auto domain = DomainSpec::make(kUnit, 0.3);
    GeneratorSpec g;
    g.counts = std::array<int, 2>{15, 15};
    return std::make_shared<const VoronoiDecomposition>(build_voronoi(generate_sites(domain, g), domain));
}

NeighborContext context_at(const std::shared_ptr<const VoronoiDecomposition>& d, std::size_t k, double delta, double h,
                           bool taper, std::optional<double> lambda = std::nullopt) {
    auto w = taper ? WeightFunction::linear_taper(delta, h) : WeightFunction::indicator(delta, h);
    ContextOptions o;
    o.lambda = lambda;
    return NeighborContext::make(d, k, w, o);
}

double taper_profile(double r, double delta, double h) { return r < delta || r > h ? 0.0 : (h - r) / (h - delta); }

} // namespace

TEST(Operators, NamesRoundTrip) {
    for (int fam = 0; fam < 4; ++fam) {
        for (int st = 0; st < 4; ++st) {
            const OperatorKind k{static_cast<Family>(fam), static_cast<Stage>(st)};
            EXPECT_EQ(parse_operator(operator_name(k)), k);
        }
    }
    EXPECT_EQ(operator_name({Family::Gradient, Stage::Tilde}), "grad_tilde");
    EXPECT_EQ(operator_name({Family::Laplacian, Stage::Continuous}), "laplace");
    EXPECT_THROW(parse_operator("curl_tilde"), InvalidArgument);
}

TEST(Operators, ConstantsAreReproducedAndAnnihilatedExactly) {
    for (const double c : {1.0, -3.7, 1e6}) {
        const TestFunction f("c", [c](Point2) { return c; }, [](Point2) { return Vec2{}; }, [](Point2) { return 0.0; },
                             {std::abs(c), 0, 0, 0});
        for (const bool taper : {false, true}) {
            const auto d = lattice(0.05, 0.5, 0.3, 5);
            const auto ctx = central_context(d, 4.0, taper);
            EXPECT_EQ(pi_tilde(ctx, f).scalar(), c);
            EXPECT_EQ(grad_tilde(ctx, f).vector(), (Vec2{0.0, 0.0}));
            EXPECT_EQ(laplace_tilde(ctx, f).scalar(), 0.0);
            EXPECT_EQ(box_tilde(ctx, f).scalar(), 0.0);
            const auto all = evaluate_all(ctx, f);
            // The breve stage pairs Σ V_i w(a_k - a_i) with Σ ∫σ_i w, so it carries their ratio.
            const double breve = c * ctx.discrete_weight_sum() / ctx.cell_weight_sum();
            for (int st = 0; st < 3; ++st) {
                const double want = st == 2 ? breve : c;
                EXPECT_NEAR(all[0][st].scalar(), want, 1e-12 * std::abs(c)) << st;
                EXPECT_EQ(all[1][st].vector(), (Vec2{0.0, 0.0}));
                EXPECT_EQ(all[2][st].scalar(), 0.0);
                EXPECT_EQ(all[3][st].scalar(), 0.0);
            }
        }
    }
}

TEST(Operators, SingleNeighbor) {
    const auto base = lattice(0.1, 0.3);
    const auto k = central_site(*base);
    auto sites = base->sites();
    const auto j = base->nearest_site(base->site(k) + Point2{0.1, 0.0});
    sites[j] = base->site(k) + Point2{0.08, 0.01};
    const auto d = std::make_shared<const VoronoiDecomposition>(build_voronoi(sites, base->domain()));
    const auto f = named("sincos", *d);
    for (const bool taper : {false, true}) {
        const auto ctx = context_at(d, k, 0.005, 0.09, taper);
        ASSERT_EQ(ctx.neighbors().size(), 1u);
        const double fk = f(d->site(k)), fj = f(d->site(j));
        const double dist = distance(d->site(k), d->site(j));
        EXPECT_NEAR(pi_tilde(ctx, f).scalar(), fj, 1e-15);
        EXPECT_NEAR(box_tilde(ctx, f).scalar(), -4 * (fk - fj) / (dist * dist), 1e-12);
        EXPECT_NEAR(laplace_tilde(ctx, f).scalar(), -4 * (fk - fj) / (dist * dist), 1e-12);
        const Vec2 e = (d->site(k) - d->site(j)) / dist;
        const Vec2 g = grad_tilde(ctx, f).vector();
        EXPECT_NEAR(g.x1, 2 * (fk - fj) / dist * e.x1, 1e-13);
        EXPECT_NEAR(g.x2, 2 * (fk - fj) / dist * e.x2, 1e-13);
    }
}

TEST(Operators, DiscreteFormulasMatchDirectArithmetic) {
    // Three neighbors placed by hand, then larger random configurations.
    std::vector<std::shared_ptr<const VoronoiDecomposition>> configs;
    const auto domain = DomainSpec::make(kUnit, 0.3);
    configs.push_back(std::make_shared<const VoronoiDecomposition>(build_voronoi(
        {{0.5, 0.5}, {0.62, 0.5}, {0.44, 0.6}, {0.45, 0.39}, {0.9, 0.9}, {0.1, 0.1}, {0.1, 0.9}, {0.9, 0.1}}, domain)));
    for (std::uint64_t s = 0; s < 5; ++s) {
        configs.push_back(std::make_shared<const VoronoiDecomposition>(
            build_voronoi(random_points(domain.padded(), 200, 40 + s), domain)));
    }
    for (const auto& d : configs) {
        const std::size_t k = d->nearest_site({0.5, 0.5});
        const Point2 a = d->site(k);
        for (const bool taper : {false, true}) {
            const double delta = 0.01, h = d.get() == configs[0].get() ? 0.15 : 0.25;
            const auto ctx = context_at(d, k, delta, h, taper);
            const auto f = named("gaussian", *d);
            const double fk = f(a);
            double num_pi = 0, den = 0, den2 = 0, num_lap = 0, num_box = 0;
            Vec2 num_grad{};
            std::size_t count = 0;
            for (std::size_t i = 0; i < d->size(); ++i) {
                const double r = distance(a, d->site(i));
                if (i == k || r >= h) continue;
                ++count;
                const double w = taper ? taper_profile(r, delta, h) : (r >= delta ? 1.0 : 0.0);
                const double v = cell_annulus_area(d->cell(i), Annulus::make(a, delta, h));
                const double fi = f(d->site(i));
                num_pi += v * fi * w;
                den += v * w;
                den2 += v * r * r * w;
                num_grad += (v * (fk - fi) / r * w) * ((a - d->site(i)) / r);
                num_lap += v * (fk - fi) * w;
                num_box += v * (fk - fi) / (r * r) * w;
            }
            ASSERT_EQ(ctx.neighbors().size(), count);
            const double scale_pi = 1.0, scale_grad = norm(2 * num_grad / den) + 1.0;
            EXPECT_NEAR(pi_tilde(ctx, f).scalar(), num_pi / den, 1e-13 * scale_pi);
            const Vec2 g = grad_tilde(ctx, f).vector();
            EXPECT_NEAR(g.x1, 2 * num_grad.x1 / den, 1e-12 * scale_grad);
            EXPECT_NEAR(g.x2, 2 * num_grad.x2 / den, 1e-12 * scale_grad);
            EXPECT_NEAR(laplace_tilde(ctx, f).scalar(), -4 * num_lap / den2, 1e-12 * std::abs(4 * num_lap / den2) + 1e-12);
            EXPECT_NEAR(box_tilde(ctx, f).scalar(), -4 * num_box / den, 1e-12 * std::abs(4 * num_box / den) + 1e-12);
        }
    }
}

TEST(Operators, MirrorSymmetry) {
    const auto d = symmetric_lattice();
    const auto k = central_site(*d);
    ASSERT_NEAR(d->site(k).x1, 0.5, 1e-12);
    ASSERT_NEAR(d->site(k).x2, 0.5, 1e-12);
    const auto x1 = named("x1", *d);
    for (const bool taper : {false, true}) {
        const auto ctx = central_context(d, 4.0, taper);
        const Vec2 g = grad_tilde(ctx, x1).vector();
        EXPECT_NEAR(g.x2, 0.0, 1e-13 * std::abs(g.x1));
        EXPECT_GT(g.x1, 0.0);
        EXPECT_NEAR(laplace_tilde(ctx, x1).scalar(), 0.0, 1e-10);
        EXPECT_NEAR(box_tilde(ctx, x1).scalar(), 0.0, 1e-10);
    }
}

TEST(Operators, ContinuousStageIsExactOnLowDegreePolynomials) {
    const auto d = lattice(0.05, 0.5, 0.15, 3);
    const auto x1 = named("x1", *d);
    const auto quad = named("quadratic", *d);
    const auto one = named("constant", *d);
    for (const bool taper : {false, true}) {
        const auto ctx = central_context(d, 4.0, taper);
        const auto g = apply_operator({Family::Gradient, Stage::Continuous}, ctx, x1).vector();
        EXPECT_NEAR(g.x1, 1.0, 1e-9);
        EXPECT_NEAR(g.x2, 0.0, 1e-9);
        EXPECT_NEAR(apply_operator({Family::Laplacian, Stage::Continuous}, ctx, quad).scalar(), 4.0, 1e-9);
        EXPECT_NEAR(apply_operator({Family::BoxLaplacian, Stage::Continuous}, ctx, quad).scalar(), 4.0, 1e-9);
        EXPECT_NEAR(apply_operator({Family::Interpolation, Stage::Continuous}, ctx, one).scalar(), 1.0, 1e-12);
        EXPECT_NEAR(apply_operator({Family::Interpolation, Stage::Hat}, ctx, one).scalar(), 1.0, 1e-12);
        // The continuous interpolant of x1 is x1(a_k) by symmetry of the annulus.
        EXPECT_NEAR(apply_operator({Family::Interpolation, Stage::Continuous}, ctx, x1).scalar(), x1(ctx.focal()), 1e-12);
    }
}

TEST(Operators, BreveEqualsTildeForIndicatorAtTheSite) {
    // ∫σ_i w(a_k - ·) = V_i(a_k) and w(a_k - a_i) = 1 for every i in R(a_k, h).
    for (const double jitter : {0.0, 0.3}) {
        const auto d = lattice(0.05, 0.5, jitter, 9);
        const auto ctx = central_context(d, 4.0, false);
        const auto f = named("sincos", *d);
        const auto all = evaluate_all(ctx, f);
        for (const auto& n : ctx.neighbors()) EXPECT_NEAR(n.cell_weight, n.volume * n.weight, 1e-9 * n.volume);
        EXPECT_NEAR(all[0][2].scalar(), all[0][3].scalar(), 1e-9);
        EXPECT_NEAR(difference_norm(all[1][2], all[1][3]), 0.0, 1e-9 * norm(all[1][3].vector()));
    }
}

TEST(Operators, CellStagesMatchGridOracle) {
    const auto domain = DomainSpec::make(kUnit, 0.3);
    // Rotated off the axes: the midpoint grid converges slowly on axis-aligned cell edges.
    const Point2 c{0.5, 0.5};
    const Vec2 u{std::cos(0.37), std::sin(0.37)};
    std::vector<Point2> sites;
    for (const Point2 p : std::vector<Point2>{{0.5, 0.5}, {0.62, 0.5}, {0.44, 0.6}, {0.45, 0.39},
                                              {0.75, 0.7}, {0.3, 0.3}, {0.25, 0.7}, {0.7, 0.25}}) {
        const Vec2 v = p - c;
        sites.push_back(c + Vec2{u.x1 * v.x1 - u.x2 * v.x2, u.x2 * v.x1 + u.x1 * v.x2});
    }
    const auto d = std::make_shared<const VoronoiDecomposition>(build_voronoi(sites, domain));
    const std::size_t k = 0;
    const Point2 a = sites[k];
    const double delta = 0.03, h = 0.15;
    const auto f = named("sincos", *d);
    const double fk = f(a);
    const Rect box{{a.x1 - h, a.x2 - h}, {a.x1 + h, a.x2 + h}};
    for (const bool taper : {false, true}) {
        const auto ctx = context_at(d, k, delta, h, taper);
        ASSERT_EQ(ctx.neighbors().size(), 3u);
        const auto wt = [&](Point2 y) {
            const double r = std::hypot(y.x1 - a.x1, y.x2 - a.x2);
            const double w = taper ? taper_profile(r, delta, h) : (r >= delta && r <= h ? 1.0 : 0.0);
            const auto i = brute_nearest(sites, y);
            const bool member = i != k && distance(sites[i], a) < h;
            return member ? w : 0.0;
        };
        const auto grid = [&](const oracle::Integrand& g) { return oracle::grid_integral(g, box, 1024).value; };
        // Signed sums are compared relative to the integral of their absolute value.
        const auto check = [&](double got, const oracle::Integrand& g, double scale, const char* what) {
            const double mag = grid([&](Point2 y) { return std::abs(g(y)); });
            EXPECT_NEAR(got, scale * grid(g), 2e-4 * std::abs(scale) * mag) << what << (taper ? " taper" : "");
        };
        const double den = grid(wt);
        const double den2 = grid([&](Point2 y) { return norm2(y - a) * wt(y); });
        EXPECT_NEAR(ctx.cell_weight_sum(), den, 2e-4 * den);
        EXPECT_NEAR(ctx.cell_moment_sum(), den2, 2e-4 * den2);

        const auto all = evaluate_all(ctx, f);
        check(all[0][1].scalar(), [&](Point2 y) { return f(y) * wt(y); }, 1 / den, "pi_hat");
        check(all[1][1].vector().x1, [&](Point2 y) { return (fk - f(y)) / norm2(y - a) * (a.x1 - y.x1) * wt(y); },
              2 / den, "grad_hat x1");
        check(all[1][1].vector().x2, [&](Point2 y) { return (fk - f(y)) / norm2(y - a) * (a.x2 - y.x2) * wt(y); },
              2 / den, "grad_hat x2");
        check(all[2][1].scalar(), [&](Point2 y) { return (fk - f(y)) * wt(y); }, -4 / den2, "laplace_hat");
        check(all[3][1].scalar(), [&](Point2 y) { return (fk - f(y)) / norm2(y - a) * wt(y); }, -4 / den, "box_hat");

        // Breve: f and distances frozen at the sites of the cell that owns y.
        const auto frozen = [&](Point2 y, int which) {
            const auto i = brute_nearest(sites, y);
            if (i == k) return 0.0;
            const double di = distance(a, sites[i]);
            const double diff = fk - f(sites[i]);
            switch (which) {
            case 0: return diff / di * (a.x1 - sites[i].x1) / di * wt(y);
            case 1: return diff / di * (a.x2 - sites[i].x2) / di * wt(y);
            case 2: return diff * wt(y);
            default: return diff / (di * di) * wt(y);
            }
        };
        for (const auto& n : ctx.neighbors()) {
            const double cw = grid([&](Point2 y) { return brute_nearest(sites, y) == n.index ? wt(y) : 0.0; });
            EXPECT_NEAR(n.cell_weight, cw, 2e-4 * den);
        }
        check(all[1][2].vector().x1, [&](Point2 y) { return frozen(y, 0); }, 2 / den, "grad_breve x1");
        check(all[1][2].vector().x2, [&](Point2 y) { return frozen(y, 1); }, 2 / den, "grad_breve x2");
        check(all[2][2].scalar(), [&](Point2 y) { return frozen(y, 2); }, -4 / den2, "laplace_breve");
        check(all[3][2].scalar(), [&](Point2 y) { return frozen(y, 3); }, -4 / den, "box_breve");
    }
}

TEST(Operators, ChainsTelescope) {
    const auto d = lattice(0.05, 0.5, 0.15, 4);
    for (const bool taper : {false, true}) {
        const auto ctx = central_context(d, 4.0, taper);
        for (const auto& name : test_function_names()) {
            const auto f = named(name, *d);
            const auto all = evaluate_all(ctx, f);
            for (int fam = 0; fam < 4; ++fam) {
                const auto exact = exact_value(static_cast<Family>(fam), ctx, f);
                EXPECT_LE(telescoping_residual(exact, all[static_cast<std::size_t>(fam)]), 1e-10) << name << " " << fam;
            }
        }
    }
}

TEST(Operators, APrioriBounds) {
    for (const double jitter : {0.0, 0.15, 0.3}) {
        const auto d = lattice(0.05, 0.5, jitter, 8);
        for (const bool taper : {false, true}) {
            const auto ctx = central_context(d, 4.0, taper);
            for (const auto& name : test_function_names()) {
                const auto f = named(name, *d);
                const double c0 = f.seminorm(0);
                EXPECT_LE(std::abs(pi_tilde(ctx, f).scalar()), a_priori_bound(Family::Interpolation, ctx.delta(), c0));
                EXPECT_LE(norm(grad_tilde(ctx, f).vector()), a_priori_bound(Family::Gradient, ctx.delta(), c0));
                EXPECT_LE(std::abs(laplace_tilde(ctx, f).scalar()), a_priori_bound(Family::Laplacian, ctx.delta(), c0));
                EXPECT_LE(std::abs(box_tilde(ctx, f).scalar()), a_priori_bound(Family::BoxLaplacian, ctx.delta(), c0));
            }
        }
    }
    EXPECT_DOUBLE_EQ(a_priori_bound(Family::Gradient, 0.5, 2.0), 16.0);
    EXPECT_DOUBLE_EQ(a_priori_bound(Family::BoxLaplacian, 0.5, 2.0), 64.0);
}

TEST(Operators, Linearity) {
    const auto d = lattice(0.05, 0.5, 0.3, 2);
    const auto ctx = central_context(d, 4.0, true);
    const auto f = named("sincos", *d);
    const auto g = named("gaussian", *d);
    const double a = 0.7, b = -2.3;
    const auto h = TestFunction::combine(a, f, b, g);
    const auto af = evaluate_all(ctx, f), ag = evaluate_all(ctx, g), ah = evaluate_all(ctx, h);
    for (int fam = 0; fam < 4; ++fam) {
        for (int st = 0; st < 4; ++st) {
            const auto& rf = af[fam][st];
            const auto& rg = ag[fam][st];
            const auto& rh = ah[fam][st];
            if (rh.is_vector()) {
                const Vec2 expect = a * rf.vector() + b * rg.vector();
                EXPECT_NEAR(norm(rh.vector() - expect), 0.0, 1e-10 * (norm(expect) + 1.0));
            } else {
                const double expect = a * rf.scalar() + b * rg.scalar();
                EXPECT_NEAR(rh.scalar(), expect, 1e-10 * (std::abs(expect) + 1.0));
            }
        }
    }
}

TEST(Operators, EmptyInnerNeighborSetIsRejected) {
    const auto d = lattice(0.05, 0.5);
    const auto k = central_site(*d);
    const double h = 4 * d->r_sigma();
    // λh below the nearest-neighbor distance 0.05.
    EXPECT_THROW(context_at(d, k, 0.01, h, false, 0.04 / h), AssumptionViolation);
    EXPECT_NO_THROW(context_at(d, k, 0.01, h, false, 0.5));
    EXPECT_THROW(context_at(d, k, 0.01, h, false, 1.0), InvalidArgument);
}

TEST(Lemmas, TrivialCases) {
    const auto d = lattice(0.05, 0.5, 0.15, 6);
    const auto ctx = central_context(d, 4.0, true);
    const auto one = named("constant", *d);
    for (const auto id : all_lemmas()) {
        const auto g = lemma_gap(id, ctx, one);
        EXPECT_TRUE(g.pass) << lemma_label(id);
        if (id.family != Family::Interpolation) {
            EXPECT_EQ(g.lhs, 0.0) << lemma_label(id);
        } else if (id.step < 2) {
            EXPECT_LE(g.lhs, 1e-12) << lemma_label(id);
        } else {
            // Π̆ keeps V_i w(a_k - a_i) over Σ ∫σ w, so a tapered weight moves it off the constant.
            EXPECT_GT(g.lhs, 0.0) << lemma_label(id);
        }
    }
    const auto x1 = named("x1", *d);
    const auto g41 = lemma_gap(parse_lemma("4.1"), ctx, x1);
    EXPECT_NEAR(g41.lhs, 0.0, 1e-9);
    EXPECT_EQ(g41.rhs_bound, 0.0);
    EXPECT_TRUE(g41.pass);
    const auto quad = named("quadratic", *d);
    for (const char* label : {"5.1", "6.1"}) {
        const auto g = lemma_gap(parse_lemma(label), ctx, quad);
        EXPECT_NEAR(g.lhs, 0.0, 1e-9) << label;
        EXPECT_TRUE(g.pass) << label;
    }
    for (const auto id : all_lemmas()) EXPECT_EQ(parse_lemma(lemma_label(id)), id);
}

TEST(TestFunctions, SeminormsBoundGridDerivatives) {
    const Rect region{{-0.3, -0.3}, {1.3, 1.3}};
    for (const auto& name : test_function_names()) {
        const auto f = make_test_function(name, kUnit, region);
        double c0 = 0, c1 = 0;
        for (int i = 0; i <= 256; ++i) {
            for (int j = 0; j <= 256; ++j) {
                const Point2 p{region.min.x1 + region.width() * i / 256, region.min.x2 + region.height() * j / 256};
                c0 = std::max(c0, std::abs(f(p)));
                const Vec2 g = f.gradient(p);
                c1 = std::max({c1, std::abs(g.x1), std::abs(g.x2)});
            }
        }
        EXPECT_LE(c0, f.seminorm(0) * 1.01) << name;
        EXPECT_LE(c1, f.seminorm(1) * 1.01) << name;
    }
    // Analytic derivatives against central differences.
    const auto g = make_test_function("gaussian", kUnit, region);
    const Point2 p{0.3, 0.7};
    const double e = 1e-5;
    EXPECT_NEAR(g.gradient(p).x1, (g(p + Vec2{e, 0}) - g(p - Vec2{e, 0})) / (2 * e), 1e-8);
    const double lap = (g(p + Vec2{e, 0}) + g(p - Vec2{e, 0}) + g(p + Vec2{0, e}) + g(p - Vec2{0, e}) - 4 * g(p)) / (e * e);
    EXPECT_NEAR(g.laplacian(p), lap, 1e-4);
    EXPECT_THROW(make_test_function("nope", kUnit, region), InvalidArgument);
}

#include "mpsops/context.hpp"

#include "mpsops/errors.hpp"

#include <sstream>

namespace mpsops {

NeighborContext NeighborContext::make(std::shared_ptr<const VoronoiDecomposition> decomp, std::size_t k,
                                      WeightFunction w, ContextOptions options) {
    if (!decomp) throw InvalidArgument("context needs a decomposition");
    if (k >= decomp->size()) throw InvalidArgument("focal index out of range");
    if (options.lambda && !(*options.lambda > 0.0 && *options.lambda < 1.0)) {
        throw InvalidArgument("λ must lie in (0, 1)");
    }
    NeighborContext ctx;
    ctx.decomp_ = std::move(decomp);
    ctx.k_ = k;
    ctx.weight_ = std::move(w);
    ctx.lambda_ = options.lambda;

    const auto& d = *ctx.decomp_;
    const Point2 a = d.site(k);
    const Annulus ann = Annulus::make(a, ctx.delta(), ctx.h());
    for (const auto i : neighbor_sets(d, k, a, ctx.h()).open) {
        NeighborTerm t;
        t.index = i;
        t.site = d.site(i);
        t.distance = distance(a, t.site);
        t.volume = cell_annulus_area(d.cell(i), ann);
        t.weight = ctx.weight_(a - t.site);
        t.cell_weight = cell_l1_norm(ctx.weight_, 0, d.cell(i), a);
        t.cell_moment2 = cell_l1_norm(ctx.weight_, 2, d.cell(i), a);
        ctx.sum_vw_ += t.volume * t.weight;
        ctx.sum_vd2w_ += t.volume * t.distance * t.distance * t.weight;
        ctx.sum_cw_ += t.cell_weight;
        ctx.sum_cm2_ += t.cell_moment2;
        ctx.neighbors_.push_back(t);
    }

    const auto samples = positivity_samples(a, ctx.delta(), std::max<std::size_t>(1, options.positivity_samples));
    ctx.positivity_ = check_positivity(ctx.weight_, d, k, samples);

    if (ctx.lambda_ && ctx.neighbors_within(*ctx.lambda_ * ctx.h()).empty()) {
        std::ostringstream os;
        os << "R(a_k, λh) is empty for λ=" << *ctx.lambda_ << ", h=" << ctx.h();
        throw AssumptionViolation(os.str());
    }
    return ctx;
}

double NeighborContext::require_lambda(const char* what) const {
    if (!lambda_) throw InvalidArgument(std::string(what) + " requires λ");
    return *lambda_;
}

std::vector<const NeighborTerm*> NeighborContext::neighbors_within(double radius) const {
    std::vector<const NeighborTerm*> out;
    for (const auto& n : neighbors_) {
        if (n.distance < radius) out.push_back(&n);
    }
    return out;
}

} // namespace mpsops

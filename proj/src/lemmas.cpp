#include "mpsops/lemmas.hpp"

#include "mpsops/errors.hpp"

namespace mpsops {

namespace {

const OperatorResult& chain_at(int i, const OperatorResult& exact, const FamilyChain& chain) {
    return i == 0 ? exact : chain[static_cast<std::size_t>(i - 1)];
}

} // namespace

const std::array<LemmaId, 16>& all_lemmas() {
    static const std::array<LemmaId, 16> ids = [] {
        std::array<LemmaId, 16> out{};
        std::size_t n = 0;
        for (int f = 0; f < 4; ++f) {
            for (int s = 0; s < 4; ++s) out[n++] = LemmaId{static_cast<Family>(f), s};
        }
        return out;
    }();
    return ids;
}

std::string lemma_label(LemmaId id) {
    if (id.step < 0 || id.step > 3) throw InvalidArgument("lemma step must be 0..3");
    const int section = 3 + static_cast<int>(id.family);
    std::string out = std::to_string(section) + ".";
    if (id.family == Family::Interpolation) return out + "1" + static_cast<char>('a' + id.step);
    if (id.step == 0) return out + "1";
    return out + "2" + static_cast<char>('a' + id.step - 1);
}

LemmaId parse_lemma(const std::string& label) {
    for (const auto id : all_lemmas()) {
        if (lemma_label(id) == label) return id;
    }
    throw InvalidArgument("unknown lemma '" + label + "'");
}

std::array<double, 4> lemma_coefficients(LemmaId id, const BoundInputs& in, const ConstantSet& c) {
    const double h = in.h;
    const double r = in.r_sigma;
    const auto lam = [&] {
        if (!in.lambda) throw InvalidArgument("lemma " + lemma_label(id) + " requires λ");
        return *in.lambda;
    };
    switch (id.family) {
    case Family::Interpolation:
        switch (id.step) {
        case 0: return {0.0, h, 0.0, 0.0};
        case 1: return {2.0 * c(1), 0.0, 0.0, 0.0};
        case 2: return {c(2), r, 0.0, 0.0};
        case 3: return {c(2), 0.0, 0.0, 0.0};
        }
        break;
    case Family::Gradient:
        switch (id.step) {
        case 0: return {0.0, 0.0, 4.0 * h, 0.0};
        case 1: return {0.0, 4.0 * c(1), 0.0, 0.0};
        case 2: return {0.0, 8.0 * (r / (lam() * h) + c(3)), 0.0, 0.0};
        case 3: return {0.0, 4.0 * c(2), 0.0, 0.0};
        }
        break;
    case Family::Laplacian:
        switch (id.step) {
        case 0: return {0.0, 0.0, 0.0, 24.0 * h};
        case 1: return {0.0, 4.0 * c(4), 0.0, 0.0};
        case 2: lam(); return {0.0, 4.0 * c(5) + 4.0 * c(6), 0.0, 0.0};
        case 3: return {0.0, 4.0 * c(7) + 4.0 * c(8), 0.0, 0.0};
        }
        break;
    case Family::BoxLaplacian:
        switch (id.step) {
        case 0: return {0.0, 0.0, 0.0, 24.0 * h};
        case 1: return {0.0, 4.0 * c(9), 0.0, 0.0};
        case 2: lam(); return {0.0, 12.0 * (c(10) + c(11)), 0.0, 0.0};
        case 3: lam(); return {0.0, 4.0 * c(12), 0.0, 0.0};
        }
        break;
    }
    throw InvalidArgument("lemma step must be 0..3");
}

GapReport lemma_gap(LemmaId id, const OperatorResult& exact, const FamilyChain& chain, const BoundInputs& in,
                    const ConstantSet& c, const TestFunction& f) {
    if (chain[0].kind.family != id.family) throw InvalidArgument("chain belongs to another family");
    GapReport g;
    g.id = id;
    const auto& a = chain_at(id.step, exact, chain);
    const auto& b = chain_at(id.step + 1, exact, chain);
    g.lhs = difference_norm(a, b);
    g.uncertainty = a.uncertainty + b.uncertainty;
    const auto k = lemma_coefficients(id, in, c);
    for (std::size_t j = 0; j < 4; ++j) {
        if (k[j] != 0.0) g.rhs_bound += k[j] * f.seminorm(static_cast<int>(j));
    }
    g.pass = g.lhs <= g.rhs_bound * kBoundSlack + g.uncertainty;
    return g;
}

GapReport lemma_gap(LemmaId id, const NeighborContext& ctx, const TestFunction& f) {
    const auto chain = evaluate_family(id.family, ctx, f);
    const auto in = geometric_inputs(ctx);
    return lemma_gap(id, exact_value(id.family, ctx, f), chain, in, compute_constants(in), f);
}

double telescoping_residual(const OperatorResult& exact, const FamilyChain& chain) {
    if (exact.is_vector()) {
        Vec2 sum;
        for (int i = 0; i < 4; ++i) sum += chain_at(i, exact, chain).vector() - chain_at(i + 1, exact, chain).vector();
        return norm(sum - (exact.vector() - chain[3].vector()));
    }
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) sum += chain_at(i, exact, chain).scalar() - chain_at(i + 1, exact, chain).scalar();
    return std::abs(sum - (exact.scalar() - chain[3].scalar()));
}

} // namespace mpsops

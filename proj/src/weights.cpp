#include "mpsops/weights.hpp"

#include "mpsops/errors.hpp"
#include "mpsops/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace mpsops {

namespace {

constexpr double kLipschitzInflation = 1.05;
constexpr int kSlopeGrid = 10000;

void require_support(double delta, double h) {
    if (!(delta > 0.0) || !(h > delta) || !std::isfinite(h)) {
        std::ostringstream os;
        os << "weight support requires 0 < delta < h, got delta=" << delta << " h=" << h;
        throw InvalidArgument(os.str());
    }
}

// ∫_a^b r^m dr
double power_integral(int m, double a, double b) {
    if (m == -1) return std::log(b / a);
    const double e = m + 1.0;
    return (std::pow(b, e) - std::pow(a, e)) / e;
}

[[noreturn]] void throw_negative(double r, double value) {
    std::ostringstream os;
    os << "weight profile is negative at r=" << r << " (value " << value << ")";
    throw InvalidArgument(os.str());
}

} // namespace

WeightFunction WeightFunction::indicator(double delta, double h) {
    require_support(delta, h);
    WeightFunction w;
    w.kind_ = WeightKind::Indicator;
    w.name_ = "indicator";
    w.delta_ = delta;
    w.h_ = h;
    w.lipschitz_ = 0.0;
    return w;
}

WeightFunction WeightFunction::linear_taper(double delta, double h) {
    require_support(delta, h);
    auto w = radial_table({delta, h}, {1.0, 0.0}, delta, h, 1.0 / (h - delta));
    w.name_ = "linear_taper";
    return w;
}

WeightFunction WeightFunction::radial_table(std::vector<double> r, std::vector<double> values, double delta,
                                            double h, std::optional<double> lipschitz) {
    require_support(delta, h);
    if (r.size() != values.size() || r.size() < 2) {
        throw InvalidArgument("radial table needs matching r and w arrays with at least two entries");
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!std::isfinite(r[i]) || !std::isfinite(values[i])) throw InvalidArgument("radial table has non-finite entries");
        if (i > 0 && !(r[i] > r[i - 1])) throw InvalidArgument("radial table radii must be strictly increasing");
    }
    if (r.front() > delta || r.back() < h) {
        throw InvalidArgument("radial table must cover [delta, h]");
    }
    WeightFunction w;
    w.kind_ = WeightKind::PiecewiseLinear;
    w.name_ = "radial_table";
    w.delta_ = delta;
    w.h_ = h;
    w.table_r_ = std::move(r);
    w.table_w_ = std::move(values);
    // Only the part of the table on [δ, h] matters; check its values including the endpoints.
    for (std::size_t i = 0; i < w.table_r_.size(); ++i) {
        if (w.table_r_[i] >= delta && w.table_r_[i] <= h && w.table_w_[i] < 0.0) throw_negative(w.table_r_[i], w.table_w_[i]);
        if (w.table_r_[i] > delta && w.table_r_[i] < h) w.breaks_.push_back(w.table_r_[i]);
    }
    for (double edge : {delta, h}) {
        const double v = w.profile(edge);
        if (v < 0.0) throw_negative(edge, v);
    }
    if (lipschitz) {
        if (!(*lipschitz >= 0.0)) throw InvalidArgument("Lipschitz constant must be nonnegative");
        w.lipschitz_ = *lipschitz;
    } else {
        double slope = 0.0;
        for (std::size_t i = 0; i + 1 < w.table_r_.size(); ++i) {
            if (w.table_r_[i + 1] <= delta || w.table_r_[i] >= h) continue;
            slope = std::max(slope, std::abs(w.table_w_[i + 1] - w.table_w_[i]) / (w.table_r_[i + 1] - w.table_r_[i]));
        }
        w.lipschitz_ = kLipschitzInflation * slope;
    }
    return w;
}

WeightFunction WeightFunction::closed_form(std::function<double(double)> profile, double delta, double h,
                                           std::optional<double> lipschitz, std::string name) {
    require_support(delta, h);
    if (!profile) throw InvalidArgument("closed-form weight needs a profile");
    double slope = 0.0;
    double prev = 0.0;
    for (int i = 0; i <= kSlopeGrid; ++i) {
        const double r = delta + (h - delta) * i / kSlopeGrid;
        const double v = profile(r);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "weight profile is not finite at r=" << r;
            throw InvalidArgument(os.str());
        }
        if (v < 0.0) throw_negative(r, v);
        if (i > 0) slope = std::max(slope, std::abs(v - prev) / ((h - delta) / kSlopeGrid));
        prev = v;
    }
    WeightFunction w;
    w.kind_ = WeightKind::ClosedForm;
    w.name_ = std::move(name);
    w.delta_ = delta;
    w.h_ = h;
    if (lipschitz) {
        if (!(*lipschitz >= 0.0)) throw InvalidArgument("Lipschitz constant must be nonnegative");
        w.lipschitz_ = *lipschitz;
    } else {
        w.lipschitz_ = kLipschitzInflation * slope;
    }
    w.closed_ = std::make_shared<const std::function<double(double)>>(std::move(profile));
    return w;
}

double WeightFunction::profile(double r) const {
    if (!(r >= delta_ && r <= h_)) return 0.0;
    switch (kind_) {
    case WeightKind::Indicator:
        return 1.0;
    case WeightKind::PiecewiseLinear: {
        const auto it = std::upper_bound(table_r_.begin(), table_r_.end(), r);
        if (it == table_r_.end()) return table_w_.back();
        const std::size_t j = static_cast<std::size_t>(it - table_r_.begin());
        if (j == 0) return table_w_.front();
        const double t = (r - table_r_[j - 1]) / (table_r_[j] - table_r_[j - 1]);
        return table_w_[j - 1] + t * (table_w_[j] - table_w_[j - 1]);
    }
    case WeightKind::ClosedForm:
        return (*closed_)(r);
    }
    return 0.0;
}

double WeightFunction::radial_integral(int n, double a, double b) const {
    a = std::max(a, delta_);
    b = std::min(b, h_);
    if (!(b > a)) return 0.0;
    switch (kind_) {
    case WeightKind::Indicator:
        return power_integral(n + 1, a, b);
    case WeightKind::PiecewiseLinear: {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < table_r_.size(); ++i) {
            const double p = std::max(a, table_r_[i]);
            const double q = std::min(b, table_r_[i + 1]);
            if (!(q > p)) continue;
            const double beta = (table_w_[i + 1] - table_w_[i]) / (table_r_[i + 1] - table_r_[i]);
            const double alpha = table_w_[i] - beta * table_r_[i];
            total += alpha * power_integral(n + 1, p, q) + beta * power_integral(n + 2, p, q);
        }
        return total;
    }
    case WeightKind::ClosedForm: {
        const auto& f = *closed_;
        return integrate_adaptive([&](double r) { return std::pow(r, n + 1) * f(r); }, a, b, 1e-12);
    }
    }
    return 0.0;
}

double radial_moment(const WeightFunction& w, int n) {
    return 2.0 * std::numbers::pi * w.radial_integral(n, w.delta(), w.h());
}

double cell_l1_norm(const WeightFunction& w, int n, const ConvexPolygon& cell, Point2 center, double p) {
    const double outer = std::min(p, w.h());
    if (!(outer > w.delta())) return 0.0;
    const auto level = [&](int subdivisions) {
        double total = 0.0;
        sweep_polygon(cell, center, w.delta(), outer, w.breakpoints(), AngularRule{12, subdivisions},
                      [&](const Ray& ray) { total += ray.weight * w.radial_integral(n, ray.r_lo, ray.r_hi); });
        return total;
    };
    double coarse = level(1);
    for (int sub = 2; sub <= 32; sub *= 2) {
        const double fine = level(sub);
        if (std::abs(fine - coarse) <= 1e-10 * std::abs(fine) + 1e-300) return fine;
        coarse = fine;
    }
    throw QuadratureError("cell-restricted weight norm did not converge under angular refinement");
}

NormResult annular_l1_norm(const WeightFunction& w, int n, Point2 center, double p, const Exclusion& excluded) {
    NormResult out;
    if (p > w.h()) {
        out.clamped = true;
        p = w.h();
    }
    const double full = 2.0 * std::numbers::pi * w.radial_integral(n, w.delta(), p);
    if (const auto* ball = std::get_if<BallExclusion>(&excluded)) {
        if (!(ball->radius < p) && !out.clamped) throw InvalidArgument("annular norm requires q < p");
        out.value = 2.0 * std::numbers::pi * w.radial_integral(n, ball->radius, p);
        return out;
    }
    const auto& cell = std::get<CellExclusion>(excluded);
    if (cell.cell == nullptr) throw InvalidArgument("cell exclusion without a polygon");
    out.value = std::max(full - cell_l1_norm(w, n, *cell.cell, center, p), 0.0);
    return out;
}

std::vector<Point2> positivity_samples(Point2 center, double delta, std::size_t count) {
    const auto halton = [](std::size_t i, std::size_t base) {
        double f = 1.0;
        double r = 0.0;
        while (i > 0) {
            f /= static_cast<double>(base);
            r += f * static_cast<double>(i % base);
            i /= base;
        }
        return r;
    };
    std::vector<Point2> out;
    out.reserve(count);
    if (count == 0) return out;
    out.push_back(center);
    for (std::size_t i = 1; i < count; ++i) {
        // Strictly inside the open ball.
        const double rad = delta * std::sqrt(halton(i, 2)) * (1.0 - 1e-9);
        const double ang = 2.0 * std::numbers::pi * halton(i, 3);
        out.push_back(center + rad * Vec2{std::cos(ang), std::sin(ang)});
    }
    return out;
}

PositivityConstant check_positivity(const WeightFunction& w, const VoronoiDecomposition& decomp, std::size_t k,
                                    std::span<const Point2> samples) {
    if (samples.empty()) throw InvalidArgument("positivity check needs at least one sample");
    PositivityConstant out;
    out.c0 = std::numeric_limits<double>::infinity();
    out.min_integral_sum = std::numeric_limits<double>::infinity();
    out.min_discrete_sum = std::numeric_limits<double>::infinity();
    for (const Point2 x : samples) {
        const auto sets = neighbor_sets(decomp, k, x, w.h());
        double integral_sum = 0.0;
        double discrete_sum = 0.0;
        const Annulus ann = Annulus::make(x, w.delta(), w.h());
        for (const auto i : sets.open) {
            integral_sum += cell_l1_norm(w, 0, decomp.cell(i), x);
            discrete_sum += cell_annulus_area(decomp.cell(i), ann) * w(x - decomp.site(i));
        }
        out.min_integral_sum = std::min(out.min_integral_sum, integral_sum);
        out.min_discrete_sum = std::min(out.min_discrete_sum, discrete_sum);
        const double m = std::min(integral_sum, discrete_sum);
        if (m < out.c0) {
            out.c0 = m;
            out.witness = x;
        }
    }
    out.samples = samples.size();
    if (!(out.c0 > 0.0)) {
        std::ostringstream os;
        os << "positivity sums vanish at x=(" << out.witness.x1 << ", " << out.witness.x2
           << "): integral sum " << out.min_integral_sum << ", discrete sum " << out.min_discrete_sum;
        throw AssumptionViolation(os.str());
    }
    return out;
}

} // namespace mpsops

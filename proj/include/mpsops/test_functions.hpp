#pragma once

#include "mpsops/geometry.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace mpsops {

/// Smooth scalar field with analytic derivatives and upper bounds of its
/// C^j seminorms |f|_{C^j} = max_{|α|=j} max |D^α f| over a closed rectangle.
class TestFunction {
public:
    using Scalar = std::function<double(Point2)>;
    using Vector = std::function<Vec2(Point2)>;

    TestFunction(std::string name, Scalar value, Vector gradient, Scalar laplacian, std::array<double, 4> seminorms);

    const std::string& name() const { return name_; }
    double operator()(Point2 p) const { return value_(p); }
    Vec2 gradient(Point2 p) const { return gradient_(p); }
    double laplacian(Point2 p) const { return laplacian_(p); }
    /// Upper bound of |f|_{C^j}, j = 0..3.
    double seminorm(int j) const { return seminorms_.at(static_cast<std::size_t>(j)); }
    const std::array<double, 4>& seminorms() const { return seminorms_; }

    /// a f + b g with seminorm bounds |a||f| + |b||g|.
    static TestFunction combine(double a, const TestFunction& f, double b, const TestFunction& g);

private:
    std::string name_;
    Scalar value_;
    Vector gradient_;
    Scalar laplacian_;
    std::array<double, 4> seminorms_;
};

/// Names accepted by make_test_function.
const std::vector<std::string>& test_function_names();

/// Built-in suite; seminorms are bounds over `region` (normally the closed padded domain).
///   constant   f = 1
///   x1         f = x1
///   quadratic  f = x1² + x2²
///   sincos     f = sin(x1) cos(x2)
///   gaussian   f = exp(-|x - c|² / (2 s²)), c = centroid of `omega`, s = min side of `omega` / 4
TestFunction make_test_function(const std::string& name, const Rect& omega, const Rect& region);

} // namespace mpsops

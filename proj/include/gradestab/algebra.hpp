#pragma once

/*
 * Weighted polynomial algebras k[x_1,...,x_n] with deg(x_i) = w_i for
 * positive rational weights w_i.
 *
 * dim(S_{<=x}) is the number of lattice points (k_1,...,k_n) >= 0 with
 * sum w_i k_i <= x. The count grows like a_top/n! x^n, with subleading
 * coefficient a_subtop; both have closed forms in the weights. For finite T,
 * cesaro_residual integrates the difference between the step function and
 * its two leading terms exactly, which is the averaged quantity that tends
 * to zero as T grows.
 */

#include "rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gradestab {

struct WeightedAlgebra {
    std::vector<Rat> weights;  // deg(x_i) = weights[i], every entry > 0

    int dim() const { return static_cast<int>(weights.size()); }
    bool operator==(const WeightedAlgebra&) const = default;
};

struct RRCoefficients {
    Rat a_top;     // 1/(w_1 ... w_n); the volume of the algebra
    Rat a_subtop;  // (w_1 + ... + w_n)/(2 w_1 ... w_n)
    bool operator==(const RRCoefficients&) const = default;
};

inline WeightedAlgebra make_algebra(std::vector<Rat> weights) {
    if (weights.empty())
        throw validation_error("weights list must be nonempty");
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (weights[i] <= 0)
            throw validation_error("weight must be positive (index " + std::to_string(i + 1) +
                                   ")");
    return WeightedAlgebra{std::move(weights)};
}

inline Rat weight_product(const WeightedAlgebra& S) {
    Rat p = 1;
    for (const Rat& w : S.weights)
        p *= w;
    return p;
}

inline Rat weight_sum(const WeightedAlgebra& S) {
    Rat s = 0;
    for (const Rat& w : S.weights)
        s += w;
    return s;
}

inline RRCoefficients coefficients(const WeightedAlgebra& S) {
    Rat product = weight_product(S);
    return RRCoefficients{Rat(1) / product, weight_sum(S) / (2 * product)};
}

namespace detail {

inline Int factorial(int n) {
    Int f = 1;
    for (int k = 2; k <= n; ++k)
        f *= k;
    return f;
}

inline Rat rat_pow(const Rat& base, int exponent) {
    Rat r = 1;
    for (int k = 0; k < exponent; ++k)
        r *= base;
    return r;
}

// Counting runs on integer-scaled weights g_i = w_i * L, where L is the lcm
// of the weight denominators: sum w_i k_i <= x holds iff sum g_i k_i <=
// floor(x*L), so every count depends on x only through that integer budget.
struct WeightScaling {
    std::vector<Int> g;
    Int lcm_den = 1;

    explicit WeightScaling(const std::vector<Rat>& weights) {
        for (const Rat& w : weights)
            lcm_den = lcm(lcm_den, Int(denominator(w)));
        g.reserve(weights.size());
        for (const Rat& w : weights)
            g.push_back(numerator(w) * (lcm_den / denominator(w)));
    }

    Int budget(const Rat& x) const { return rat_floor(x * Rat(lcm_den)); }
    Rat value(const Int& b) const { return Rat(b, lcm_den); }
};

// Counting recursion over the last variable,
//   dim_m(b) = sum_{k=0}^{floor(b/g_m)} dim_{m-1}(b - k g_m),
// with the one-variable case in closed form. One memo per context; contexts
// are never shared, so concurrent callers stay independent.
class CountingContext {
public:
    explicit CountingContext(const WeightedAlgebra& S)
        : scale_(S.weights), memo_(S.weights.size() + 1) {}

    const WeightScaling& scaling() const { return scale_; }

    Int count(const Rat& x) { return count_scaled(scale_.g.size(), scale_.budget(x)); }

    Int count_scaled(std::size_t vars, const Int& budget) {
        if (budget < 0)
            return 0;
        if (vars == 1)
            return budget / scale_.g[0] + 1;
        auto& memo = memo_[vars];
        if (auto it = memo.find(budget); it != memo.end())
            return it->second;
        const Int& g = scale_.g[vars - 1];
        Int total = 0;
        for (Int b = budget; b >= 0; b -= g)
            total += count_scaled(vars - 1, b);
        memo.emplace(budget, total);
        return total;
    }

private:
    WeightScaling scale_;
    std::vector<std::map<Int, Int>> memo_;
};

// Ascending list of the scaled grading values attainable up to the budget.
inline std::vector<Int> attainable_scaled(const WeightScaling& scale, const Int& budget) {
    if (budget > (Int(1) << 26))
        throw validation_error("horizon too large for exact integration");
    const std::size_t limit = budget.convert_to<std::size_t>();
    std::vector<char> reachable(limit + 1, 0);
    reachable[0] = 1;
    for (const Int& g : scale.g) {
        if (g > budget)
            continue;
        const std::size_t step = g.convert_to<std::size_t>();
        for (std::size_t b = step; b <= limit; ++b)
            reachable[b] = static_cast<char>(reachable[b] | reachable[b - step]);
    }
    std::vector<Int> points;
    for (std::size_t b = 0; b <= limit; ++b)
        if (reachable[b])
            points.push_back(Int(b));
    return points;
}

}  // namespace detail

/// Exact cardinality of {(k_1,...,k_n) >= 0 : sum w_i k_i <= x}; 0 for x < 0.
inline Int dim_leq(const WeightedAlgebra& S, const Rat& x) {
    detail::CountingContext ctx(S);
    return ctx.count(x);
}

/// (1/T^n) * integral over [0,T] of
///   dim(S_{<=x}) - a_top x^n/n! - a_subtop x^{n-1}/(n-1)!,
/// computed exactly: the step part is summed over the attainable grading
/// values below T and the polynomial part is integrated in closed form.
inline Rat cesaro_residual(const WeightedAlgebra& S, const Rat& T) {
    if (T <= 0)
        throw validation_error("T must be positive");
    const int n = S.dim();
    detail::CountingContext ctx(S);
    const detail::WeightScaling& scale = ctx.scaling();
    const Int budget = scale.budget(T);
    const std::vector<Int> points = detail::attainable_scaled(scale, budget);

    Rat step_integral = 0;
    for (std::size_t j = 0; j < points.size(); ++j) {
        Rat begin = scale.value(points[j]);
        Rat end = (j + 1 < points.size()) ? scale.value(points[j + 1]) : T;
        step_integral += Rat(ctx.count_scaled(static_cast<std::size_t>(n), points[j])) *
                         (end - begin);
    }

    const RRCoefficients c = coefficients(S);
    Rat poly_integral = c.a_top * detail::rat_pow(T, n + 1) / Rat(detail::factorial(n + 1)) +
                        c.a_subtop * detail::rat_pow(T, n) / Rat(detail::factorial(n));
    return (step_integral - poly_integral) / detail::rat_pow(T, n);
}

}  // namespace gradestab

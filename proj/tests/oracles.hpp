#pragma once

// Independent oracles for the exact computations under test. These stay on
// deliberately different algorithmic routes from the library: plain box
// enumeration instead of the memoized recursion, and degree recovery by
// Cesaro averaging of the module counting function instead of the closed
// degree formula.

#include "gradestab/module.hpp"

#include <algorithm>
#include <vector>

namespace gradestab::testing {

// Brute-force lattice count over the integer box 0 <= k_i <= ceil(x/w_i),
// with weights scaled to a common denominator so the comparisons are integer.
inline Int brute_force_count(const WeightedAlgebra& S, const Rat& x) {
    if (x < 0)
        return 0;
    Int lcm_den = 1;
    for (const Rat& w : S.weights)
        lcm_den = lcm(lcm_den, Int(denominator(w)));
    std::vector<long long> g;
    for (const Rat& w : S.weights)
        g.push_back((numerator(w) * (lcm_den / denominator(w))).convert_to<long long>());
    const long long budget = rat_floor(x * Rat(lcm_den)).convert_to<long long>();

    Int total = 0;
    const std::size_t n = g.size();
    const auto walk = [&](const auto& self, std::size_t level, long long used) -> void {
        if (level == n) {
            ++total;
            return;
        }
        for (long long k = 0; used + k * g[level] <= budget; ++k)
            self(self, level + 1, used + k * g[level]);
    };
    walk(walk, 0, 0);
    return total;
}

// Recovers deg(M) from the counting function of M alone: exact integration of
// dim(M_{<=x}) - a_n(M) x^n / n! over [0, T], averaged, gives a_{n-1}(M)/n!
// up to an O(1/T) error; subtracting rank * a_subtop(R) leaves the degree.
// Supports free and torsion summands (torsion needs dim >= 2).
inline Rat cesaro_fit_degree(const GradedModule& M, const Rat& T) {
    const WeightedAlgebra& R = M.algebra;
    const int n = R.dim();

    struct Piece {
        WeightedAlgebra algebra;
        Rat shift;
        long long multiplier;
    };
    std::vector<Piece> pieces;
    for (const FreeSummand& f : M.free)
        pieces.push_back({R, f.shift, 1});
    for (const TorsionPiece& t : M.torsion) {
        std::vector<Rat> weights;
        for (int j = 0; j < n; ++j)
            if (j + 1 != t.axis)
                weights.push_back(R.weights[static_cast<std::size_t>(j)]);
        pieces.push_back({WeightedAlgebra{std::move(weights)}, t.shift, t.length});
    }

    std::vector<Rat> breakpoints{Rat(0)};
    for (const Piece& p : pieces) {
        detail::CountingContext ctx(p.algebra);
        const auto& scale = ctx.scaling();
        for (const Int& b : detail::attainable_scaled(scale, scale.budget(T - p.shift))) {
            Rat value = scale.value(b) + p.shift;
            if (value > 0 && value <= T)
                breakpoints.push_back(value);
        }
    }
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

    Rat step_integral = 0;
    for (std::size_t j = 0; j < breakpoints.size(); ++j) {
        Rat end = (j + 1 < breakpoints.size()) ? breakpoints[j + 1] : T;
        Int count = 0;
        for (const Piece& p : pieces)
            count += Int(p.multiplier) * dim_leq(p.algebra, breakpoints[j] - p.shift);
        step_integral += Rat(count) * (end - breakpoints[j]);
    }

    Rat leading = a_top(M) * detail::rat_pow(T, n + 1) / Rat(detail::factorial(n + 1));
    Rat averaged = (step_integral - leading) / detail::rat_pow(T, n);
    Rat a_subtop_fit = Rat(detail::factorial(n)) * averaged;
    return a_subtop_fit - Rat(rank(M)) * coefficients(R).a_subtop;
}

}  // namespace gradestab::testing

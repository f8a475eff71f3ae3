#pragma once

/*
 * Monomial valuations on weighted polynomial rings and diagonal valuative
 * functions on free modules over them.
 *
 * A monomial valuation v with weight vector (w_i) has value group delta*Z,
 * where delta is the rational gcd of the weights. A diagonal valuative
 * function on R^r is determined by a shift vector c in (delta*Z)^r: it sends
 * sum a_i e_i to min_i (v(a_i) + c_i). Its associated graded module is the
 * split module (+)_i gr(-c_i); the instability functional phi is the slope
 * spread max c - min c of that module.
 *
 * A Hecke transform along a saturated top-slope submodule keeps the selected
 * shifts and lowers the rest by delta; iterating it along the maximal
 * destabilizing stage drives phi strictly down until it lands in [0, delta),
 * which is the optimality window. optimize() runs that loop and records the
 * trace; compare_optimal() classifies how two optimal functions differ.
 */

#include "module.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace gradestab {

struct MonomialValuation {
    std::vector<Rat> weights;  // v(x_i) = weights[i] > 0
    Rat index;                 // delta: rational gcd of the weights

    int dim() const { return static_cast<int>(weights.size()); }
    bool operator==(const MonomialValuation&) const = default;
};

inline MonomialValuation make_valuation(std::vector<Rat> weights) {
    WeightedAlgebra checked = make_algebra(std::move(weights));
    Rat delta = checked.weights[0];
    for (std::size_t i = 1; i < checked.weights.size(); ++i)
        delta = rat_gcd(delta, checked.weights[i]);
    return MonomialValuation{std::move(checked.weights), delta};
}

using Monomial = std::vector<long long>;  // exponent vector

// Finite sum of monomials with nonzero rational coefficients.
struct Polynomial {
    std::map<Monomial, Rat> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const Polynomial&) const = default;
};

inline Polynomial make_polynomial(const std::vector<std::pair<Monomial, Rat>>& terms) {
    Polynomial p;
    for (const auto& [exponents, coefficient] : terms) {
        for (long long e : exponents)
            if (e < 0)
                throw validation_error("exponent must be nonnegative");
        if (coefficient == 0)
            continue;
        Rat& c = p.terms[exponents];
        c += coefficient;
        if (c == 0)
            p.terms.erase(exponents);
    }
    return p;
}

inline Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    Polynomial out = a;
    for (const auto& [exponents, coefficient] : b.terms) {
        Rat& c = out.terms[exponents];
        c += coefficient;
        if (c == 0)
            out.terms.erase(exponents);
    }
    return out;
}

inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            if (ea.size() != eb.size())
                throw validation_error("monomial width mismatch");
            Monomial e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ea[i] + eb[i];
            Rat& c = out.terms[e];
            c += ca * cb;
            if (c == 0)
                out.terms.erase(e);
        }
    return out;
}

/// min over the monomials of sum exp_i * w_i; empty (the zero polynomial)
/// evaluates to infinity, reported as nullopt.
inline std::optional<Rat> v_eval(const MonomialValuation& v, const Polynomial& f) {
    std::optional<Rat> best;
    for (const auto& [exponents, coefficient] : f.terms) {
        if (static_cast<int>(exponents.size()) != v.dim())
            throw validation_error("monomial has " + std::to_string(exponents.size()) +
                                   " exponents, expected " + std::to_string(v.dim()));
        Rat value = 0;
        for (std::size_t i = 0; i < exponents.size(); ++i) {
            if (exponents[i] < 0)
                throw validation_error("exponent must be nonnegative");
            value += Rat(exponents[i]) * v.weights[i];
        }
        if (!best || value < *best)
            best = value;
    }
    return best;
}

struct DiagonalValuativeFunction {
    MonomialValuation valuation;
    std::vector<Rat> shifts;  // c_i, each a multiple of valuation.index

    std::size_t rank() const { return shifts.size(); }
    bool operator==(const DiagonalValuativeFunction&) const = default;
};

inline DiagonalValuativeFunction make_vf(MonomialValuation valuation, std::vector<Rat> shifts) {
    if (shifts.empty())
        throw validation_error("shift vector must be nonempty");
    for (std::size_t i = 0; i < shifts.size(); ++i)
        if (!is_integer(shifts[i] / valuation.index))
            throw validation_error("shift must be a multiple of the index (index " +
                                   std::to_string(i + 1) + ")");
    return DiagonalValuativeFunction{std::move(valuation), std::move(shifts)};
}

/// min_i (v(a_i) + c_i); infinity (nullopt) exactly on the zero vector.
inline std::optional<Rat> vf_eval(const DiagonalValuativeFunction& vf,
                                  const std::vector<Polynomial>& element) {
    if (element.size() != vf.shifts.size())
        throw validation_error("vector length mismatch: got " + std::to_string(element.size()) +
                               ", expected " + std::to_string(vf.shifts.size()));
    std::optional<Rat> best;
    for (std::size_t i = 0; i < element.size(); ++i) {
        std::optional<Rat> component = v_eval(vf.valuation, element[i]);
        if (!component)
            continue;
        Rat value = *component + vf.shifts[i];
        if (!best || value < *best)
            best = value;
    }
    return best;
}

/// The split module (+)_i gr(-c_i) over the weighted algebra of the valuation.
inline GradedModule associated_graded(const DiagonalValuativeFunction& vf) {
    GradedModule out;
    out.algebra = WeightedAlgebra{vf.valuation.weights};
    out.free.reserve(vf.shifts.size());
    for (const Rat& c : vf.shifts)
        out.free.push_back(FreeSummand{c});
    return out;
}

/// mu_max - mu_min of the associated graded module: max c - min c.
inline Rat phi(const DiagonalValuativeFunction& vf) {
    Rat lo = vf.shifts[0];
    Rat hi = vf.shifts[0];
    for (const Rat& c : vf.shifts) {
        if (c < lo)
            lo = c;
        if (c > hi)
            hi = c;
    }
    return hi - lo;
}

/// Hecke transform along the saturated submodule spanned by the selected
/// summands (0-based indices). The selection must be nonempty, proper, and
/// slope-upward-closed: no unselected summand may have strictly larger slope
/// (strictly smaller shift) than a selected one. Selected shifts stay put,
/// the rest drop by delta, so the new associated graded is N (+) (M/N)(delta).
inline DiagonalValuativeFunction hecke(const DiagonalValuativeFunction& vf,
                                       const std::vector<std::size_t>& submodule) {
    const std::set<std::size_t> selected(submodule.begin(), submodule.end());
    for (std::size_t i : selected)
        if (i >= vf.shifts.size())
            throw validation_error("summand index out of range");
    if (selected.empty() || selected.size() == vf.shifts.size())
        throw validation_error("not a saturated HN-compatible submodule");
    std::optional<Rat> max_selected;
    std::optional<Rat> min_rest;
    for (std::size_t i = 0; i < vf.shifts.size(); ++i) {
        if (selected.count(i)) {
            if (!max_selected || vf.shifts[i] > *max_selected)
                max_selected = vf.shifts[i];
        } else {
            if (!min_rest || vf.shifts[i] < *min_rest)
                min_rest = vf.shifts[i];
        }
    }
    if (*min_rest < *max_selected)
        throw validation_error("not a saturated HN-compatible submodule");

    DiagonalValuativeFunction out = vf;
    for (std::size_t i = 0; i < out.shifts.size(); ++i)
        if (!selected.count(i))
            out.shifts[i] -= vf.valuation.index;
    return out;
}

struct HeckeStep {
    std::size_t along = 1;  // 1-based stage index in the HN filtration before the step
    std::vector<Rat> before;
    std::vector<Rat> after;
    Rat phi_before;
    Rat phi_after;
    Rat delta;

    bool operator==(const HeckeStep&) const = default;
};

struct OptimizeResult {
    DiagonalValuativeFunction function;
    std::vector<HeckeStep> trace;
};

/// Descent loop: while phi >= delta, Hecke-transform along the maximal
/// destabilizing stage (the summands of minimal shift). Every such step
/// strictly decreases phi, so the loop stops with phi in [0, delta).
inline OptimizeResult optimize(const DiagonalValuativeFunction& vf) {
    const Rat delta = vf.valuation.index;
    const Rat initial = phi(vf);
    const Int cap = rat_ceil(initial / delta) + Int(vf.shifts.size()) + 1;

    OptimizeResult result{vf, {}};
    Int steps = 0;
    while (phi(result.function) >= delta) {
        if (steps >= cap)
            throw invariant_violation("hecke descent exceeded its iteration cap");
        const std::vector<Rat>& shifts = result.function.shifts;
        Rat lowest = shifts[0];
        for (const Rat& c : shifts)
            if (c < lowest)
                lowest = c;
        std::vector<std::size_t> top_stage;
        for (std::size_t i = 0; i < shifts.size(); ++i)
            if (shifts[i] == lowest)
                top_stage.push_back(i);

        DiagonalValuativeFunction next = hecke(result.function, top_stage);
        HeckeStep step;
        step.along = 1;
        step.before = result.function.shifts;
        step.after = next.shifts;
        step.phi_before = phi(result.function);
        step.phi_after = phi(next);
        step.delta = delta;
        result.trace.push_back(std::move(step));
        result.function = std::move(next);
        ++steps;
    }
    return result;
}

/// Checks the three-term descent bound for a step taken along the top stage:
///   phi_after <= max{ mu2 - mu_min, mu2 - mu_max + delta, phi_before - delta },
/// where mu2 is the slope of the second stage of the filtration before the step.
inline bool phi_descent_bound(const HeckeStep& step, const HNFiltration& hn_before) {
    if (hn_before.stages.size() < 2)
        throw validation_error("descent bound requires a second HN stage");
    const Rat mu2 = hn_before.stages[1].slope;
    Rat bound = mu2 - hn_before.mu_min();
    bound = std::max(bound, Rat(mu2 - hn_before.mu_max() + step.delta));
    bound = std::max(bound, Rat(step.phi_before - step.delta));
    return step.phi_after <= bound;
}

enum class CompareKind { ParallelTransport, HeckeRelated, Unrelated };

struct CompareResult {
    CompareKind kind = CompareKind::Unrelated;
    Rat translate;           // ParallelTransport: |constant difference|
    std::size_t stages = 0;  // HeckeRelated: number of top stages transformed

    bool operator==(const CompareResult&) const = default;
};

/// Classifies two optimal diagonal functions on the same free module:
/// translates of each other, a translate of a Hecke transform along a union
/// of top HN stages, or unrelated. Optimal inputs with phi(a) + phi(b) below
/// the index are always translates.
inline CompareResult compare_optimal(const DiagonalValuativeFunction& a,
                                     const DiagonalValuativeFunction& b) {
    if (a.valuation != b.valuation || a.shifts.size() != b.shifts.size())
        throw validation_error("inputs must share the same valuation and rank");
    const Rat delta = a.valuation.index;
    const Rat phi_a = phi(a);
    const Rat phi_b = phi(b);
    if (phi_a >= delta || phi_b >= delta)
        throw validation_error("compare_optimal requires optimal inputs (phi < index)");

    const auto translate_of = [](const std::vector<Rat>& from,
                                 const std::vector<Rat>& to) -> std::optional<Rat> {
        Rat c = to[0] - from[0];
        for (std::size_t i = 1; i < from.size(); ++i)
            if (to[i] - from[i] != c)
                return std::nullopt;
        return c;
    };

    if (std::optional<Rat> c = translate_of(a.shifts, b.shifts))
        return CompareResult{CompareKind::ParallelTransport, rat_abs(*c), 0};

    // Enumerate unions of top HN stages of b (thresholds over its distinct
    // shift values) and translates bounded by phi(a) + phi(b) + delta.
    std::set<Rat> distinct(b.shifts.begin(), b.shifts.end());
    const Rat bound = phi_a + phi_b + delta;
    std::size_t stage_count = 0;
    for (const Rat& threshold : distinct) {
        ++stage_count;
        if (stage_count == distinct.size())
            break;  // the full module is not a proper submodule
        std::vector<std::size_t> selection;
        for (std::size_t i = 0; i < b.shifts.size(); ++i)
            if (b.shifts[i] <= threshold)
                selection.push_back(i);
        DiagonalValuativeFunction transformed = hecke(b, selection);
        for (Rat c = -bound; c <= bound; c += delta) {
            bool match = true;
            for (std::size_t i = 0; i < a.shifts.size() && match; ++i)
                match = (transformed.shifts[i] + c == a.shifts[i]);
            if (match)
                return CompareResult{CompareKind::HeckeRelated, rat_abs(c), stage_count};
        }
    }

    if (phi_a + phi_b < delta)
        throw invariant_violation("optimal functions with small phi sum must be translates");
    return CompareResult{CompareKind::Unrelated, Rat(0), 0};
}

struct ConeResult {
    long long optimal_shift = 0;
    Rat phi;
    GradedModule gr;
    std::string note;
};

/// Tangent module of the cone over a degree-degL curve of the given genus,
/// tracked through slope bookkeeping: the module splits as R (+) Q with Q of
/// rank 1 and slope (2-2g)/degL. For genus 0 and 1 the extension is already
/// semistable; otherwise the descent twists Q up by one per step until the
/// slope spread drops below 1, reaching shift floor((2g-2)/degL).
inline ConeResult cone_example(long long genus, long long deg_line_bundle) {
    if (genus < 0)
        throw validation_error("genus must be nonnegative");
    if (deg_line_bundle < 1)
        throw validation_error("degL must be positive");

    const WeightedAlgebra ambient = make_algebra({Rat(1), Rat(1)});
    const Rat quotient_slope = Rat(2 - 2 * genus, deg_line_bundle);

    if (genus <= 1) {
        GradedModule gr = make_module(
            ambient, {}, {}, {AbstractSummand{2, quotient_slope, "tangent-extension"}});
        const char* note = genus == 0
                               ? "smooth vertex: the tangent extension is semistable and the "
                                 "trivial grading is already optimal"
                               : "the tangent module is a nontrivial self-extension, semistable; "
                                 "the trivial grading is already optimal";
        return ConeResult{0, Rat(0), std::move(gr), note};
    }

    GradedModule gr = make_module(ambient, {FreeSummand{Rat(0)}}, {},
                                  {AbstractSummand{1, quotient_slope, "cone-section-quotient"}});
    long long steps = 0;
    while (true) {
        HNFiltration hn = hn_filtration(gr);
        Rat spread = hn.mu_max() - hn.mu_min();
        if (spread < 1)
            return ConeResult{steps, std::move(spread), std::move(gr),
                              "descended along the free summand until the slope spread fell "
                              "below the index"};
        // Hecke transform along N = R: the quotient block is twisted up by 1.
        gr.abstract[0].degree += Rat(gr.abstract[0].rank) * coefficients(ambient).a_top;
        ++steps;
    }
}

}  // namespace gradestab

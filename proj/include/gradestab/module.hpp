#pragma once

/*
 * Split-presentation graded modules over a weighted polynomial algebra R:
 * a direct sum of shifted free summands R(-l), torsion pieces supported on
 * coordinate hyperplanes (x_i), and opaque stable summands carrying a
 * prescribed rank and degree. Degree, slope, duality and Harder-Narasimhan
 * data are exact rational computations on this class.
 */

#include "algebra.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gradestab {

struct FreeSummand {
    Rat shift;  // the summand R(-shift)

    bool operator==(const FreeSummand&) const = default;
};

struct TorsionPiece {
    int axis = 1;          // 1-based index of the hyperplane prime (x_axis)
    long long length = 1;  // length of the local cohomology at that prime
    Rat shift;             // grading bookkeeping only; no degree effect

    bool operator==(const TorsionPiece&) const = default;
};

// A stable block that is never decomposed; slope = degree/(rank * a_top(R)).
struct AbstractSummand {
    long long rank = 1;
    Rat degree;
    std::string label;

    bool operator==(const AbstractSummand&) const = default;
};

struct GradedModule {
    WeightedAlgebra algebra;
    std::vector<FreeSummand> free;
    std::vector<TorsionPiece> torsion;
    std::vector<AbstractSummand> abstract;

    bool operator==(const GradedModule&) const = default;
};

inline GradedModule make_module(WeightedAlgebra algebra, std::vector<FreeSummand> free,
                                std::vector<TorsionPiece> torsion = {},
                                std::vector<AbstractSummand> abstract = {}) {
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        if (torsion[i].axis < 1 || torsion[i].axis > algebra.dim())
            throw validation_error("torsion axis out of range (index " + std::to_string(i + 1) +
                                   ")");
        if (torsion[i].length < 1)
            throw validation_error("torsion length must be positive (index " +
                                   std::to_string(i + 1) + ")");
    }
    for (std::size_t i = 0; i < abstract.size(); ++i)
        if (abstract[i].rank < 1)
            throw validation_error("abstract rank must be positive (index " +
                                   std::to_string(i + 1) + ")");
    return GradedModule{std::move(algebra), std::move(free), std::move(torsion),
                        std::move(abstract)};
}

inline long long rank(const GradedModule& M) {
    long long r = static_cast<long long>(M.free.size());
    for (const AbstractSummand& a : M.abstract)
        r += a.rank;
    return r;
}

inline Rat a_top(const GradedModule& M) {
    return Rat(rank(M)) * coefficients(M.algebra).a_top;
}

// Volume of the hyperplane quotient R/(x_axis): the product skips the chosen
// weight. A one-variable algebra has zero-dimensional quotients, which are
// counted with volume 1 (each torsion piece then contributes its bare length).
inline Rat hyperplane_volume(const WeightedAlgebra& S, int axis) {
    Rat p = 1;
    for (int j = 0; j < S.dim(); ++j)
        if (j + 1 != axis)
            p *= S.weights[static_cast<std::size_t>(j)];
    return Rat(1) / p;
}

inline Rat degree(const GradedModule& M) {
    const Rat ring_top = coefficients(M.algebra).a_top;
    Rat d = 0;
    for (const TorsionPiece& t : M.torsion)
        d += Rat(t.length) * hyperplane_volume(M.algebra, t.axis);
    Rat shift_sum = 0;
    for (const FreeSummand& f : M.free)
        shift_sum += f.shift;
    d -= shift_sum * ring_top;
    for (const AbstractSummand& a : M.abstract)
        d += a.degree;
    return d;
}

inline Rat slope(const GradedModule& M) {
    if (rank(M) == 0)
        throw validation_error("slope undefined for torsion module");
    return degree(M) / a_top(M);
}

inline GradedModule twist(const GradedModule& M, const Rat& lambda) {
    GradedModule out = M;
    for (FreeSummand& f : out.free)
        f.shift -= lambda;
    for (TorsionPiece& t : out.torsion)
        t.shift -= lambda;
    const Rat ring_top = coefficients(M.algebra).a_top;
    for (AbstractSummand& a : out.abstract)
        a.degree += lambda * Rat(a.rank) * ring_top;
    return out;
}

inline GradedModule dual(const GradedModule& M) {
    if (!M.torsion.empty() || !M.abstract.empty())
        throw validation_error("dual supported only on free split modules");
    GradedModule out = M;
    for (FreeSummand& f : out.free)
        f.shift = -f.shift;
    return out;
}

// Degree of the dual through the presentation 0 -> M^v -> (+) R(l_i) -> E -> 0;
// always the negative of degree(M).
inline Rat degree_of_dual(const GradedModule& M) {
    const Rat ring_top = coefficients(M.algebra).a_top;
    Rat shift_sum = 0;
    for (const FreeSummand& f : M.free)
        shift_sum += f.shift;
    Rat d = shift_sum * ring_top;
    for (const TorsionPiece& t : M.torsion)
        d -= Rat(t.length) * hyperplane_volume(M.algebra, t.axis);
    for (const AbstractSummand& a : M.abstract)
        d -= a.degree;
    if (d != -degree(M))
        throw invariant_violation("degree_of_dual disagrees with -degree");
    return d;
}

inline Rat summand_slope(const FreeSummand& f) { return -f.shift; }

inline Rat summand_slope(const AbstractSummand& a, const WeightedAlgebra& S) {
    return a.degree / (Rat(a.rank) * coefficients(S).a_top);
}

struct HNStage {
    Rat slope;
    std::vector<FreeSummand> free;
    std::vector<AbstractSummand> abstract;

    bool operator==(const HNStage&) const = default;
};

struct HNFiltration {
    std::vector<HNStage> stages;  // slopes strictly decreasing

    const Rat& mu_max() const { return stages.front().slope; }
    const Rat& mu_min() const { return stages.back().slope; }

    bool operator==(const HNFiltration&) const = default;
};

/*
 * Grouping rule. Over a weighted polynomial algebra R every free summand
 * R(-l) is stable of slope -l: any nonzero ideal I has deg(I) = -deg(R/I),
 * and deg(R/I) >= 0 because a torsion quotient only contributes nonnegative
 * hyperplane terms. Direct sums of stables of one common slope are
 * semistable, and a nonzero map between semistables can only raise the
 * slope. Hence the maximal destabilizing submodule of a split module is the
 * sum of its top-slope summands, and the filtration is read off by grouping
 * summands by slope in strictly decreasing order.
 */
inline HNFiltration hn_filtration(const GradedModule& M) {
    if (!M.torsion.empty())
        throw validation_error("HN restricted to torsion-free split modules");
    if (rank(M) == 0)
        throw validation_error("HN requires rank >= 1");
    std::map<Rat, HNStage, std::greater<Rat>> groups;
    for (const FreeSummand& f : M.free) {
        Rat mu = summand_slope(f);
        auto& stage = groups[mu];
        stage.slope = mu;
        stage.free.push_back(f);
    }
    for (const AbstractSummand& a : M.abstract) {
        Rat mu = summand_slope(a, M.algebra);
        auto& stage = groups[mu];
        stage.slope = mu;
        stage.abstract.push_back(a);
    }
    HNFiltration out;
    out.stages.reserve(groups.size());
    for (auto& [mu, stage] : groups)
        out.stages.push_back(std::move(stage));
    return out;
}

inline bool is_semistable(const GradedModule& M) { return hn_filtration(M).stages.size() == 1; }

inline Rat mu_max(const GradedModule& M) { return hn_filtration(M).mu_max(); }

inline Rat mu_min(const GradedModule& M) { return hn_filtration(M).mu_min(); }

}  // namespace gradestab

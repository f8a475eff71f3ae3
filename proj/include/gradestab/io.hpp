#pragma once

/*
 * JSON schemas for the library types. Rationals travel as canonical strings
 * "p" or "p/q" (lowest terms, q > 0); integer JSON numbers are accepted on
 * input. Serialization uses insertion-ordered JSON so identical values always
 * produce identical bytes.
 */

#include "valuative.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gradestab {

using Json = nlohmann::ordered_json;

inline Json rational_to_json(const Rat& q) { return rational_to_string(q); }

inline Rat rational_from_json(const Json& j, const std::string& where) {
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rat(j.get<long long>());
    if (j.is_number_unsigned())
        return Rat(j.get<unsigned long long>());
    throw validation_error(where + ": rational values must be strings like \"3/4\"");
}

inline long long integer_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer())
        return j.get<long long>();
    if (j.is_number_unsigned())
        return static_cast<long long>(j.get<unsigned long long>());
    throw validation_error(where + ": expected an integer");
}

inline Json rationals_to_json(const std::vector<Rat>& values) {
    Json out = Json::array();
    for (const Rat& v : values)
        out.push_back(rational_to_json(v));
    return out;
}

inline std::vector<Rat> rationals_from_json(const Json& j, const std::string& where) {
    if (!j.is_array())
        throw validation_error(where + ": expected an array of rationals");
    std::vector<Rat> out;
    out.reserve(j.size());
    for (const Json& item : j)
        out.push_back(rational_from_json(item, where));
    return out;
}

inline Json to_json(const WeightedAlgebra& S) {
    return Json{{"weights", rationals_to_json(S.weights)}};
}

inline WeightedAlgebra algebra_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("weights"))
        throw validation_error("algebra: expected {\"weights\": [...]}");
    return make_algebra(rationals_from_json(j.at("weights"), "algebra.weights"));
}

inline Json to_json(const GradedModule& M) {
    Json free = Json::array();
    for (const FreeSummand& f : M.free)
        free.push_back(rational_to_json(f.shift));
    Json torsion = Json::array();
    for (const TorsionPiece& t : M.torsion)
        torsion.push_back(Json{{"axis", t.axis},
                               {"length", t.length},
                               {"shift", rational_to_json(t.shift)}});
    Json abstract = Json::array();
    for (const AbstractSummand& a : M.abstract)
        abstract.push_back(Json{{"rank", a.rank},
                                {"degree", rational_to_json(a.degree)},
                                {"label", a.label}});
    return Json{{"free", free}, {"torsion", torsion}, {"abstract", abstract}};
}

inline GradedModule module_from_json(const Json& j, const WeightedAlgebra& algebra) {
    if (!j.is_object())
        throw validation_error("module: expected an object");
    std::vector<FreeSummand> free;
    if (j.contains("free"))
        for (const Rat& shift : rationals_from_json(j.at("free"), "module.free"))
            free.push_back(FreeSummand{shift});
    std::vector<TorsionPiece> torsion;
    if (j.contains("torsion")) {
        if (!j.at("torsion").is_array())
            throw validation_error("module.torsion: expected an array");
        for (const Json& item : j.at("torsion")) {
            TorsionPiece t;
            t.axis = static_cast<int>(integer_from_json(item.at("axis"), "torsion.axis"));
            t.length = integer_from_json(item.at("length"), "torsion.length");
            if (item.contains("shift"))
                t.shift = rational_from_json(item.at("shift"), "torsion.shift");
            torsion.push_back(std::move(t));
        }
    }
    std::vector<AbstractSummand> abstract;
    if (j.contains("abstract")) {
        if (!j.at("abstract").is_array())
            throw validation_error("module.abstract: expected an array");
        for (const Json& item : j.at("abstract")) {
            AbstractSummand a;
            a.rank = integer_from_json(item.at("rank"), "abstract.rank");
            a.degree = rational_from_json(item.at("degree"), "abstract.degree");
            if (item.contains("label"))
                a.label = item.at("label").get<std::string>();
            abstract.push_back(std::move(a));
        }
    }
    return make_module(algebra, std::move(free), std::move(torsion), std::move(abstract));
}

// Canonical stage form: free shifts ascending, abstract blocks by
// (rank, degree, label); stages are already in decreasing slope order.
inline Json to_json(const HNFiltration& hn) {
    Json stages = Json::array();
    for (const HNStage& stage : hn.stages) {
        std::vector<Rat> shifts;
        for (const FreeSummand& f : stage.free)
            shifts.push_back(f.shift);
        std::sort(shifts.begin(), shifts.end());
        std::vector<AbstractSummand> blocks = stage.abstract;
        std::sort(blocks.begin(), blocks.end(), [](const AbstractSummand& x,
                                                   const AbstractSummand& y) {
            if (x.rank != y.rank)
                return x.rank < y.rank;
            if (x.degree != y.degree)
                return x.degree < y.degree;
            return x.label < y.label;
        });
        Json abstract = Json::array();
        for (const AbstractSummand& a : blocks)
            abstract.push_back(Json{{"rank", a.rank},
                                    {"degree", rational_to_json(a.degree)},
                                    {"label", a.label}});
        stages.push_back(Json{{"slope", rational_to_json(stage.slope)},
                              {"free", rationals_to_json(shifts)},
                              {"abstract", abstract}});
    }
    return Json{{"stages", stages}};
}

inline Json to_json(const MonomialValuation& v) {
    return Json{{"weights", rationals_to_json(v.weights)},
                {"index", rational_to_json(v.index)}};
}

inline Json to_json(const DiagonalValuativeFunction& vf) {
    return Json{{"valuation", Json{{"weights", rationals_to_json(vf.valuation.weights)}}},
                {"shifts", rationals_to_json(vf.shifts)}};
}

inline DiagonalValuativeFunction vf_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("valuation") || !j.contains("shifts"))
        throw validation_error(
            "valuative_function: expected {\"valuation\": {\"weights\": [...]}, \"shifts\": "
            "[...]}");
    const Json& val = j.at("valuation");
    if (!val.is_object() || !val.contains("weights"))
        throw validation_error("valuation: expected {\"weights\": [...]}");
    MonomialValuation v =
        make_valuation(rationals_from_json(val.at("weights"), "valuation.weights"));
    return make_vf(std::move(v), rationals_from_json(j.at("shifts"), "shifts"));
}

inline Json to_json(const HeckeStep& step) {
    return Json{{"along", step.along},
                {"before", rationals_to_json(step.before)},
                {"after", rationals_to_json(step.after)},
                {"phi_before", rational_to_json(step.phi_before)},
                {"phi_after", rational_to_json(step.phi_after)}};
}

struct ProblemFile {
    std::optional<WeightedAlgebra> algebra;
    std::optional<GradedModule> module;
    std::optional<DiagonalValuativeFunction> vf;
    std::optional<DiagonalValuativeFunction> vf2;
    Json parameters = Json::object();
};

inline ProblemFile problem_from_json(const Json& j) {
    if (!j.is_object())
        throw validation_error("problem file must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "algebra" && key != "module" && key != "valuative_function" &&
            key != "valuative_function_2" && key != "parameters")
            throw validation_error("unknown problem key \"" + key + "\"");
    }
    ProblemFile p;
    if (j.contains("algebra"))
        p.algebra = algebra_from_json(j.at("algebra"));
    if (j.contains("module")) {
        if (!p.algebra)
            throw validation_error("module section requires an algebra section");
        p.module = module_from_json(j.at("module"), *p.algebra);
    }
    if (j.contains("valuative_function"))
        p.vf = vf_from_json(j.at("valuative_function"));
    if (j.contains("valuative_function_2"))
        p.vf2 = vf_from_json(j.at("valuative_function_2"));
    if (j.contains("parameters")) {
        if (!j.at("parameters").is_object())
            throw validation_error("parameters: expected an object");
        p.parameters = j.at("parameters");
    }
    if (p.module && p.vf &&
        static_cast<long long>(p.vf->shifts.size()) != rank(*p.module))
        throw validation_error("shift vector length does not match module rank");
    return p;
}

struct Report {
    std::string command;
    std::string status = "ok";
    Json inputs = Json::object();
    Json outputs = Json::object();
    std::optional<Json> trace;
};

inline Json to_json(const Report& r) {
    Json out{{"command", r.command}, {"status", r.status}, {"inputs", r.inputs},
             {"outputs", r.outputs}};
    if (r.trace)
        out["trace"] = *r.trace;
    return out;
}

inline Report report_from_json(const Json& j) {
    Report r;
    r.command = j.at("command").get<std::string>();
    r.status = j.at("status").get<std::string>();
    r.inputs = j.at("inputs");
    r.outputs = j.at("outputs");
    if (j.contains("trace"))
        r.trace = j.at("trace");
    return r;
}

}  // namespace gradestab

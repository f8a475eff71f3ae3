// Batch front end: reads a JSON problem file (path or standard input),
// dispatches to the library, and prints a report either as an aligned
// key/value table or, with --json, as a machine readable document.
//
// Exit codes: 0 success, 1 verification failure, 2 input validation,
// 3 internal invariant violation.

#include "gradestab/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace gradestab;

Json load_json(const std::string& path) {
    try {
        if (path.empty())
            return Json::parse(std::cin);
        std::ifstream in(path);
        if (!in)
            throw validation_error("cannot open file: " + path);
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(std::string("invalid JSON: ") + e.what());
    }
}

const WeightedAlgebra& require_algebra(const ProblemFile& p) {
    if (!p.algebra)
        throw validation_error("missing algebra section");
    return *p.algebra;
}

const GradedModule& require_module(const ProblemFile& p) {
    if (!p.module)
        throw validation_error("missing module section");
    return *p.module;
}

const DiagonalValuativeFunction& require_vf(const ProblemFile& p) {
    if (!p.vf)
        throw validation_error("missing valuative_function section");
    return *p.vf;
}

const Json& require_param(const ProblemFile& p, const char* name) {
    if (!p.parameters.contains(name))
        throw validation_error(std::string("missing parameter ") + name);
    return p.parameters.at(name);
}

Report cmd_count(const ProblemFile& p) {
    const WeightedAlgebra& S = require_algebra(p);
    Rat x = rational_from_json(require_param(p, "x"), "parameters.x");
    Report r;
    r.command = "count";
    r.inputs = Json{{"algebra", to_json(S)}, {"x", rational_to_json(x)}};
    r.outputs = Json{{"count", dim_leq(S, x).str()}};
    return r;
}

Report cmd_coeffs(const ProblemFile& p) {
    const WeightedAlgebra& S = require_algebra(p);
    RRCoefficients c = coefficients(S);
    Report r;
    r.command = "coeffs";
    r.inputs = Json{{"algebra", to_json(S)}};
    r.outputs = Json{{"a_top", rational_to_json(c.a_top)},
                     {"a_subtop", rational_to_json(c.a_subtop)}};
    return r;
}

Report cmd_cesaro(const ProblemFile& p) {
    const WeightedAlgebra& S = require_algebra(p);
    Rat T = rational_from_json(require_param(p, "T"), "parameters.T");
    Report r;
    r.command = "cesaro";
    r.inputs = Json{{"algebra", to_json(S)}, {"T", rational_to_json(T)}};
    r.outputs = Json{{"residual", rational_to_json(cesaro_residual(S, T))}};
    return r;
}

Report cmd_module_info(const ProblemFile& p) {
    const GradedModule& M = require_module(p);
    Report r;
    r.command = "module";
    r.inputs = Json{{"algebra", to_json(M.algebra)}, {"module", to_json(M)}};
    r.outputs = Json{{"rank", rank(M)},
                     {"degree", rational_to_json(degree(M))},
                     {"degree_of_dual", rational_to_json(degree_of_dual(M))}};
    if (rank(M) >= 1) {
        r.outputs["a_top"] = rational_to_json(a_top(M));
        r.outputs["slope"] = rational_to_json(slope(M));
    }
    return r;
}

Report cmd_hn(const ProblemFile& p) {
    const GradedModule& M = require_module(p);
    HNFiltration hn = hn_filtration(M);
    Report r;
    r.command = "hn";
    r.inputs = Json{{"algebra", to_json(M.algebra)}, {"module", to_json(M)}};
    r.outputs = to_json(hn);
    r.outputs["mu_max"] = rational_to_json(hn.mu_max());
    r.outputs["mu_min"] = rational_to_json(hn.mu_min());
    r.outputs["semistable"] = (hn.stages.size() == 1);
    return r;
}

Report cmd_phi(const ProblemFile& p) {
    const DiagonalValuativeFunction& vf = require_vf(p);
    Report r;
    r.command = "phi";
    r.inputs = Json{{"valuative_function", to_json(vf)}};
    r.outputs = Json{{"phi", rational_to_json(phi(vf))},
                     {"index", rational_to_json(vf.valuation.index)}};
    return r;
}

Report cmd_hecke(const ProblemFile& p) {
    const DiagonalValuativeFunction& vf = require_vf(p);
    const Json& stage = require_param(p, "stage");
    if (!stage.is_array())
        throw validation_error("parameters.stage: expected an array of summand indices");
    std::vector<std::size_t> selection;
    for (const Json& item : stage) {
        long long idx = integer_from_json(item, "parameters.stage");
        if (idx < 1)
            throw validation_error("parameters.stage: indices are 1-based");
        selection.push_back(static_cast<std::size_t>(idx - 1));
    }
    DiagonalValuativeFunction out = hecke(vf, selection);
    Report r;
    r.command = "hecke";
    r.inputs = Json{{"valuative_function", to_json(vf)}, {"stage", stage}};
    r.outputs = Json{{"shifts", rationals_to_json(out.shifts)},
                     {"gr", to_json(associated_graded(out))},
                     {"phi", rational_to_json(phi(out))}};
    return r;
}

Report cmd_optimize(const ProblemFile& p) {
    const DiagonalValuativeFunction& vf = require_vf(p);
    OptimizeResult result = optimize(vf);
    Report r;
    r.command = "optimize";
    r.inputs = Json{{"valuative_function", to_json(vf)}};
    r.outputs = Json{{"shifts", rationals_to_json(result.function.shifts)},
                     {"phi", rational_to_json(phi(result.function))},
                     {"steps", result.trace.size()}};
    Json trace = Json::array();
    for (const HeckeStep& step : result.trace)
        trace.push_back(to_json(step));
    r.trace = trace;
    return r;
}

Report cmd_compare(const ProblemFile& p) {
    const DiagonalValuativeFunction& vf = require_vf(p);
    if (!p.vf2)
        throw validation_error("missing valuative_function_2 section");
    CompareResult c = compare_optimal(vf, *p.vf2);
    Report r;
    r.command = "compare";
    r.inputs = Json{{"valuative_function", to_json(vf)},
                    {"valuative_function_2", to_json(*p.vf2)}};
    switch (c.kind) {
    case CompareKind::ParallelTransport:
        r.outputs = Json{{"classification", "parallel_transport"},
                         {"translate", rational_to_json(c.translate)}};
        break;
    case CompareKind::HeckeRelated:
        r.outputs = Json{{"classification", "hecke_related"},
                         {"stages", c.stages},
                         {"translate", rational_to_json(c.translate)}};
        break;
    case CompareKind::Unrelated:
        r.outputs = Json{{"classification", "unrelated"}};
        break;
    }
    return r;
}

Report cmd_cone(const ProblemFile& p) {
    long long genus = integer_from_json(require_param(p, "genus"), "parameters.genus");
    long long degL = integer_from_json(require_param(p, "degL"), "parameters.degL");
    ConeResult c = cone_example(genus, degL);
    Report r;
    r.command = "cone";
    r.inputs = Json{{"genus", genus}, {"degL", degL}};
    r.outputs = Json{{"optimal_shift", c.optimal_shift},
                     {"phi", rational_to_json(c.phi)},
                     {"gr", to_json(c.gr)},
                     {"note", c.note}};
    return r;
}

// ---------------------------------------------------------------- rendering

std::string scalar_text(const Json& j) {
    return j.is_string() ? j.get<std::string>() : j.dump();
}

void flatten(const std::string& prefix, const Json& j,
             std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            flatten(prefix.empty() ? key : prefix + "." + key, value, rows);
    } else if (j.is_array()) {
        bool scalars_only = true;
        for (const Json& item : j)
            if (item.is_object() || item.is_array())
                scalars_only = false;
        if (scalars_only) {
            std::string joined;
            for (const Json& item : j) {
                if (!joined.empty())
                    joined += ", ";
                joined += scalar_text(item);
            }
            rows.emplace_back(prefix, "[" + joined + "]");
        } else {
            for (std::size_t i = 0; i < j.size(); ++i)
                flatten(prefix + "[" + std::to_string(i + 1) + "]", j[i], rows);
        }
    } else {
        rows.emplace_back(prefix, scalar_text(j));
    }
}

void print_report(const Report& r, bool as_json) {
    Json j = to_json(r);
    if (as_json) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten("", j, rows);
    std::size_t width = 0;
    for (const auto& [key, value] : rows)
        width = std::max(width, key.size());
    for (const auto& [key, value] : rows)
        std::cout << key << std::string(width - key.size() + 2, ' ') << value << "\n";
}

// ---------------------------------------------------------- verify-examples

struct Assertion {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
};

Json builtin_verify_fixture() {
    Json plane{{"weights", Json::array({"1", "2"})},
               {"shifts", Json::array({"1", "2"})},
               {"expect", Json{{"steps", 1},
                               {"shifts", Json::array({"1", "1"})},
                               {"phi", "0"},
                               {"translate", "1"}}}};
    // genus 0..5 by degree 1..3; shift floor((2g-2)/degL) once the slope
    // spread exceeds 1, with the leftover fractional part as phi.
    const char* phis[6][3] = {{"0", "0", "0"},   {"0", "0", "0"}, {"0", "0", "2/3"},
                              {"0", "0", "1/3"}, {"0", "0", "0"}, {"0", "0", "2/3"}};
    const long long shifts[6][3] = {{0, 0, 0}, {0, 0, 0}, {2, 1, 0},
                                    {4, 2, 1}, {6, 3, 2}, {8, 4, 2}};
    Json cone = Json::array();
    for (long long g = 0; g <= 5; ++g)
        for (long long d = 1; d <= 3; ++d)
            cone.push_back(Json{{"genus", g},
                                {"degL", d},
                                {"expect", Json{{"optimal_shift", shifts[g][d - 1]},
                                                {"phi", phis[g][d - 1]}}}});
    return Json{{"plane", plane}, {"cone", cone}};
}

std::vector<Assertion> run_verifications(const Json& fixture) {
    std::vector<Assertion> out;
    const auto check = [&out](std::string name, std::string expected, std::string actual) {
        Assertion a{std::move(name), std::move(expected), std::move(actual), false};
        a.pass = (a.expected == a.actual);
        out.push_back(std::move(a));
    };

    if (!fixture.is_object() || !fixture.contains("plane") || !fixture.contains("cone"))
        throw validation_error("verify fixture must contain \"plane\" and \"cone\" sections");

    const Json& plane = fixture.at("plane");
    MonomialValuation v =
        make_valuation(rationals_from_json(plane.at("weights"), "plane.weights"));
    DiagonalValuativeFunction vf =
        make_vf(v, rationals_from_json(plane.at("shifts"), "plane.shifts"));
    const Json& expect = plane.at("expect");

    OptimizeResult result = optimize(vf);
    check("plane.steps", expect.at("steps").dump(), std::to_string(result.trace.size()));
    check("plane.shifts", expect.at("shifts").dump(),
          rationals_to_json(result.function.shifts).dump());
    check("plane.phi", expect.at("phi").get<std::string>(),
          rational_to_string(phi(result.function)));

    DiagonalValuativeFunction trivial =
        make_vf(v, std::vector<Rat>(vf.shifts.size(), Rat(0)));
    CompareResult cmp = compare_optimal(result.function, trivial);
    check("plane.translate",
          std::string("parallel_transport ") + expect.at("translate").get<std::string>(),
          (cmp.kind == CompareKind::ParallelTransport
               ? "parallel_transport " + rational_to_string(cmp.translate)
               : "not parallel transport"));

    for (const Json& entry : fixture.at("cone")) {
        long long g = integer_from_json(entry.at("genus"), "cone.genus");
        long long d = integer_from_json(entry.at("degL"), "cone.degL");
        const Json& e = entry.at("expect");
        ConeResult cone = cone_example(g, d);
        std::string tag = "cone.g" + std::to_string(g) + ".d" + std::to_string(d);
        check(tag + ".optimal_shift", e.at("optimal_shift").dump(),
              std::to_string(cone.optimal_shift));
        check(tag + ".phi", e.at("phi").get<std::string>(), rational_to_string(cone.phi));
    }
    return out;
}

int cmd_verify(const std::string& file, bool as_json) {
    Json fixture = file.empty() ? builtin_verify_fixture() : load_json(file);
    std::vector<Assertion> results = run_verifications(fixture);
    bool all_pass = true;
    for (const Assertion& a : results)
        all_pass = all_pass && a.pass;

    if (as_json) {
        Json rows = Json::array();
        for (const Assertion& a : results)
            rows.push_back(Json{{"name", a.name},
                                {"expected", a.expected},
                                {"actual", a.actual},
                                {"pass", a.pass}});
        Json doc{{"command", "verify-examples"},
                 {"status", all_pass ? "pass" : "fail"},
                 {"results", rows}};
        std::cout << doc.dump(2) << "\n";
    } else {
        std::size_t width = 0;
        for (const Assertion& a : results)
            width = std::max(width, a.name.size());
        for (const Assertion& a : results) {
            std::cout << (a.pass ? "ok    " : "FAIL  ") << a.name
                      << std::string(width - a.name.size() + 2, ' ');
            if (a.pass)
                std::cout << a.actual << "\n";
            else
                std::cout << "expected " << a.expected << ", got " << a.actual << "\n";
        }
        std::cout << (all_pass ? "all assertions passed" : "verification failed") << " ("
                  << results.size() << " assertions)\n";
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gradestab: slope stability and tangent-cone descent for graded modules "
                 "over weighted polynomial algebras"};
    app.require_subcommand(1);

    bool as_json = false;
    std::string file;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"count", "exact dimension count dim(S_{<=x})"},
        {"coeffs", "asymptotic coefficients a_top and a_subtop"},
        {"cesaro", "exact Cesaro residual at horizon T"},
        {"module", "rank, degree and slope of a split module"},
        {"hn", "Harder-Narasimhan filtration of a split module"},
        {"phi", "instability of a diagonal valuative function"},
        {"hecke", "Hecke transform along selected summands"},
        {"optimize", "descend to an optimal valuative function"},
        {"compare", "classify two optimal valuative functions"},
        {"cone", "optimal grading for the cone over a curve"},
        {"verify-examples", "run the built-in example verifications"},
    };
    for (const auto& [name, description] : commands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_flag("--json", as_json, "emit the machine readable report");
        sub->add_option("-f,--file", file, "problem file (default: standard input)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (command == "verify-examples")
            return cmd_verify(file, as_json);

        ProblemFile p = problem_from_json(load_json(file));
        Report r;
        if (command == "count")
            r = cmd_count(p);
        else if (command == "coeffs")
            r = cmd_coeffs(p);
        else if (command == "cesaro")
            r = cmd_cesaro(p);
        else if (command == "module")
            r = cmd_module_info(p);
        else if (command == "hn")
            r = cmd_hn(p);
        else if (command == "phi")
            r = cmd_phi(p);
        else if (command == "hecke")
            r = cmd_hecke(p);
        else if (command == "optimize")
            r = cmd_optimize(p);
        else if (command == "compare")
            r = cmd_compare(p);
        else if (command == "cone")
            r = cmd_cone(p);
        print_report(r, as_json);
        return 0;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed problem document: " << e.what() << "\n";
        return 2;
    } catch (const invariant_violation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}

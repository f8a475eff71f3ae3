// Acceptance suite: one check per criterion, one PASS/FAIL line each.
// Exits nonzero if any criterion fails.

#include "gradestab/io.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

using namespace gradestab;
using namespace gradestab::testing;

namespace {

struct Failure {
    std::string message;
};

void require(bool condition, const std::string& message) {
    if (!condition)
        throw Failure{message};
}

std::vector<WeightedAlgebra> suite_algebras() {
    return {
        make_algebra({Rat(1)}),
        make_algebra({Rat(1), Rat(2)}),
        make_algebra({Rat(2), Rat(3)}),
        make_algebra({Rat(2), Rat(3), Rat(5)}),
        make_algebra({Rat(1, 2), Rat(3, 2)}),
        make_algebra({Rat(1), Rat(1), Rat(1)}),
    };
}

// ------------------------------------------------------------ criterion 1

void counting_oracle() {
    Engine rng(9001);
    for (int i = 0; i < 200; ++i) {
        WeightedAlgebra S = draw_algebra(rng);
        Rat x(draw(rng, -10, 40 * 7), draw(rng, 1, 7));
        if (x > 40)
            x = Rat(40);
        require(dim_leq(S, x) == brute_force_count(S, x),
                "dim_leq != brute force at instance " + std::to_string(i));
    }
    require(dim_leq(make_algebra({Rat(1), Rat(2)}), Rat(4)) == 9, "fixed case (1,2), x=4");
}

// ------------------------------------------------------------ criterion 2

void riemann_roch_coefficients() {
    Engine rng(9002);
    for (int i = 0; i < 200; ++i) {
        WeightedAlgebra S = draw_algebra(rng);
        RRCoefficients c = coefficients(S);
        require(c.a_subtop == c.a_top * weight_sum(S) / 2, "a_subtop identity (random)");
        require(c.a_top > 0, "a_top positivity");
    }
    for (const WeightedAlgebra& S : suite_algebras()) {
        RRCoefficients c = coefficients(S);
        require(c.a_subtop == c.a_top * weight_sum(S) / 2, "a_subtop identity (suite)");
        const int n = S.dim();
        const auto error_at = [&](int x) {
            Rat fit = Rat(dim_leq(S, Rat(x)) * detail::factorial(n)) /
                      detail::rat_pow(Rat(x), n);
            return rat_abs(fit - c.a_top);
        };
        require(error_at(200) < error_at(50), "leading fit shrinks from x=50 to x=200");
    }
}

// ------------------------------------------------------------ criterion 3

void cesaro_convergence() {
    const WeightedAlgebra line = make_algebra({Rat(1)});
    for (int T : {1, 2, 3, 4, 5, 6, 7, 8, 16, 37, 100, 256})
        require(cesaro_residual(line, Rat(T)) == 0, "unit-weight residual at integer T");
    for (const WeightedAlgebra& S :
         {make_algebra({Rat(1), Rat(2)}), make_algebra({Rat(2), Rat(3)})}) {
        Rat r16 = rat_abs(cesaro_residual(S, Rat(16)));
        Rat r256 = rat_abs(cesaro_residual(S, Rat(256)));
        require(r256 < r16, "residual strictly decreases from T=16 to T=256");
        require(r256 < Rat(1, 50), "residual below 1/50 at T=256");
    }
}

// ------------------------------------------------------------ criterion 4

void degree_slope_laws() {
    Engine rng(9004);
    int seesaw_checked = 0;
    for (int i = 0; i < 200 || seesaw_checked < 200; ++i) {
        WeightedAlgebra S = draw_algebra(rng);
        GradedModule M = draw_module(rng, S);
        GradedModule left = make_module(S, {});
        GradedModule right = make_module(S, {});
        for (const FreeSummand& f : M.free)
            (draw(rng, 0, 1) ? left : right).free.push_back(f);
        for (const TorsionPiece& t : M.torsion)
            (draw(rng, 0, 1) ? left : right).torsion.push_back(t);
        for (const AbstractSummand& a : M.abstract)
            (draw(rng, 0, 1) ? left : right).abstract.push_back(a);

        require(degree(M) == degree(left) + degree(right), "degree additivity");
        require(degree_of_dual(M) == -degree(M), "degree of dual");
        Rat lambda = draw_shift(rng);
        require(slope(twist(M, lambda)) == slope(M) + lambda, "twist covariance");

        if (rank(left) >= 1 && rank(right) >= 1) {
            ++seesaw_checked;
            Rat whole = slope(M);
            Rat a = slope(left);
            Rat b = slope(right);
            require(std::min(a, b) <= whole && whole <= std::max(a, b), "see-saw");
            if (a != b)
                require(std::min(a, b) < whole && whole < std::max(a, b),
                        "see-saw strictness");
        }
    }
}

// ------------------------------------------------------------ criterion 5

void hn_properties() {
    Engine rng(9005);
    for (int i = 0; i < 200; ++i) {
        WeightedAlgebra S = draw_algebra(rng);
        GradedModule M = draw_module(rng, S, ModuleOptions{.allow_torsion = false});
        HNFiltration hn = hn_filtration(M);
        std::size_t members = 0;
        for (std::size_t s = 0; s < hn.stages.size(); ++s) {
            if (s + 1 < hn.stages.size())
                require(hn.stages[s].slope > hn.stages[s + 1].slope,
                        "slopes strictly decreasing");
            for (const FreeSummand& f : hn.stages[s].free)
                require(summand_slope(f) == hn.stages[s].slope, "stage slope (free)");
            for (const AbstractSummand& a : hn.stages[s].abstract)
                require(summand_slope(a, S) == hn.stages[s].slope, "stage slope (block)");
            members += hn.stages[s].free.size() + hn.stages[s].abstract.size();
        }
        require(members == M.free.size() + M.abstract.size(), "stages partition summands");

        GradedModule shuffled = M;
        for (std::size_t k = shuffled.free.size(); k > 1; --k)
            std::swap(shuffled.free[k - 1],
                      shuffled.free[static_cast<std::size_t>(draw(rng, 0, k - 1))]);
        for (std::size_t k = shuffled.abstract.size(); k > 1; --k)
            std::swap(shuffled.abstract[k - 1],
                      shuffled.abstract[static_cast<std::size_t>(draw(rng, 0, k - 1))]);
        require(to_json(hn_filtration(shuffled)).dump() == to_json(hn).dump(),
                "permutation invariance");
    }
}

// ------------------------------------------------------------ criterion 6

void plane_tangent_example() {
    MonomialValuation v = make_valuation({Rat(1), Rat(2)});
    OptimizeResult r = optimize(make_vf(v, {Rat(1), Rat(2)}));
    require(r.trace.size() == 1, "exactly one step");
    require(r.function.shifts == std::vector<Rat>{Rat(1), Rat(1)}, "result shifts (1,1)");
    require(r.trace[0].phi_before == 1 && r.trace[0].phi_after == 0, "phi 1 -> 0");
    CompareResult c =
        compare_optimal(r.function, make_vf(v, {Rat(0), Rat(0)}));
    require(c.kind == CompareKind::ParallelTransport && c.translate == 1,
            "parallel transport by 1");
}

// ------------------------------------------------------------ criterion 7

void descent_and_termination() {
    Engine rng(9007);
    for (int i = 0; i < 300; ++i) {
        const Rat delta = draw_index(rng);
        DiagonalValuativeFunction vf = draw_vf(rng, delta);
        const Rat initial = phi(vf);
        OptimizeResult r = optimize(vf);
        require(phi(r.function) >= 0 && phi(r.function) < delta, "final phi in [0, delta)");
        require(Int(r.trace.size()) <= rat_ceil(initial / delta) + Int(vf.rank()),
                "termination bound");
        DiagonalValuativeFunction cursor = vf;
        for (const HeckeStep& step : r.trace) {
            require(step.phi_before >= delta, "steps only fire at phi >= delta");
            require(step.phi_after < step.phi_before, "phi strictly decreases");
            require(phi_descent_bound(step,
                                      hn_filtration(associated_graded(cursor))),
                    "three-term bound");
            cursor.shifts = step.after;
        }
        require(cursor.shifts == r.function.shifts, "trace replays to the result");
    }
}

// ------------------------------------------------------------ criterion 8

void uniqueness_on_translates() {
    Engine rng(9008);
    for (int i = 0; i < 100; ++i) {
        const Rat delta = draw_index(rng);
        DiagonalValuativeFunction vf = draw_vf(rng, delta);
        const Rat c = delta * Rat(draw(rng, -5, 5));
        DiagonalValuativeFunction moved = vf;
        for (Rat& s : moved.shifts)
            s += c;
        CompareResult r =
            compare_optimal(optimize(vf).function, optimize(moved).function);
        require(r.kind == CompareKind::ParallelTransport, "translates stay translates");
        require(r.translate == rat_abs(c), "translate magnitude");
    }
}

// ------------------------------------------------------------ criterion 9

void cone_grid() {
    for (long long g = 2; g <= 6; ++g)
        for (long long d = 1; d <= 3; ++d) {
            ConeResult r = cone_example(g, d);
            require(r.optimal_shift == (2 * g - 2) / d, "optimal shift floor formula");
            require(r.phi == rat_abs(Rat(2 - 2 * g, d) + Rat(r.optimal_shift)),
                    "phi residue formula");
            require(r.phi < 1, "phi inside the optimality window");
        }
    ConeResult spot1 = cone_example(2, 1);
    require(spot1.optimal_shift == 2 && spot1.phi == 0, "spot value g=2, degL=1");
    ConeResult spot2 = cone_example(3, 3);
    require(spot2.optimal_shift == 1 && spot2.phi == Rat(1, 3), "spot value g=3, degL=3");
    for (long long g : {0LL, 1LL})
        for (long long d : {1LL, 2LL, 3LL}) {
            ConeResult r = cone_example(g, d);
            require(r.optimal_shift == 0 && r.phi == 0, "low genus already optimal");
        }
}

// ------------------------------------------------------------ criterion 10

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_command(const std::string& command) {
    CommandResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe)
        throw Failure{"cannot launch: " + command};
    char buffer[4096];
    std::size_t got;
    while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0)
        result.output.append(buffer, got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

void cli_determinism() {
    const std::string cli = GRADESTAB_CLI_PATH;
    const std::string fixtures = GRADESTAB_FIXTURE_DIR;
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"count", "count.json"},       {"coeffs", "coeffs.json"},
        {"cesaro", "cesaro.json"},     {"module", "module.json"},
        {"hn", "hn.json"},             {"phi", "phi.json"},
        {"hecke", "hecke.json"},       {"optimize", "optimize.json"},
        {"compare", "compare.json"},   {"cone", "cone.json"},
    };
    for (const auto& [command, fixture] : cases) {
        for (const char* mode : {" --json", ""}) {
            const std::string invocation =
                cli + " " + command + mode + " -f " + fixtures + "/" + fixture;
            CommandResult first = run_command(invocation);
            CommandResult second = run_command(invocation);
            require(first.exit_code == 0, command + " exits 0");
            require(!first.output.empty(), command + " produces output");
            require(first.output == second.output && first.exit_code == second.exit_code,
                    command + " is byte-identical across runs");
        }
    }

    // machine reports carry the expected values
    const auto outputs_of = [&](const std::string& command, const std::string& fixture) {
        CommandResult run =
            run_command(cli + " " + command + " --json -f " + fixtures + "/" + fixture);
        require(run.exit_code == 0, command + " exits 0");
        return Json::parse(run.output).at("outputs");
    };
    require(outputs_of("count", "count.json").at("count") == "9", "count fixture value");
    Json hn = outputs_of("hn", "hn.json");
    require(hn.at("stages").size() == 2 && hn.at("stages")[0].at("slope") == "-1" &&
                hn.at("stages")[1].at("slope") == "-2",
            "hn fixture stages");
    Json optimized = outputs_of("optimize", "optimize.json");
    require(optimized.at("shifts") == Json::array({"1", "1"}) &&
                optimized.at("steps") == 1 && optimized.at("phi") == "0",
            "optimize fixture result");
    Json cone = outputs_of("cone", "cone.json");
    require(cone.at("optimal_shift") == 2 && cone.at("phi") == "0", "cone fixture result");
    Json compared = outputs_of("compare", "compare.json");
    require(compared.at("classification") == "parallel_transport" &&
                compared.at("translate") == "1",
            "compare fixture result");

    // validation failures exit 2
    CommandResult missing_x =
        run_command("echo '{\"algebra\": {\"weights\": [\"1\",\"2\"]}}' | " + cli +
                    " count 2>/dev/null");
    require(missing_x.exit_code == 2, "missing parameter x exits 2");

    CommandResult verify =
        run_command(cli + " verify-examples -f " + fixtures + "/verify_examples.json");
    require(verify.exit_code == 0, "verify-examples passes on the shipped fixture");
    CommandResult builtin = run_command(cli + " verify-examples");
    require(builtin.exit_code == 0, "verify-examples passes on builtin expectations");
    CommandResult corrupt = run_command(
        cli + " verify-examples --json -f " + std::string(GRADESTAB_TEST_DATA_DIR) +
        "/verify_examples_corrupt.json");
    require(corrupt.exit_code == 1, "verify-examples fails on the corrupted fixture");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
        {"1 counting oracle", counting_oracle},
        {"2 riemann-roch coefficients", riemann_roch_coefficients},
        {"3 cesaro convergence", cesaro_convergence},
        {"4 degree and slope laws", degree_slope_laws},
        {"5 hn filtration properties", hn_properties},
        {"6 plane tangent reproduction", plane_tangent_example},
        {"7 descent and termination", descent_and_termination},
        {"8 uniqueness on translates", uniqueness_on_translates},
        {"9 cone over a curve grid", cone_grid},
        {"10 cli determinism and verification", cli_determinism},
    };

    int failures = 0;
    for (const auto& [name, body] : criteria) {
        try {
            body();
            std::cout << "PASS  " << name << "\n";
        } catch (const Failure& f) {
            ++failures;
            std::cout << "FAIL  " << name << ": " << f.message << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "FAIL  " << name << ": unexpected exception: " << e.what() << "\n";
        }
    }
    std::cout << (failures == 0 ? "all criteria passed" : "criteria failed") << " ("
              << criteria.size() - failures << "/" << criteria.size() << ")\n";
    return failures == 0 ? 0 : 1;
}

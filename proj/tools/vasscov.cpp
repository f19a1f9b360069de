// vasscov -- command-line front door for the VASS coverability toolkit.
//
// Subcommands: solve, oracle, bound, audit, gen, compile, transform,
// suite.  Exit codes: 0 answer computed (yes), 1 answer computed (no),
// 2 usage or input error, 10 search budget exhausted.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "vasscov/bounds.hpp"
#include "vasscov/core.hpp"
#include "vasscov/io.hpp"
#include "vasscov/reduce.hpp"
#include "vasscov/solve.hpp"
#include "vasscov/suites.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 10;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw vasscov::ModelError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_witness(const vasscov::Vass& vass, const vasscov::Witness& w) {
    std::cout << vasscov::emit_run(vass, w.run);
    std::cout << vasscov::emit_stats(w.stats);
}

int cmd_solve(const std::string& file, const std::string& algo, const std::string& cap_opt,
              std::size_t budget) {
    using namespace vasscov;
    Instance inst = parse_instance(slurp(file));
    Report report = make_report(inst, algo);

    if (algo == "forward") {
        BigInt cap;
        bool budget_limited = false;
        if (cap_opt == "auto") {
            ThinProfile profile = thin_profile(inst);
            cap = profile.L[inst.vass.dimension()];
            if (cap > BigInt(budget)) {
                cap = budget;
                budget_limited = true;
            }
        } else {
            cap = BigInt(cap_opt);
        }
        SolveResult r = forward_cover(inst, cap);
        report.answer = r.answer == Answer::Found ? "yes"
                        : r.answer == Answer::DefinitiveNo ? "no"
                                                           : "budget-exhausted";
        if (r.witness) report.witness_len = r.witness->run.len();
        std::cout << emit_report(report);
        if (budget_limited) std::cout << "cap=budget-limited\n";
        if (r.witness) print_witness(inst.vass, *r.witness);
        if (r.answer == Answer::Found) return kExitYes;
        return r.answer == Answer::DefinitiveNo ? kExitNo : kExitBudget;
    }
    if (algo == "backward") {
        BackwardResult r = backward_cover(inst);
        report.answer = r.coverable ? "yes" : "no";
        std::cout << emit_report(report);
        std::size_t basis_size = 0;
        for (const auto& per_state : r.basis.basis) basis_size += per_state.size();
        std::cout << "rounds=" << r.rounds << " basis_size=" << basis_size << "\n";
        return r.coverable ? kExitYes : kExitNo;
    }
    if (algo == "bounded-dfs" || algo == "ztest") {
        BoundedResult r = algo == "ztest" ? ztest_bounded_search(inst) : bounded_dfs(inst);
        report.answer = r.found ? "yes" : "no";
        if (r.witness) report.witness_len = r.witness->run.len();
        std::cout << emit_report(report);
        std::cout << "nodes_expanded=" << r.nodes_expanded
                  << " expansion_budget=" << r.expansion_budget << "\n";
        if (r.witness) print_witness(inst.vass, *r.witness);
        return r.found ? kExitYes : kExitNo;
    }
    std::cerr << "unknown algorithm '" << algo << "'\n";
    return kExitUsage;
}

int cmd_oracle(const std::string& file, std::size_t budget) {
    using namespace vasscov;
    Instance inst = parse_instance(slurp(file));
    OracleResult r = shortest_witness_oracle(inst, budget);
    Report report = make_report(inst, "oracle");
    report.answer = r.outcome == OracleOutcome::Found ? "yes"
                    : r.outcome == OracleOutcome::ExhaustedNo ? "no"
                                                              : "budget-exhausted";
    if (r.run) report.witness_len = r.run->len();
    std::cout << emit_report(report);
    std::cout << "nodes_expanded=" << r.nodes_expanded << "\n";
    if (r.run) std::cout << emit_run(inst.vass, *r.run);
    if (r.outcome == OracleOutcome::Found) return kExitYes;
    return r.outcome == OracleOutcome::ExhaustedNo ? kExitNo : kExitBudget;
}

int cmd_bound(long long n, std::size_t d) {
    vasscov::ThinProfile p = vasscov::thin_profile(n, d);
    for (std::size_t i = 0; i <= d; ++i) std::cout << "L[" << i << "]=" << p.L[i] << "\n";
    for (std::size_t i = 0; i <= d; ++i) std::cout << "M[" << i << "]=" << p.M[i] << "\n";
    return kExitYes;
}

int cmd_audit(const std::string& instance_file, const std::string& run_file) {
    using namespace vasscov;
    Instance inst = parse_instance(slurp(instance_file));
    Run run = parse_run(inst.vass, slurp(run_file));
    AuditReport r = audit_witness(inst, run);
    std::cout << "n=" << r.n << " d=" << r.d << " run_len=" << r.run_len << "\n";
    std::cout << "total_bound=" << r.total_bound << " within_total=" << std::boolalpha
              << r.within_total << "\n";
    std::cout << "thin_len=" << r.thin_len << " thin_bound=" << r.thin_bound
              << " within_thin=" << r.within_thin << "\n";
    std::cout << "tail_len=" << r.tail_len << " tail_bound=" << r.tail_bound
              << " within_tail=" << r.within_tail << "\n";
    std::cout << "distinct_configurations=" << r.distinct_configurations << "\n";
    bool ok = r.within_total && r.within_thin && r.within_tail;
    return ok ? kExitYes : kExitNo;
}

int cmd_gen(const std::string& kind, const std::string& file, std::size_t d, bool unary,
            bool eliminate) {
    using namespace vasscov;
    Instance inst = [&] {
        if (kind == "clique") return gen_clique_instance(parse_graph(slurp(file))).instance;
        if (kind == "cycle") return gen_cycle_instance(parse_graph(slurp(file))).instance;
        if (kind == "hyperclique")
            return gen_hyperclique_instance(parse_hypergraph(slurp(file)), d).instance;
        throw ModelError("unknown generator '" + kind + "'");
    }();
    if (eliminate) {
        ZeroTestSchedule sched = static_schedule(inst);
        inst = eliminate_zero_tests(inst, sched).instance;
    }
    if (unary) inst = to_unary(inst);
    std::cout << emit_instance(inst);
    return kExitYes;
}

int cmd_compile(const std::string& file) {
    using namespace vasscov;
    CounterProgram prog = parse_program(slurp(file));
    CompiledProgram cp = compile_program(prog);
    std::size_t d = cp.vass.dimension();
    Instance inst{cp.vass, Configuration{cp.entry, std::vector<Counter>(d, 0)},
                  Configuration{cp.exit, std::vector<Counter>(d, 0)}, Mode::Cover, std::nullopt};
    std::cout << emit_instance(inst);
    return kExitYes;
}

int cmd_transform(const std::string& kind, const std::string& file) {
    using namespace vasscov;
    Instance inst = parse_instance(slurp(file));
    Instance out = [&] {
        if (kind == "cover2reach") return cover_to_reach(inst);
        if (kind == "reach2cover") return bounded_reach_to_cover(inst);
        if (kind == "opposite") return add_opposite_counter(inst);
        throw ModelError("unknown transform '" + kind + "'");
    }();
    std::cout << emit_instance(out);
    return kExitYes;
}

int cmd_suite(const std::string& name, std::uint64_t seed) {
    vasscov::SuiteResult r = vasscov::run_suite(name, seed);
    for (const auto& line : r.lines) std::cout << line << "\n";
    std::cout << "suite=" << name << " seed=" << seed << " cases=" << r.cases
              << " failures=" << r.failures.size() << " ok=" << (r.ok ? "true" : "false")
              << "\n";
    for (const auto& f : r.failures) std::cerr << "FAIL " << f << "\n";
    return r.ok ? kExitYes : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"VASS coverability/reachability toolkit"};
    app.require_subcommand(1);
    app.footer(
        "Formats:\n"
        "  instance:   vass d=<d> / state <name> / trans <src> <dst> <u1..ud> /\n"
        "              ztest <src> <dst> <i> / init <state> <v..> / target <state> <v..> /\n"
        "              mode cover|reach / bound <B>   ('#' comments)\n"
        "  graph:      graph k=<k> mode=partite|circle / part <i>: v.. / edge u v\n"
        "  hypergraph: hypergraph parts=<l> / part <i>: v.. / hedge u v w\n"
        "  program:    counters x y.. / inc|dec|ztest <c> / multiply|divide <c> <p> /\n"
        "              edge <pu> <pv> / hyperedge <pa> <pb> <pc> / guess { ..;.. | .. }\n"
        "  run:        len=<k> followed by one '<state> <v1> .. <vd>' line per step\n"
        "Exit codes: 0 yes, 1 no, 2 usage/input error, 10 budget exhausted.");

    std::string file, algo = "forward", cap = "auto", kind, run_file, suite_name;
    std::size_t budget = 1'000'000, d = 1;
    long long bn = 0;
    std::size_t bd = 0;
    std::uint64_t seed = 1;
    bool unary = false, eliminate = false;

    auto* solve = app.add_subcommand("solve", "Decide an instance with a chosen solver");
    solve->add_option("file", file)->required();
    solve->add_option("--algo", algo)->check(CLI::IsMember({"forward", "backward", "bounded-dfs", "ztest"}));
    solve->add_option("--cap", cap, "forward search cap: auto (= L_d, budget-limited) or a number");
    solve->add_option("--budget", budget);

    auto* oracle = app.add_subcommand("oracle", "Shortest-witness reference search");
    oracle->add_option("file", file)->required();
    oracle->add_option("--budget", budget);

    auto* bound = app.add_subcommand("bound", "Print the L_i / M_i length-bound profile");
    bound->add_option("n", bn)->required();
    bound->add_option("d", bd)->required();

    auto* audit = app.add_subcommand("audit", "Check a witness run against the length bounds");
    audit->add_option("instance", file)->required();
    audit->add_option("run", run_file)->required();

    auto* gen = app.add_subcommand("gen", "Generate a hardness instance from a graph");
    gen->add_option("kind", kind)->required()->check(CLI::IsMember({"clique", "cycle", "hyperclique"}));
    gen->add_option("file", file)->required();
    gen->add_option("--d", d, "hyperclique dimension parameter");
    gen->add_flag("--unary", unary, "split updates into unit steps");
    gen->add_flag("--eliminate-ztests", eliminate, "apply controlling-counter elimination");

    auto* compile = app.add_subcommand("compile", "Compile a counter program to an instance");
    compile->add_option("file", file)->required();

    auto* transform = app.add_subcommand("transform", "Rewrite an instance between modes");
    transform->add_option("kind", kind)->required()->check(CLI::IsMember({"cover2reach", "reach2cover", "opposite"}));
    transform->add_option("file", file)->required();

    auto* suite = app.add_subcommand("suite", "Run a seeded property suite");
    suite->add_option("name", suite_name)->required();
    suite->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return kExitYes;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (solve->parsed()) return cmd_solve(file, algo, cap, budget);
        if (oracle->parsed()) return cmd_oracle(file, budget);
        if (bound->parsed()) return cmd_bound(bn, bd);
        if (audit->parsed()) return cmd_audit(file, run_file);
        if (gen->parsed()) return cmd_gen(kind, file, d, unary, eliminate);
        if (compile->parsed()) return cmd_compile(file);
        if (transform->parsed()) return cmd_transform(kind, file);
        if (suite->parsed()) return cmd_suite(suite_name, seed);
    } catch (const vasscov::BudgetExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const vasscov::ModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

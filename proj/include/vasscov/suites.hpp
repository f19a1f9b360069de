// suites.hpp -- seeded randomized property suites: instance and graph
// generators, independent brute-force graph arbiters, and the five
// suite runners (agreement | bounds | gadgets | reductions |
// elimination).  Every suite is a pure function of its seed; per-case
// results come back as machine-readable `case=<id> ...` lines.

#ifndef VASSCOV_SUITES_HPP
#define VASSCOV_SUITES_HPP

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "core.hpp"
#include "reduce.hpp"
#include "rng.hpp"
#include "solve.hpp"

namespace vasscov {

struct SuiteResult {
    bool ok = true;
    std::size_t cases = 0;
    std::vector<std::string> lines;
    std::vector<std::string> failures;

    void record(const std::string& line) { lines.push_back(line); }
    void fail(const std::string& why) {
        ok = false;
        failures.push_back(why);
    }
};

class UnknownSuite : public ModelError {
public:
    explicit UnknownSuite(const std::string& name)
        : ModelError("UnknownSuite: '" + name + "'") {}
};

// ---------------------------------------------------------------------------
// Brute-force graph arbiters (independent of the VASS constructions)

inline bool has_partite_clique(const PartitionedGraph& g) {
    // One vertex per part, all pairs adjacent; depth-first over parts.
    std::vector<std::size_t> pick(g.k(), 0);
    std::vector<const std::string*> chosen;
    std::function<bool(std::size_t)> rec = [&](std::size_t part) -> bool {
        if (part == g.k()) return true;
        for (const auto& v : g.parts[part]) {
            bool ok = true;
            for (const auto* u : chosen)
                if (!g.has_edge(*u, v)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(&v);
            if (rec(part + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    return rec(0);
}

inline bool has_layered_cycle(const PartitionedGraph& g) {
    // A cycle visiting one vertex per layer in order and returning to its
    // layer-0 start vertex.
    std::function<bool(std::size_t, const std::string&, const std::string&)> rec =
        [&](std::size_t layer, const std::string& cur, const std::string& start) -> bool {
        if (layer == g.k()) return g.has_edge(cur, start);
        for (const auto& v : g.parts[layer])
            if (g.has_edge(cur, v) && rec(layer + 1, v, start)) return true;
        return false;
    };
    for (const auto& v0 : g.parts[0])
        if (rec(1, v0, v0)) return true;
    return false;
}

inline bool has_hyperclique4(const Hypergraph3& h) {
    // d=1: one vertex per part (4 parts), all 4 cross-part triples present.
    if (h.parts.size() != 4) throw GraphError("hyperclique arbiter expects 4 parts");
    for (const auto& a : h.parts[0])
        for (const auto& b : h.parts[1])
            for (const auto& c : h.parts[2])
                for (const auto& d : h.parts[3])
                    if (h.has_hyperedge(a, b, c) && h.has_hyperedge(a, b, d) &&
                        h.has_hyperedge(a, c, d) && h.has_hyperedge(b, c, d))
                        return true;
    return false;
}

// ---------------------------------------------------------------------------
// Random inputs

// Random unary VASS whose full reachable set keeps every counter <= cap
// (verified by exhaustive search, so a declared bound of `cap` never
// truncates any run).  Used by the agreement suite: forward/backward
// answer unbounded coverability, the bounded solvers answer the bounded
// question, and on these instances the two coincide.
inline std::optional<Instance> sample_bounded_unary(Rng& rng, std::size_t max_d,
                                                    std::size_t max_states, Counter cap) {
    std::size_t d = 1 + rng.below(max_d);
    std::size_t nq = 1 + rng.below(max_states);
    std::vector<std::string> states;
    for (std::size_t i = 0; i < nq; ++i) states.push_back("q" + std::to_string(i));
    std::size_t nt = 1 + rng.below(nq * 2 + 2);
    std::vector<Transition> transitions;
    for (std::size_t i = 0; i < nt; ++i) {
        Update u(d, 0);
        for (std::size_t j = 0; j < d; ++j) u[j] = rng.range(-1, 1);
        transitions.push_back(Transition{rng.below(nq), rng.below(nq), std::move(u), std::nullopt});
    }
    Vass vass(d, states, std::move(transitions));

    std::vector<Counter> init(d, 0);
    for (std::size_t j = 0; j < d; ++j) init[j] = rng.below(2);
    Configuration c0{rng.below(nq), init};

    // Exhaustively check the reachable set against the cap.
    std::vector<std::vector<std::size_t>> out(nq);
    for (std::size_t ti = 0; ti < vass.transitions().size(); ++ti)
        out[vass.transitions()[ti].src].push_back(ti);
    std::set<std::pair<std::size_t, std::vector<Counter>>> seen;
    std::vector<Configuration> stack{c0};
    seen.insert({c0.state, c0.counters});
    while (!stack.empty()) {
        Configuration c = std::move(stack.back());
        stack.pop_back();
        for (std::size_t ti : out[c.state]) {
            auto nc = try_step(vass, c, vass.transitions()[ti]);
            if (!nc) continue;
            for (Counter x : nc->counters)
                if (x > cap) return std::nullopt;  // cap would truncate: reject
            if (seen.insert({nc->state, nc->counters}).second) stack.push_back(std::move(*nc));
        }
        if (seen.size() > 4096) return std::nullopt;
    }

    // Random target; bias towards reachable-ish values for a yes/no mix.
    std::vector<Counter> tgt(d, 0);
    for (std::size_t j = 0; j < d; ++j) tgt[j] = rng.below(4);
    return Instance{std::move(vass), std::move(c0), Configuration{rng.below(nq), std::move(tgt)},
                    Mode::Cover, cap};
}

// Random small coverable unary instance with instance_size <= max_n; the
// target is taken below a configuration reached by a short random walk,
// which guarantees coverability.
inline std::optional<Instance> sample_small_coverable(Rng& rng, Counter max_n) {
    std::size_t d = 1 + rng.below(2);
    std::size_t nq = 1 + rng.below(3);
    std::vector<std::string> states;
    for (std::size_t i = 0; i < nq; ++i) states.push_back("q" + std::to_string(i));
    std::size_t nt = 1 + rng.below(4);
    std::vector<Transition> transitions;
    for (std::size_t i = 0; i < nt; ++i) {
        Update u(d, 0);
        for (std::size_t j = 0; j < d; ++j) u[j] = rng.range(-1, 1);
        transitions.push_back(Transition{rng.below(nq), rng.below(nq), std::move(u), std::nullopt});
    }
    Vass vass(d, states, std::move(transitions));

    Configuration c0{rng.below(nq), std::vector<Counter>(d, 0)};
    for (std::size_t j = 0; j < d; ++j) c0.counters[j] = rng.below(2);

    // Short random walk over enabled transitions.
    Configuration cur = c0;
    std::size_t steps = rng.below(7);
    for (std::size_t s = 0; s < steps; ++s) {
        std::vector<Configuration> nexts;
        for (const auto& t : vass.transitions())
            if (auto nc = try_step(vass, cur, t)) nexts.push_back(std::move(*nc));
        if (nexts.empty()) break;
        cur = nexts[rng.below(nexts.size())];
    }
    Configuration target = cur;
    for (std::size_t j = 0; j < d; ++j)
        if (target.counters[j] > 0 && rng.chance(1, 2)) --target.counters[j];

    Instance inst{std::move(vass), std::move(c0), std::move(target), Mode::Cover, std::nullopt};
    if (instance_size(inst) > max_n) return std::nullopt;
    return inst;
}

inline PartitionedGraph sample_partite_graph(Rng& rng, std::size_t k, std::size_t max_per_part) {
    PartitionedGraph g;
    g.layout = PartitionedGraph::Layout::Partite;
    g.parts.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t n = 1 + rng.below(max_per_part);
        for (std::size_t j = 0; j < n; ++j)
            g.parts[i].push_back("v" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            for (const auto& u : g.parts[i])
                for (const auto& v : g.parts[j])
                    if (rng.chance(2, 5)) g.edges.emplace_back(u, v);
    return g;
}

inline PartitionedGraph sample_circle_graph(Rng& rng, std::size_t k, std::size_t max_per_layer) {
    PartitionedGraph g;
    g.layout = PartitionedGraph::Layout::Circle;
    g.parts.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t n = 1 + rng.below(max_per_layer);
        for (std::size_t j = 0; j < n; ++j)
            g.parts[i].push_back("v" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    }
    for (std::size_t i = 0; i < k; ++i)
        for (const auto& u : g.parts[i])
            for (const auto& v : g.parts[(i + 1) % k])
                if (rng.chance(1, 2)) g.edges.emplace_back(u, v);
    return g;
}

inline Hypergraph3 sample_hypergraph4(Rng& rng) {
    Hypergraph3 h;
    h.parts.resize(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            h.parts[i].push_back("v" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b)
            for (std::size_t c = b + 1; c < 4; ++c)
                for (const auto& u : h.parts[a])
                    for (const auto& v : h.parts[b])
                        for (const auto& w : h.parts[c])
                            if (rng.chance(3, 5)) h.hyperedges.push_back({u, v, w});
    return h;
}

// ---------------------------------------------------------------------------
// Helpers

// Exhaustive reachable exit-value collection for gadget checks: explores
// the guarded VASS under the bound and gathers counter vectors at a
// given state.  This is the same semantics as ztest_bounded_search's
// exploration, returning all exit configurations at once.
inline std::set<std::vector<Counter>> reachable_at_state(const Instance& inst,
                                                         std::size_t state) {
    const Vass& vass = inst.vass;
    std::vector<std::vector<std::size_t>> out(vass.states().size());
    for (std::size_t ti = 0; ti < vass.transitions().size(); ++ti)
        out[vass.transitions()[ti].src].push_back(ti);
    std::set<std::pair<std::size_t, std::vector<Counter>>> seen;
    std::set<std::vector<Counter>> hits;
    std::vector<Configuration> stack{inst.init};
    seen.insert({inst.init.state, inst.init.counters});
    if (inst.init.state == state) hits.insert(inst.init.counters);
    while (!stack.empty()) {
        Configuration c = std::move(stack.back());
        stack.pop_back();
        for (std::size_t ti : out[c.state]) {
            auto nc = try_step(vass, c, vass.transitions()[ti], inst.bound);
            if (!nc) continue;
            if (seen.insert({nc->state, nc->counters}).second) {
                if (nc->state == state) hits.insert(nc->counters);
                stack.push_back(std::move(*nc));
            }
        }
    }
    return hits;
}

// ---------------------------------------------------------------------------
// Suite runners

// Four solvers against the shortest-witness oracle on structurally
// bounded unary instances; forward witness length must equal the
// oracle's minimum.
inline SuiteResult run_agreement_suite(std::uint64_t seed, std::size_t cases = 500) {
    Rng rng(seed);
    SuiteResult res;
    while (res.cases < cases) {
        auto inst = sample_bounded_unary(rng, 3, 5, 8);
        if (!inst) continue;
        std::size_t id = res.cases++;

        Instance unbounded = *inst;
        unbounded.bound = std::nullopt;

        ThinProfile profile = thin_profile(*inst);
        BigInt cap = profile.L[inst->vass.dimension()];

        auto fwd = forward_cover(unbounded, cap);
        auto bwd = backward_cover(unbounded);
        auto dfs = bounded_dfs(*inst);
        auto oracle = shortest_witness_oracle(*inst, 5'000'000);
        if (oracle.outcome == OracleOutcome::BudgetExhausted) {
            res.fail("case " + std::to_string(id) + ": oracle budget exhausted");
            continue;
        }
        bool truth = oracle.outcome == OracleOutcome::Found;
        bool f = fwd.answer == Answer::Found;
        bool agree = (f == truth) && (bwd.coverable == truth) && (dfs.found == truth);
        if (agree && f && fwd.witness->run.len() != oracle.run->len()) {
            agree = false;
            res.fail("case " + std::to_string(id) + ": forward witness len " +
                     std::to_string(fwd.witness->run.len()) + " != oracle min " +
                     std::to_string(oracle.run->len()));
        } else if (!agree) {
            res.fail("case " + std::to_string(id) + ": solver disagreement");
        }
        std::ostringstream line;
        line << "case=" << id << " answer=" << (truth ? "yes" : "no")
             << " agree=" << (agree ? "true" : "false");
        res.record(line.str());
    }
    return res;
}

// Minimal witnesses from the oracle against the L_d / thin-prefix / tail
// length bounds on small coverable instances.
inline SuiteResult run_bounds_suite(std::uint64_t seed, std::size_t cases = 500) {
    Rng rng(seed);
    SuiteResult res;
    while (res.cases < cases) {
        auto inst = sample_small_coverable(rng, 10);
        if (!inst) continue;
        auto oracle = shortest_witness_oracle(*inst, 5'000'000);
        if (oracle.outcome != OracleOutcome::Found) continue;  // keep coverable ones only
        std::size_t id = res.cases++;

        AuditReport report = audit_witness(*inst, *oracle.run);
        bool pass = report.within_total && report.within_thin && report.within_tail &&
                    report.distinct_configurations;
        if (!pass)
            res.fail("case " + std::to_string(id) + ": witness of len " +
                     std::to_string(report.run_len) + " violates a bound (n=" +
                     std::to_string(report.n) + ", d=" + std::to_string(report.d) + ")");
        std::ostringstream line;
        line << "case=" << id << " answer=yes agree=" << (pass ? "true" : "false")
             << " len=" << report.run_len << " n=" << report.n << " d=" << report.d;
        res.record(line.str());
    }
    return res;
}

// Exhaustive Multiply/Divide semantics for v in [1,20], p in {2,3,5},
// B = 120: the compiled gadget exits exactly at v*p (Multiply) or at v/p
// iff p divides v (Divide), with y = 0 -- zero tolerance.
inline SuiteResult run_gadgets_suite(std::uint64_t seed, std::size_t = 0) {
    (void)seed;  // exhaustive, not randomized; seed kept for interface uniformity
    SuiteResult res;
    const Counter B = 120;
    for (Counter p : {2, 3, 5}) {
        for (Counter v = 1; v <= 20; ++v) {
            for (bool mul : {true, false}) {
                CounterProgram prog;
                prog.counters = {"x", "y"};
                prog.body = {mul ? Instr::multiply(0, p) : Instr::divide(0, p)};
                auto cp = compile_program(prog);
                Instance inst{cp.vass, Configuration{cp.entry, {v, 0}},
                              Configuration{cp.exit, {0, 0}}, Mode::Cover, B};
                std::set<std::vector<Counter>> exits = reachable_at_state(inst, cp.exit);

                std::set<std::vector<Counter>> expected;
                if (mul)
                    expected.insert({v * p, 0});
                else if (v % p == 0)
                    expected.insert({v / p, 0});
                bool pass = exits == expected;

                // Cross-check with the solver on the expected exit value.
                if (!expected.empty()) {
                    Instance reach{cp.vass, Configuration{cp.entry, {v, 0}},
                                   Configuration{cp.exit, *expected.begin()}, Mode::Reach, B};
                    auto r = ztest_bounded_search(reach);
                    if (!r.found) pass = false;
                } else {
                    auto r = ztest_bounded_search(inst);  // cover exit at all
                    if (r.found) pass = false;
                }

                std::size_t id = res.cases++;
                if (!pass)
                    res.fail("case " + std::to_string(id) + ": " +
                             (mul ? "multiply" : "divide") + " v=" + std::to_string(v) +
                             " p=" + std::to_string(p) + " wrong exit set");
                std::ostringstream line;
                line << "case=" << id << " answer=" << (expected.empty() ? "stuck" : "exit")
                     << " agree=" << (pass ? "true" : "false");
                res.record(line.str());
            }
        }
    }
    return res;
}

// The three reductions against brute-force graph enumeration, with the
// pinned zero-test counts, counter envelopes, and size envelopes.
inline SuiteResult run_reductions_suite(std::uint64_t seed, std::size_t cases = 250) {
    Rng rng(seed);
    SuiteResult res;
    std::size_t n_clique = cases * 2 / 5, n_cycle = cases * 2 / 5;
    std::size_t n_hyper = cases - n_clique - n_cycle;

    for (std::size_t i = 0; i < n_clique; ++i) {
        PartitionedGraph g = sample_partite_graph(rng, 3, 3);
        bool truth = has_partite_clique(g);
        auto gen = gen_clique_instance(g);
        auto r = ztest_bounded_search(gen.instance);
        bool pass = r.found == truth;
        if (r.found) {
            if (r.witness->stats.zero_test_steps != 30) {
                pass = false;
                res.fail("clique case " + std::to_string(i) + ": " +
                         std::to_string(r.witness->stats.zero_test_steps) + " zero-tests != 30");
            }
            Counter pmax = gen.assignment.max_prime();
            for (Counter m : r.witness->stats.max_counters)
                if (m > pmax * pmax * pmax) {
                    pass = false;
                    res.fail("clique case " + std::to_string(i) + ": counter above p_max^3");
                }
        } else if (!pass) {
            res.fail("clique case " + std::to_string(i) + ": answer " +
                     std::to_string(r.found) + " != triangle " + std::to_string(truth));
        }
        std::size_t id = res.cases++;
        std::ostringstream line;
        line << "case=" << id << " kind=clique answer=" << (truth ? "yes" : "no")
             << " agree=" << (pass ? "true" : "false");
        res.record(line.str());
    }

    for (std::size_t i = 0; i < n_cycle; ++i) {
        std::size_t k = 3 + rng.below(2);
        PartitionedGraph g = sample_circle_graph(rng, k, 3);
        bool truth = has_layered_cycle(g);
        auto gen = gen_cycle_instance(g);
        auto r = bounded_dfs(gen.instance);
        bool pass = r.found == truth;
        std::size_t nv = g.vertex_count();
        if (gen.instance.vass.states().size() > 2 * nv ||
            gen.instance.vass.transitions().size() > 2 * nv + g.edges.size()) {
            pass = false;
            res.fail("cycle case " + std::to_string(i) + ": size envelope violated");
        }
        if (r.found) {
            Counter q = static_cast<Counter>(gen.instance.vass.states().size());
            for (Counter m : r.witness->stats.max_counters)
                if (m > q) {
                    pass = false;
                    res.fail("cycle case " + std::to_string(i) + ": counter above |Q|");
                }
        } else if (!pass) {
            res.fail("cycle case " + std::to_string(i) + ": answer != k-cycle existence");
        }
        std::size_t id = res.cases++;
        std::ostringstream line;
        line << "case=" << id << " kind=cycle k=" << k << " answer=" << (truth ? "yes" : "no")
             << " agree=" << (pass ? "true" : "false");
        res.record(line.str());
    }

    for (std::size_t i = 0; i < n_hyper; ++i) {
        Hypergraph3 h = sample_hypergraph4(rng);
        bool truth = has_hyperclique4(h);
        auto gen = gen_hyperclique_instance(h, 1);
        auto r = ztest_bounded_search(gen.instance);
        bool pass = r.found == truth;
        if (r.found && r.witness->stats.zero_test_steps != 56) {
            pass = false;
            res.fail("hyperclique case " + std::to_string(i) + ": " +
                     std::to_string(r.witness->stats.zero_test_steps) + " zero-tests != 56");
        }
        if (!pass && r.found == truth)
            ;  // failure already recorded
        else if (!pass)
            res.fail("hyperclique case " + std::to_string(i) + ": answer != 4-hyperclique");
        std::size_t id = res.cases++;
        std::ostringstream line;
        line << "case=" << id << " kind=hyperclique answer=" << (truth ? "yes" : "no")
             << " agree=" << (pass ? "true" : "false");
        res.record(line.str());
    }
    return res;
}

// Zero-test elimination: instrumented reach answer equals the guarded
// answer on random hyperclique instances, the z identity holds at every
// configuration of lifted honest witnesses, and (at small scale, where
// the full counter box is tractable) plain bounded_dfs agrees too.
inline SuiteResult run_elimination_suite(std::uint64_t seed, std::size_t cases = 50) {
    Rng rng(seed);
    SuiteResult res;
    for (std::size_t i = 0; i < cases; ++i) {
        Hypergraph3 h = sample_hypergraph4(rng);
        auto gen = gen_hyperclique_instance(h, 1);
        auto guarded = ztest_bounded_search(gen.instance);
        auto sched = static_schedule(gen.instance);
        auto elim = eliminate_zero_tests(gen.instance, sched);
        auto dec = decide_instrumented_reach(elim);
        bool pass = dec.found == guarded.found;
        if (!pass)
            res.fail("case " + std::to_string(i) + ": instrumented answer " +
                     std::to_string(dec.found) + " != guarded " + std::to_string(guarded.found));
        if (guarded.found) {
            // Lift the guarded witness and check z = sum_i t_i * x_i at
            // every configuration (in particular at former guard points).
            Run lifted = instrumented_run_from_guarded(elim, guarded.witness->run);
            for (const auto& c : lifted.configurations) {
                Counter z = c.counters.back();
                Counter s = 0;
                for (std::size_t j = 0; j + 1 < c.counters.size(); ++j)
                    s += sched.t[c.state][j] * c.counters[j];
                if (z != s) {
                    pass = false;
                    res.fail("case " + std::to_string(i) + ": z identity violated");
                    break;
                }
            }
            if (pass && lifted.final().counters.back() != 0) {
                pass = false;
                res.fail("case " + std::to_string(i) + ": z nonzero at the final state");
            }
        }
        std::size_t id = res.cases++;
        std::ostringstream line;
        line << "case=" << id << " answer=" << (guarded.found ? "yes" : "no")
             << " agree=" << (pass ? "true" : "false");
        res.record(line.str());
    }

    // Small-scale cross-check with plain bounded_dfs, where exhausting
    // the instrumented counter box is tractable: single gadgets and
    // two-gadget chains over small values.
    for (Counter p : {2, 3}) {
        for (Counter v : {1, 2, 3, 4, 6}) {
            for (int shape = 0; shape < 3; ++shape) {
                CounterProgram prog;
                prog.counters = {"x", "y"};
                if (shape == 0)
                    prog.body = {Instr::multiply(0, p)};
                else if (shape == 1)
                    prog.body = {Instr::multiply(0, p), Instr::divide(0, p)};
                else
                    prog.body = {Instr::divide(0, p)};  // a genuine no when p does not divide v
                auto cp = compile_program(prog);
                Instance inst{cp.vass, Configuration{cp.entry, {v, 0}},
                              Configuration{cp.exit, {0, 0}}, Mode::Cover,
                              std::max<Counter>(v * p, 8)};
                auto guarded = ztest_bounded_search(inst);
                auto sched = static_schedule(inst);
                auto elim = eliminate_zero_tests(inst, sched);
                auto dfs = bounded_dfs(elim.instance);
                auto dec = decide_instrumented_reach(elim);
                bool pass = dfs.found == guarded.found && dec.found == guarded.found;
                if (shape != 2 && !guarded.found) pass = false;  // these must accept
                std::size_t id = res.cases++;
                if (!pass)
                    res.fail("small case " + std::to_string(id) +
                             ": bounded_dfs/instrumented disagreement");
                std::ostringstream line;
                line << "case=" << id << " answer=" << (guarded.found ? "yes" : "no")
                     << " agree=" << (pass ? "true" : "false") << " kind=smallscale";
                res.record(line.str());
            }
        }
    }
    return res;
}

// Transform equivalences (cover_to_reach, bounded_reach_to_cover,
// add_opposite_counter), each arbitrated by an independent solver.
inline SuiteResult run_transforms_suite(std::uint64_t seed, std::size_t cases = 120) {
    Rng rng(seed);
    SuiteResult res;
    std::size_t third = cases / 3;

    // cover_to_reach: oracle before (cover) vs oracle after (reach).
    for (std::size_t i = 0; i < third;) {
        auto inst = sample_bounded_unary(rng, 2, 4, 8);
        if (!inst) continue;
        ++i;
        Instance reach = cover_to_reach(*inst);
        auto before = shortest_witness_oracle(*inst, 5'000'000);
        auto after = shortest_witness_oracle(reach, 5'000'000);
        bool pass = (before.outcome == OracleOutcome::Found) ==
                    (after.outcome == OracleOutcome::Found);
        std::size_t id = res.cases++;
        if (!pass) res.fail("cover_to_reach case " + std::to_string(id) + ": answer changed");
        std::ostringstream line;
        line << "case=" << id << " kind=cover2reach answer="
             << (before.outcome == OracleOutcome::Found ? "yes" : "no")
             << " agree=" << (pass ? "true" : "false");
        res.record(line.str());
    }

    // bounded_reach_to_cover: bounded_dfs before vs after.
    for (std::size_t i = 0; i < third;) {
        auto inst = sample_bounded_unary(rng, 2, 4, 8);
        if (!inst) continue;
        ++i;
        inst->mode = Mode::Reach;
        for (auto& x : inst->target.counters) x = rng.below(10);  // may exceed the bound
        Instance cover = bounded_reach_to_cover(*inst);
        auto before = bounded_dfs(*inst);
        auto after = bounded_dfs(cover);
        bool pass = before.found == after.found;
        std::size_t id = res.cases++;
        if (!pass) res.fail("reach_to_cover case " + std::to_string(id) + ": answer changed");
        std::ostringstream line;
        line << "case=" << id << " kind=reach2cover answer=" << (before.found ? "yes" : "no")
             << " agree=" << (pass ? "true" : "false");
        res.record(line.str());
    }

    // add_opposite_counter: bounded_dfs on the 1-dim reach input vs
    // forward_cover on the 2-dim cover output; sum invariant checked on
    // every witness configuration.
    while (res.cases < cases) {
        auto inst = sample_bounded_unary(rng, 1, 4, 8);
        if (!inst) continue;
        inst->mode = Mode::Reach;
        inst->init.counters = {0};
        inst->target.counters = {0};
        Instance cover = add_opposite_counter(*inst);
        auto before = bounded_dfs(*inst);
        auto after = forward_cover(cover, BigInt(1'000'000));
        bool pass = before.found == (after.answer == Answer::Found);
        std::size_t id = res.cases++;
        if (!pass) res.fail("opposite case " + std::to_string(id) + ": answer changed");
        if (after.answer == Answer::Found) {
            const Counter n = *inst->bound;
            for (const auto& c : after.witness->run.configurations)
                if (c.counters[0] + c.counters[1] != n) {
                    pass = false;
                    res.fail("opposite case " + std::to_string(id) + ": sum invariant violated");
                    break;
                }
        }
        std::ostringstream line;
        line << "case=" << id << " kind=opposite answer=" << (before.found ? "yes" : "no")
             << " agree=" << (pass ? "true" : "false");
        res.record(line.str());
    }
    return res;
}

inline SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
    if (name == "agreement") return run_agreement_suite(seed);
    if (name == "bounds") return run_bounds_suite(seed);
    if (name == "gadgets") return run_gadgets_suite(seed);
    if (name == "reductions") return run_reductions_suite(seed);
    if (name == "elimination") return run_elimination_suite(seed);
    if (name == "transforms") return run_transforms_suite(seed);
    throw UnknownSuite(name);
}

}  // namespace vasscov

#endif  // VASSCOV_SUITES_HPP

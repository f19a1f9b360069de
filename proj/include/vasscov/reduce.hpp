// reduce.hpp -- hardness-instance constructions: prime tooling, the
// counter-program gadget compiler (Multiply / Divide / Edge /
// VertexSelected / HyperEdge), the clique / cycle / hyperclique instance
// generators, controlling-counter zero-test elimination, and the
// coverability/reachability transforms.
//
// Counter programs are compiled into VASS with zero-guards.  The
// Multiply(x, p) gadget is two self-loop states: the first loop moves x
// into y one unit at a time, the second restores p units of x per unit
// of y; the loops are connected by zero-guard edges on x and then on y,
// so a run passes through iff x is exactly multiplied by p.  Divide is
// the mirror image and gets stuck when p does not divide x.

#ifndef VASSCOV_REDUCE_HPP
#define VASSCOV_REDUCE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <unordered_set>
#include <string>
#include <vector>

#include "core.hpp"
#include "solve.hpp"

namespace vasscov {

// ---------------------------------------------------------------------------
// Primes

// First m primes, ascending.
inline std::vector<Counter> primes_first(std::size_t m) {
    if (m == 0) return {};
    // p_m <= m (ln m + ln ln m) for m >= 6; sieve a safe envelope.
    std::size_t limit = 30;
    if (m >= 6) {
        double dm = static_cast<double>(m);
        limit = static_cast<std::size_t>(dm * (std::log(dm) + std::log(std::log(dm)))) + 10;
    }
    std::vector<Counter> primes;
    while (primes.size() < m) {
        primes.clear();
        std::vector<bool> composite(limit + 1, false);
        for (std::size_t i = 2; i <= limit && primes.size() < m; ++i) {
            if (composite[i]) continue;
            primes.push_back(static_cast<Counter>(i));
            for (std::size_t j = i * i; j <= limit; j += i) composite[j] = true;
        }
        limit *= 2;
    }
    primes.resize(m);
    return primes;
}

// ---------------------------------------------------------------------------
// Graph inputs

class GraphError : public ModelError {
public:
    explicit GraphError(const std::string& what) : ModelError(what) {}
};

struct PartitionedGraph {
    enum class Layout { Partite, Circle };

    Layout layout = Layout::Partite;
    std::vector<std::vector<std::string>> parts;
    // Partite mode: unordered pairs across distinct parts.
    // Circle mode: directed edges from layer i to layer i+1 mod k.
    std::vector<std::pair<std::string, std::string>> edges;

    std::size_t k() const { return parts.size(); }

    std::size_t part_of(const std::string& v) const {
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (const auto& u : parts[i])
                if (u == v) return i;
        throw GraphError("unknown vertex: " + v);
    }

    std::size_t vertex_count() const {
        std::size_t n = 0;
        for (const auto& p : parts) n += p.size();
        return n;
    }

    bool has_edge(const std::string& u, const std::string& v) const {
        for (const auto& [a, b] : edges) {
            if (a == u && b == v) return true;
            if (layout == Layout::Partite && a == v && b == u) return true;
        }
        return false;
    }

    void check() const {
        std::set<std::string> seen;
        for (const auto& p : parts)
            for (const auto& v : p)
                if (!seen.insert(v).second) throw GraphError("duplicate vertex: " + v);
        for (const auto& [u, v] : edges) {
            std::size_t pu = part_of(u);
            std::size_t pv = part_of(v);
            if (layout == Layout::Partite) {
                if (pu == pv)
                    throw GraphError("NotKPartite: edge {" + u + "," + v + "} inside part " +
                                     std::to_string(pu + 1));
            } else {
                if (pv != (pu + 1) % parts.size())
                    throw GraphError("NotCircleLayered: edge " + u + " -> " + v +
                                     " does not go to the next layer");
            }
        }
    }
};

struct Hypergraph3 {
    std::vector<std::vector<std::string>> parts;
    std::vector<std::array<std::string, 3>> hyperedges;

    std::size_t part_of(const std::string& v) const {
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (const auto& u : parts[i])
                if (u == v) return i;
        throw GraphError("unknown vertex: " + v);
    }

    bool has_hyperedge(const std::string& a, const std::string& b, const std::string& c) const {
        std::array<std::string, 3> key{a, b, c};
        std::sort(key.begin(), key.end());
        for (auto e : hyperedges) {
            std::sort(e.begin(), e.end());
            if (e == key) return true;
        }
        return false;
    }

    void check() const {
        std::set<std::string> seen;
        for (const auto& p : parts)
            for (const auto& v : p)
                if (!seen.insert(v).second) throw GraphError("duplicate vertex: " + v);
        for (const auto& e : hyperedges) {
            std::set<std::size_t> ps{part_of(e[0]), part_of(e[1]), part_of(e[2])};
            if (ps.size() != 3)
                throw GraphError("hyperedge {" + e[0] + "," + e[1] + "," + e[2] +
                                 "} does not span three distinct parts");
        }
    }
};

// Injective vertex -> prime map: parts in index order, vertices in
// declaration order, primes ascending from 2.
struct PrimeAssignment {
    std::vector<std::pair<std::string, Counter>> by_vertex;  // in assignment order

    Counter prime(const std::string& v) const {
        for (const auto& [name, p] : by_vertex)
            if (name == v) return p;
        throw GraphError("no prime assigned to vertex: " + v);
    }

    Counter max_prime() const {
        Counter m = 0;
        for (const auto& [name, p] : by_vertex) m = std::max(m, p);
        return m;
    }
};

inline PrimeAssignment assign_primes(const std::vector<std::vector<std::string>>& parts) {
    std::vector<std::string> order;
    for (const auto& p : parts) order.insert(order.end(), p.begin(), p.end());
    std::vector<Counter> primes = primes_first(order.size());
    PrimeAssignment a;
    for (std::size_t i = 0; i < order.size(); ++i) a.by_vertex.emplace_back(order[i], primes[i]);
    return a;
}

// ---------------------------------------------------------------------------
// Counter programs

class ProgramError : public ModelError {
public:
    explicit ProgramError(const std::string& what) : ModelError(what) {}
};

// One instruction of a counter program.  The last declared counter is the
// auxiliary counter used internally by the Multiply/Divide loops.
struct Instr {
    enum class Kind {
        AddUnit,         // counter, delta in {-1, +1}
        GuardZero,       // counter
        Guess,           // alternatives (may be empty: a dead branch)
        Multiply,        // counter, prime
        Divide,          // counter, prime
        Edge,            // primes[0], primes[1]; operates on counter 0
        VertexSelected,  // primes[0]; guesses over all non-auxiliary counters
        HyperEdge,       // primes[0..2]
    };

    Kind kind = Kind::AddUnit;
    std::size_t counter = 0;
    Counter delta = 0;
    std::vector<Counter> primes;
    std::vector<std::vector<Instr>> alternatives;

    static Instr add(std::size_t c, Counter d) { return Instr{Kind::AddUnit, c, d, {}, {}}; }
    static Instr ztest(std::size_t c) { return Instr{Kind::GuardZero, c, 0, {}, {}}; }
    static Instr guess(std::vector<std::vector<Instr>> alts) {
        return Instr{Kind::Guess, 0, 0, {}, std::move(alts)};
    }
    static Instr multiply(std::size_t c, Counter p) { return Instr{Kind::Multiply, c, 0, {p}, {}}; }
    static Instr divide(std::size_t c, Counter p) { return Instr{Kind::Divide, c, 0, {p}, {}}; }
    static Instr edge(Counter pu, Counter pv) { return Instr{Kind::Edge, 0, 0, {pu, pv}, {}}; }
    static Instr vertex_selected(Counter p) { return Instr{Kind::VertexSelected, 0, 0, {p}, {}}; }
    static Instr hyper_edge(Counter pu, Counter pv, Counter pw) {
        return Instr{Kind::HyperEdge, 0, 0, {pu, pv, pw}, {}};
    }
};

struct CounterProgram {
    std::vector<std::string> counters;  // last = auxiliary
    std::vector<Instr> body;
};

struct CompiledProgram {
    Vass vass;
    std::size_t entry = 0;  // q_I
    std::size_t exit = 0;   // q_F
};

namespace detail {

class ProgramCompiler {
public:
    explicit ProgramCompiler(const CounterProgram& program) : program_(program) {
        if (program.counters.size() < 2)
            throw ProgramError("a counter program needs at least one data counter plus the auxiliary");
        dim_ = program.counters.size();
        aux_ = dim_ - 1;
    }

    CompiledProgram compile() {
        std::size_t entry = fresh("q_I");
        std::size_t exit = fresh("q_F");
        emit_seq(program_.body, entry, exit, "");
        return CompiledProgram{Vass(dim_, std::move(states_), std::move(transitions_)), entry,
                               exit};
    }

private:
    std::size_t fresh(const std::string& name) {
        states_.push_back(name);
        return states_.size() - 1;
    }

    void plain(std::size_t from, std::size_t to, Update u) {
        transitions_.push_back(Transition{from, to, std::move(u), std::nullopt});
    }

    void guarded(std::size_t from, std::size_t to, std::size_t counter) {
        transitions_.push_back(Transition{from, to, Update(dim_, 0), counter});
    }

    Update unit(std::size_t counter, Counter delta) const {
        Update u(dim_, 0);
        u[counter] = delta;
        return u;
    }

    void check_counter(std::size_t c) const {
        if (c >= dim_) throw ProgramError("UnknownCounter: index " + std::to_string(c));
    }

    void emit_seq(const std::vector<Instr>& seq, std::size_t from, std::size_t to,
                  const std::string& prefix) {
        std::size_t cur = from;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            std::size_t next =
                (i + 1 == seq.size()) ? to : fresh(prefix + "L" + std::to_string(i + 1));
            emit(seq[i], cur, next, prefix + "i" + std::to_string(i));
            cur = next;
        }
        if (seq.empty()) plain(from, to, Update(dim_, 0));
    }

    // Algorithm of the multiply/divide loop pair: drain the source counter
    // into the auxiliary (by p for divide), then rebuild it (by p for
    // multiply).  States: a (first loop), b (second loop); the zero-guard
    // on the source counter connects a -> b and the guard on the auxiliary
    // leaves the gadget.
    void emit_mul_div(bool mul, std::size_t c, Counter p, std::size_t from, std::size_t to,
                      const std::string& prefix) {
        check_counter(c);
        if (c == aux_) throw ProgramError("gadget may not target the auxiliary counter");
        if (p < 2) throw ProgramError("gadget prime must be at least 2");
        std::size_t a = fresh(prefix + (mul ? "/mul" : "/div") + std::to_string(p) + "/a");
        std::size_t b = fresh(prefix + (mul ? "/mul" : "/div") + std::to_string(p) + "/b");
        plain(from, a, Update(dim_, 0));
        Update drain = unit(c, mul ? -1 : -p);
        drain[aux_] = 1;
        plain(a, a, std::move(drain));
        guarded(a, b, c);
        Update rebuild = unit(c, mul ? p : 1);
        rebuild[aux_] = -1;
        plain(b, b, std::move(rebuild));
        guarded(b, to, aux_);
    }

    void emit(const Instr& in, std::size_t from, std::size_t to, const std::string& prefix) {
        switch (in.kind) {
            case Instr::Kind::AddUnit:
                check_counter(in.counter);
                plain(from, to, unit(in.counter, in.delta));
                break;
            case Instr::Kind::GuardZero:
                check_counter(in.counter);
                guarded(from, to, in.counter);
                break;
            case Instr::Kind::Guess:
                // No alternatives = a dead branch: `to` stays unreachable
                // through this instruction.
                for (std::size_t a = 0; a < in.alternatives.size(); ++a)
                    emit_seq(in.alternatives[a], from, to, prefix + "/g" + std::to_string(a));
                break;
            case Instr::Kind::Multiply:
                emit_mul_div(true, in.counter, in.primes.at(0), from, to, prefix);
                break;
            case Instr::Kind::Divide:
                emit_mul_div(false, in.counter, in.primes.at(0), from, to, prefix);
                break;
            case Instr::Kind::Edge: {
                std::vector<Instr> seq{
                    Instr::divide(0, in.primes.at(0)), Instr::multiply(0, in.primes.at(0)),
                    Instr::divide(0, in.primes.at(1)), Instr::multiply(0, in.primes.at(1))};
                emit_seq(seq, from, to, prefix + "/e");
                break;
            }
            case Instr::Kind::VertexSelected: {
                // The vertex's prime may sit on any of the data counters.
                std::vector<std::vector<Instr>> alts;
                for (std::size_t c = 0; c + 1 < dim_; ++c)
                    alts.push_back({Instr::divide(c, in.primes.at(0)),
                                    Instr::multiply(c, in.primes.at(0))});
                emit(Instr::guess(std::move(alts)), from, to, prefix + "/vs");
                break;
            }
            case Instr::Kind::HyperEdge: {
                std::vector<Instr> seq{Instr::vertex_selected(in.primes.at(0)),
                                       Instr::vertex_selected(in.primes.at(1)),
                                       Instr::vertex_selected(in.primes.at(2))};
                emit_seq(seq, from, to, prefix + "/he");
                break;
            }
        }
    }

    const CounterProgram& program_;
    std::size_t dim_ = 0;
    std::size_t aux_ = 0;
    std::vector<std::string> states_;
    std::vector<Transition> transitions_;
};

}  // namespace detail

inline CompiledProgram compile_program(const CounterProgram& program) {
    return detail::ProgramCompiler(program).compile();
}

// ---------------------------------------------------------------------------
// Instance generators

struct GeneratedInstance {
    Instance instance;
    PrimeAssignment assignment;
    std::size_t entry = 0;
    std::size_t exit = 0;
};

// k-clique reduction: a 2-counter program that multiplies x by one
// guessed prime per part, then checks an edge between every unordered
// part pair.  Coverable from q_I(0,0) to q_F >= (0,0) iff the graph has
// a k-clique.  Every accepting run performs exactly 2k(2k-1) zero-tests.
inline GeneratedInstance gen_clique_instance(const PartitionedGraph& graph) {
    if (graph.layout != PartitionedGraph::Layout::Partite)
        throw GraphError("NotKPartite: clique generator needs a partite graph");
    graph.check();
    const std::size_t k = graph.k();

    // Pad parts with isolated dummy vertices to a common size; dummies
    // get primes but no edges, so they never appear in accepting runs.
    std::vector<std::vector<std::string>> parts = graph.parts;
    std::size_t ell = 0;
    for (const auto& p : parts) ell = std::max(ell, p.size());
    for (std::size_t i = 0; i < parts.size(); ++i)
        while (parts[i].size() < ell)
            parts[i].push_back("dummy/" + std::to_string(i + 1) + "/" +
                               std::to_string(parts[i].size() + 1));

    PrimeAssignment assignment = assign_primes(parts);

    CounterProgram prog;
    prog.counters = {"x", "y"};
    prog.body.push_back(Instr::add(0, 1));
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::vector<Instr>> alts;
        for (const auto& v : parts[i]) alts.push_back({Instr::multiply(0, assignment.prime(v))});
        prog.body.push_back(Instr::guess(std::move(alts)));
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            std::vector<std::vector<Instr>> alts;
            for (const auto& [u, v] : graph.edges) {
                std::size_t pu = graph.part_of(u);
                std::size_t pv = graph.part_of(v);
                if ((pu == i && pv == j) || (pu == j && pv == i))
                    alts.push_back({Instr::edge(assignment.prime(u), assignment.prime(v))});
            }
            // An empty slice compiles to a dead branch, making the
            // instance trivially uncoverable.
            prog.body.push_back(Instr::guess(std::move(alts)));
        }

    CompiledProgram compiled = compile_program(prog);

    Counter bound = 1;
    Counter pmax = assignment.max_prime();
    for (std::size_t i = 0; i < k; ++i) bound *= pmax;  // p_n^k envelope

    GeneratedInstance g{Instance{std::move(compiled.vass),
                                 Configuration{compiled.entry, {0, 0}},
                                 Configuration{compiled.exit, {0, 0}},
                                 Mode::Cover,
                                 bound},
                        std::move(assignment), compiled.entry, compiled.exit};
    return g;
}

// k-cycle reduction: the circle-layered graph is copied into a 1-VASS
// with two copies of layer 0.  A +1 chain through the first copy selects
// the starting vertex, zero-effect copies of the edges walk the cycle,
// and a -1 chain through the second copy checks the re-entry vertex.
// Reach p_{v1}(0) -> q_{v1}(0) holds iff a k-cycle exists.
inline GeneratedInstance gen_cycle_instance(const PartitionedGraph& graph) {
    if (graph.layout != PartitionedGraph::Layout::Circle)
        throw GraphError("cycle generator needs a circle-layered graph");
    graph.check();
    for (std::size_t i = 0; i < graph.k(); ++i)
        if (graph.parts[i].empty()) throw GraphError("EmptyLayer: layer " + std::to_string(i));

    const auto& layer0 = graph.parts[0];
    std::vector<std::string> states;
    std::vector<Transition> transitions;
    std::map<std::string, std::size_t> p_of, s_of, q_of;
    for (const auto& v : layer0) {
        states.push_back("p_" + v);
        p_of[v] = states.size() - 1;
    }
    for (std::size_t i = 1; i < graph.k(); ++i)
        for (const auto& v : graph.parts[i]) {
            states.push_back("s_" + v);
            s_of[v] = states.size() - 1;
        }
    for (const auto& v : layer0) {
        states.push_back("q_" + v);
        q_of[v] = states.size() - 1;
    }

    // T_I: +1 selection chain through the first copy of layer 0.
    for (std::size_t i = 0; i + 1 < layer0.size(); ++i)
        transitions.push_back(Transition{p_of[layer0[i]], p_of[layer0[i + 1]], {1}, std::nullopt});
    // T_E: zero-effect copies of the edges.
    for (const auto& [u, v] : graph.edges) {
        std::size_t pu = graph.part_of(u);
        std::size_t src = (pu == 0) ? p_of[u] : s_of[u];
        std::size_t dst = (pu + 1 == graph.k()) ? q_of[v] : s_of[v];
        transitions.push_back(Transition{src, dst, {0}, std::nullopt});
    }
    // T_F: -1 checking chain through the second copy of layer 0.
    for (std::size_t i = 0; i + 1 < layer0.size(); ++i)
        transitions.push_back(Transition{q_of[layer0[i + 1]], q_of[layer0[i]], {-1}, std::nullopt});

    std::size_t nstates = states.size();
    Vass vass(1, std::move(states), std::move(transitions));

    // |Q| <= 2|V| and |T| <= 2|V| + |E|; counters stay below |Q|.
    std::size_t nvertices = graph.vertex_count();
    if (nstates > 2 * nvertices || vass.transitions().size() > 2 * nvertices + graph.edges.size())
        throw GraphError("cycle instance exceeded its size envelope");

    std::size_t init = p_of[layer0.front()];
    std::size_t target = q_of[layer0.front()];
    return GeneratedInstance{Instance{std::move(vass), Configuration{init, {0}},
                                      Configuration{target, {0}}, Mode::Reach,
                                      static_cast<Counter>(nstates)},
                             PrimeAssignment{}, init, target};
}

// 4d-hyperclique reduction: counter x_i encodes four guessed vertices
// (one per part 4(i-1)+1 .. 4i) as a product of primes; the checking
// part guesses one hyperedge per unordered part triple and verifies its
// three vertices were selected.  Accepting runs perform exactly
// 2(4d + 6*C(4d,3)) zero-tests.
inline GeneratedInstance gen_hyperclique_instance(const Hypergraph3& h, std::size_t d) {
    if (h.parts.size() != 4 * d)
        throw GraphError("NotFourDPartite: expected " + std::to_string(4 * d) + " parts, got " +
                         std::to_string(h.parts.size()));
    h.check();

    PrimeAssignment assignment = assign_primes(h.parts);

    CounterProgram prog;
    for (std::size_t i = 0; i < d; ++i) prog.counters.push_back("x" + std::to_string(i + 1));
    prog.counters.push_back("y");

    for (std::size_t i = 0; i < d; ++i) {
        prog.body.push_back(Instr::add(i, 1));
        for (std::size_t j = 0; j < 4; ++j) {
            std::vector<std::vector<Instr>> alts;
            for (const auto& v : h.parts[4 * i + j])
                alts.push_back({Instr::multiply(i, assignment.prime(v))});
            prog.body.push_back(Instr::guess(std::move(alts)));
        }
    }
    for (std::size_t a = 0; a < 4 * d; ++a)
        for (std::size_t b = a + 1; b < 4 * d; ++b)
            for (std::size_t c = b + 1; c < 4 * d; ++c) {
                std::vector<std::vector<Instr>> alts;
                for (const auto& e : h.hyperedges) {
                    std::set<std::size_t> ps{h.part_of(e[0]), h.part_of(e[1]), h.part_of(e[2])};
                    if (ps == std::set<std::size_t>{a, b, c})
                        alts.push_back({Instr::hyper_edge(assignment.prime(e[0]),
                                                          assignment.prime(e[1]),
                                                          assignment.prime(e[2]))});
                }
                prog.body.push_back(Instr::guess(std::move(alts)));
            }

    CompiledProgram compiled = compile_program(prog);

    // Counter envelope: the product of the four largest assigned primes.
    std::vector<Counter> primes;
    for (const auto& [v, p] : assignment.by_vertex) primes.push_back(p);
    std::sort(primes.rbegin(), primes.rend());
    Counter bound = 1;
    for (std::size_t i = 0; i < 4 && i < primes.size(); ++i) bound *= primes[i];

    std::vector<Counter> zeros(d + 1, 0);
    return GeneratedInstance{Instance{std::move(compiled.vass),
                                      Configuration{compiled.entry, zeros},
                                      Configuration{compiled.exit, zeros}, Mode::Cover, bound},
                             std::move(assignment), compiled.entry, compiled.exit};
}

// ---------------------------------------------------------------------------
// Zero-test elimination

class ScheduleError : public ModelError {
public:
    explicit ScheduleError(const std::string& what) : ModelError(what) {}
};

// Per-location remaining-zero-test counts: t[s][i] = number of zero-tests
// on counter i performed on any path from state s to the exit state.
// Well-defined only when all paths agree (run-independence); states that
// cannot reach the exit are marked dead and carry zero vectors.
struct ZeroTestSchedule {
    std::size_t exit_state = 0;
    std::vector<std::vector<Counter>> t;           // per state, length = dimension
    std::vector<bool> live;                        // reaches the exit state
    std::vector<std::vector<std::size_t>> tests;   // per counter, guarded transition indices
};

// Backward traversal over the gadget DAG (self-loops, which never carry
// guards in the compiled shape, are skipped).  Throws ScheduleAmbiguous
// when two branches from one location disagree on the remaining counts.
inline ZeroTestSchedule static_schedule(const Vass& vass, std::size_t exit_state) {
    const std::size_t n = vass.states().size();
    const std::size_t d = vass.dimension();

    ZeroTestSchedule sched;
    sched.exit_state = exit_state;
    sched.t.assign(n, std::vector<Counter>(d, 0));
    sched.live.assign(n, false);
    sched.tests.assign(d, {});
    for (std::size_t ti = 0; ti < vass.transitions().size(); ++ti)
        if (auto g = vass.transitions()[ti].guard) sched.tests[*g].push_back(ti);

    for (const auto& t : vass.transitions())
        if (t.guard && t.src == t.dst)
            throw ScheduleError("ScheduleAmbiguous: zero-guarded self-loop at state " +
                                vass.state_name(t.src));

    // Liveness: backward reachability from the exit.
    std::vector<std::vector<std::size_t>> in(n);
    for (std::size_t ti = 0; ti < vass.transitions().size(); ++ti)
        in[vass.transitions()[ti].dst].push_back(ti);
    std::vector<std::size_t> work{exit_state};
    sched.live[exit_state] = true;
    while (!work.empty()) {
        std::size_t s = work.back();
        work.pop_back();
        for (std::size_t ti : in[s]) {
            std::size_t p = vass.transitions()[ti].src;
            if (!sched.live[p]) {
                sched.live[p] = true;
                work.push_back(p);
            }
        }
    }

    // Reverse topological order of the live subgraph, self-loops ignored.
    std::vector<std::size_t> outdeg(n, 0);
    for (const auto& t : vass.transitions())
        if (t.src != t.dst && sched.live[t.src] && sched.live[t.dst]) ++outdeg[t.src];
    std::vector<std::size_t> ready;
    for (std::size_t s = 0; s < n; ++s)
        if (sched.live[s] && outdeg[s] == 0) ready.push_back(s);

    std::vector<bool> resolved(n, false);
    std::size_t processed = 0;
    while (!ready.empty()) {
        std::size_t s = ready.back();
        ready.pop_back();
        resolved[s] = true;
        ++processed;

        if (s != exit_state) {
            bool first = true;
            for (const auto& t : vass.transitions()) {
                if (t.src != s || t.dst == s || !sched.live[t.dst]) continue;
                std::vector<Counter> cand = sched.t[t.dst];
                if (t.guard) ++cand[*t.guard];
                if (first) {
                    sched.t[s] = std::move(cand);
                    first = false;
                } else if (cand != sched.t[s]) {
                    throw ScheduleError("ScheduleAmbiguous: branches from state " +
                                        vass.state_name(s) +
                                        " disagree on remaining zero-test counts");
                }
            }
        }
        for (std::size_t ti : in[s]) {
            const auto& t = vass.transitions()[ti];
            if (t.src == t.dst || !sched.live[t.src]) continue;
            if (--outdeg[t.src] == 0) ready.push_back(t.src);
        }
    }
    std::size_t live_count = 0;
    for (std::size_t s = 0; s < n; ++s)
        if (sched.live[s]) ++live_count;
    if (processed != live_count)
        throw ScheduleError("ScheduleAmbiguous: control graph has a cycle besides self-loops");
    return sched;
}

inline ZeroTestSchedule static_schedule(const Instance& inst) {
    return static_schedule(inst.vass, inst.target.state);
}

struct EliminationResult {
    Instance instance;  // reach q_I'(init, z0) -> q_F'(0^{D+1}), z0 = sum_i t[init][i]*x_i
    ZeroTestSchedule schedule;
    // Transitions 0..|T|-1 of the instrumented VASS correspond one-to-one
    // (same index) to the guarded VASS's transitions; drain self-loops on
    // the old counters at the final state follow.
    std::size_t original_transition_count = 0;
};

// Controlling-counter elimination: adds a counter z whose update on every
// transition is sum_i t[src][i] * update[i].  Former zero-guards become
// plain zero-update transitions.  On honest runs z equals
// sum_i t[loc][i] * x_i at every point, so z returns to exactly 0 at the
// final state only if every former guard was crossed with its counter at
// zero.  Drain self-loops on the old counters are appended at the final
// state (where all remaining counts are zero, leaving z untouched) so the
// exact-reach target q_F'(0) is attainable.
inline EliminationResult eliminate_zero_tests(const Instance& guarded,
                                              const ZeroTestSchedule& schedule) {
    const Vass& tv = guarded.vass;
    const std::size_t D = tv.dimension();

    for (Counter c : schedule.t[guarded.target.state])
        if (c != 0)
            throw ScheduleError("final state still has zero-tests ahead of it");
    for (Counter c : guarded.target.counters)
        if (c != 0)
            throw ScheduleError("elimination requires an all-zero target counter vector");

    std::vector<Transition> transitions;
    transitions.reserve(tv.transitions().size() + D);
    for (const auto& t : tv.transitions()) {
        Update u = t.update;
        Counter z = 0;
        for (std::size_t i = 0; i < D; ++i) z += schedule.t[t.src][i] * t.update[i];
        u.push_back(z);
        transitions.push_back(Transition{t.src, t.dst, std::move(u), std::nullopt});
    }
    for (std::size_t i = 0; i < D; ++i) {
        Update u(D + 1, 0);
        u[i] = -1;
        transitions.push_back(Transition{guarded.target.state, guarded.target.state, std::move(u),
                                         std::nullopt});
    }

    // Honest z never exceeds (total remaining tests) * (guarded bound).
    std::optional<Counter> zbound;
    if (guarded.bound) {
        Counter total_tests = 0;
        for (Counter c : schedule.t[guarded.init.state]) total_tests += c;
        zbound = std::max<Counter>(1, total_tests) * *guarded.bound;
    }

    Vass instrumented(D + 1, tv.states(), std::move(transitions));
    // z starts at sum_i t[init][i] * x_i so the controlling identity holds
    // from the first configuration even for nonzero initial counters.
    std::vector<Counter> start = guarded.init.counters;
    Counter z0 = 0;
    for (std::size_t i = 0; i < D; ++i) z0 += schedule.t[guarded.init.state][i] * start[i];
    start.push_back(z0);
    std::vector<Counter> zeros(D + 1, 0);
    EliminationResult r{Instance{std::move(instrumented),
                                 Configuration{guarded.init.state, std::move(start)},
                                 Configuration{guarded.target.state, zeros}, Mode::Reach, zbound},
                        schedule, tv.transitions().size()};
    return r;
}

// Lifts a run of the guarded VASS onto the instrumented one (transition
// indices coincide), recomputing configurations with the z counter.
inline Run instrumented_run_from_guarded(const EliminationResult& elim, const Run& guarded_run) {
    std::vector<Counter> start = guarded_run.initial().counters;
    Counter z0 = 0;
    for (std::size_t i = 0; i < start.size(); ++i)
        z0 += elim.schedule.t[guarded_run.initial().state][i] * start[i];
    start.push_back(z0);
    return apply_path(elim.instance.vass,
                      Configuration{guarded_run.initial().state, std::move(start)},
                      guarded_run.path);
}

// Exact decision procedure for the instrumented reach instance.
//
// Potential argument: let phi(c) = z - sum_i t[state][i] * x_i.  phi is 0
// initially, unchanged along plain and self-loop transitions, and
// increases by x_g >= 0 across a former zero-guard on counter g (the
// schedule drops by e_g there while z is unchanged).  At the final state
// t = 0, so phi = z, and the target demands z = 0.  Hence a
// configuration with phi > 0 can never reach the target and may be
// pruned.  Both premises (phi >= 0 and monotonicity) are asserted on
// every explored edge, so the pruning never silently assumes the
// construction is correct.  The phi = 0 slice is essentially the honest
// (guarded) reachable set, which keeps this search small where a full
// bounded DFS over the instrumented counter box is intractable.
struct InstrumentedDecision {
    bool found = false;
    std::size_t nodes_expanded = 0;
};

inline InstrumentedDecision decide_instrumented_reach(const EliminationResult& elim) {
    const Instance& inst = elim.instance;
    const Vass& vass = inst.vass;
    const std::size_t D = vass.dimension();  // includes z
    const ZeroTestSchedule& sched = elim.schedule;

    auto phi = [&](const Configuration& c) {
        Counter p = c.counters[D - 1];
        for (std::size_t i = 0; i + 1 < D; ++i) p -= sched.t[c.state][i] * c.counters[i];
        return p;
    };

    std::vector<std::vector<std::size_t>> out(vass.states().size());
    for (std::size_t ti = 0; ti < vass.transitions().size(); ++ti)
        out[vass.transitions()[ti].src].push_back(ti);

    InstrumentedDecision r;
    // A schedule-dead initial state cannot reach the exit even at the
    // control-graph level (e.g. an empty guess slice), so the answer is
    // no without any search -- and without the potential argument, whose
    // pruning power vanishes when t is identically zero.
    if (!sched.live[inst.init.state]) return r;
    if (phi(inst.init) != 0)
        throw ModelError("instrumented initial configuration has nonzero potential");

    std::unordered_set<std::vector<Counter>, detail::VecKeyHash> visited;
    std::vector<Configuration> stack{inst.init};
    visited.insert(detail::key_of(inst.init));

    while (!stack.empty()) {
        Configuration c = std::move(stack.back());
        stack.pop_back();
        if (c == inst.target) {
            r.found = true;
            return r;
        }
        ++r.nodes_expanded;
        Counter pc = phi(c);
        for (std::size_t ti : out[c.state]) {
            auto nc = try_step(vass, c, vass.transitions()[ti], inst.bound);
            if (!nc) continue;
            Counter pn = phi(*nc);
            if (pn < pc)
                throw ModelError("potential decreased along an instrumented transition");
            if (pn != 0) continue;  // proven unable to reach z = 0 at exit
            if (visited.insert(detail::key_of(*nc)).second)
                stack.push_back(std::move(*nc));
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Coverability / reachability transforms

// Adds decremental self-loops (q_target, -e_i, q_target); the cover
// answer of the input equals the reach answer of the output.
inline Instance cover_to_reach(const Instance& inst) {
    if (inst.mode != Mode::Cover) throw ModeMismatch();
    std::vector<Transition> transitions = inst.vass.transitions();
    for (std::size_t i = 0; i < inst.vass.dimension(); ++i) {
        Update u(inst.vass.dimension(), 0);
        u[i] = -1;
        transitions.push_back(Transition{inst.target.state, inst.target.state, std::move(u),
                                         std::nullopt});
    }
    return Instance{Vass(inst.vass.dimension(), inst.vass.states(), std::move(transitions)),
                    inst.init, inst.target, Mode::Reach, inst.bound};
}

// Bounded reach -> bounded cover: append a unit-decrement path q -> r
// subtracting the target vector, then a unit-increment path r -> s adding
// B to every counter; the cover target becomes s(B * 1).  When some
// target entry exceeds B the emitted instance is trivially false (fresh
// unreachable target state).
inline Instance bounded_reach_to_cover(const Instance& inst) {
    if (inst.mode != Mode::Reach) throw ModelError("bounded_reach_to_cover needs a reach instance");
    if (!inst.bound) throw MissingBound();
    const Counter B = *inst.bound;
    const std::size_t d = inst.vass.dimension();

    std::vector<std::string> states = inst.vass.states();
    std::vector<Transition> transitions = inst.vass.transitions();

    for (Counter v : inst.target.counters) {
        if (v <= B) continue;
        states.push_back("s_unreachable");
        std::size_t s = states.size() - 1;
        return Instance{Vass(d, std::move(states), std::move(transitions)), inst.init,
                        Configuration{s, std::vector<Counter>(d, 0)}, Mode::Cover, B};
    }

    auto chain_step = [&](std::size_t from, std::size_t to, std::size_t counter, Counter delta) {
        Update u(d, 0);
        u[counter] = delta;
        transitions.push_back(Transition{from, to, std::move(u), std::nullopt});
    };

    std::size_t cur = inst.target.state;
    std::size_t fresh_id = 0;
    auto fresh = [&]() {
        states.push_back("r2c/" + std::to_string(fresh_id++));
        return states.size() - 1;
    };

    // q -> r: subtract the target vector one unit at a time.
    std::vector<std::pair<std::size_t, Counter>> steps;
    for (std::size_t i = 0; i < d; ++i)
        for (Counter j = 0; j < inst.target.counters[i]; ++j) steps.emplace_back(i, -1);
    // r -> s: add B to every counter.
    for (std::size_t i = 0; i < d; ++i)
        for (Counter j = 0; j < B; ++j) steps.emplace_back(i, +1);

    if (steps.empty()) {
        // Degenerate d-free case: a single zero-update transition to s.
        std::size_t s = fresh();
        transitions.push_back(Transition{cur, s, Update(d, 0), std::nullopt});
        return Instance{Vass(d, std::move(states), std::move(transitions)), inst.init,
                        Configuration{s, std::vector<Counter>(d, B)}, Mode::Cover, B};
    }

    for (std::size_t i = 0; i < steps.size(); ++i) {
        std::size_t next = fresh();
        chain_step(cur, next, steps[i].first, steps[i].second);
        cur = next;
    }
    return Instance{Vass(d, std::move(states), std::move(transitions)), inst.init,
                    Configuration{cur, std::vector<Counter>(d, B)}, Mode::Cover, B};
}

class DimensionNotOne : public ModelError {
public:
    DimensionNotOne() : ModelError("DimensionNotOne: transform needs a 1-dimensional instance") {}
};

// Adds an opposite counter: every (p, t, q) becomes (p, (t, -t), q), the
// initial configuration becomes p(0, n) and the cover target q(0, n).
// The sum x1 + x2 = n is invariant along every run, so covering (0, n)
// forces the simulated counter to be exactly 0.
inline Instance add_opposite_counter(const Instance& inst) {
    if (inst.vass.dimension() != 1) throw DimensionNotOne();
    if (inst.mode != Mode::Reach) throw ModelError("add_opposite_counter needs a reach instance");
    if (!inst.bound) throw MissingBound();
    if (inst.init.counters[0] != 0 || inst.target.counters[0] != 0)
        throw ModelError("add_opposite_counter expects zero initial and target counters");
    const Counter n = *inst.bound;

    std::vector<Transition> transitions;
    transitions.reserve(inst.vass.transitions().size());
    for (const auto& t : inst.vass.transitions())
        transitions.push_back(
            Transition{t.src, t.dst, {t.update[0], -t.update[0]}, std::nullopt});

    return Instance{Vass(2, inst.vass.states(), std::move(transitions)),
                    Configuration{inst.init.state, {0, n}},
                    Configuration{inst.target.state, {0, n}}, Mode::Cover, std::nullopt};
}

}  // namespace vasscov

#endif  // VASSCOV_REDUCE_HPP

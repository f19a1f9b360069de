// solve.hpp -- decision procedures for coverability/reachability:
//   forward_cover            capped BFS with domination pruning
//   backward_cover           backwards algorithm over upward-closed sets
//   bounded_dfs              exhaustive DFS over Q x {0..B}^d
//   ztest_bounded_search     bounded_dfs with zero-guard semantics
//   shortest_witness_oracle  plain layered BFS, no pruning; the reference
//                            oracle every other solver is tested against
//
// All solvers are deterministic: transitions are explored in declaration
// order, so reported witnesses are reproducible.

#ifndef VASSCOV_SOLVE_HPP
#define VASSCOV_SOLVE_HPP

#include <bit>
#include <chrono>
#include <cstring>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bounds.hpp"
#include "core.hpp"

namespace vasscov {

struct SearchStats {
    std::vector<Counter> max_counters;  // per dimension, along the witness run
    std::size_t zero_test_steps = 0;    // guarded steps taken by the witness
    std::size_t nodes_expanded = 0;
    double wall_seconds = 0.0;
};

struct Witness {
    Run run;
    SearchStats stats;
};

inline SearchStats witness_stats_from_run(const Vass& vass, const Run& run) {
    SearchStats s;
    s.max_counters.assign(vass.dimension(), 0);
    for (const auto& c : run.configurations)
        for (std::size_t i = 0; i < c.counters.size(); ++i)
            if (c.counters[i] > s.max_counters[i]) s.max_counters[i] = c.counters[i];
    for (std::size_t ti : run.path)
        if (vass.transitions()[ti].guard) ++s.zero_test_steps;
    return s;
}

enum class Answer { Found, NotFoundWithinCap, DefinitiveNo };

struct SolveResult {
    Answer answer = Answer::DefinitiveNo;
    std::optional<Witness> witness;
};

class ModeMismatch : public ModelError {
public:
    ModeMismatch() : ModelError("ModeMismatch: solver requires a cover-mode instance") {}
};

class UnsupportedGuards : public ModelError {
public:
    UnsupportedGuards() : ModelError("UnsupportedGuards: zero-guarded transitions present") {}
};

class UnsupportedBound : public ModelError {
public:
    UnsupportedBound() : ModelError("UnsupportedBound: solver does not handle bounded instances") {}
};

class MissingBound : public ModelError {
public:
    MissingBound() : ModelError("MissingBound: instance carries no counter bound") {}
};

namespace detail {

// Key = [state, counters...] flattened; used by the BFS-based searches.
struct VecKeyHash {
    std::size_t operator()(const std::vector<Counter>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (Counter x : v) {
            h ^= static_cast<std::size_t>(x);
            h *= 1099511628211ull;
        }
        return h;
    }
};

inline std::vector<Counter> key_of(const Configuration& c) {
    std::vector<Counter> k;
    k.reserve(c.counters.size() + 1);
    k.push_back(static_cast<Counter>(c.state));
    k.insert(k.end(), c.counters.begin(), c.counters.end());
    return k;
}

// Parent links for path reconstruction: key -> (parent key, transition index).
using ParentMap =
    std::unordered_map<std::vector<Counter>, std::pair<std::vector<Counter>, std::size_t>,
                       VecKeyHash>;

inline Run reconstruct(const Vass& vass, const Configuration& init, const ParentMap& parents,
                       const Configuration& last) {
    std::vector<std::size_t> rev;
    std::vector<Counter> k = key_of(last);
    const std::vector<Counter> root = key_of(init);
    while (k != root) {
        auto it = parents.find(k);
        rev.push_back(it->second.second);
        k = it->second.first;
    }
    std::vector<std::size_t> path(rev.rbegin(), rev.rend());
    return apply_path(vass, init, path);
}

// Flat linear-probing set over 128-bit packed configuration keys.  Used
// by the DFS engine where the visited set dominates the running time.
class PackedSet {
public:
    explicit PackedSet(std::size_t initial = 1 << 16) { rehash(initial); }

    // Returns true if the key was newly inserted.
    bool insert(unsigned __int128 key) {
        if (count_ * 5 >= slots_.size() * 3) rehash(slots_.size() * 2);
        std::size_t i = probe(key);
        if (slots_[i] != kEmpty) return false;
        slots_[i] = key;
        ++count_;
        return true;
    }

    std::size_t size() const { return count_; }

private:
    static constexpr unsigned __int128 kEmpty = ~static_cast<unsigned __int128>(0);

    std::size_t probe(unsigned __int128 key) const {
        std::size_t mask = slots_.size() - 1;
        std::size_t i = hash(key) & mask;
        while (slots_[i] != kEmpty && slots_[i] != key) i = (i + 1) & mask;
        return i;
    }

    static std::size_t hash(unsigned __int128 key) {
        std::uint64_t lo = static_cast<std::uint64_t>(key);
        std::uint64_t hi = static_cast<std::uint64_t>(key >> 64);
        std::uint64_t h = lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x9E3779B97F4A7C15ull);
        h ^= h >> 32;
        h *= 0xD6E8FEB86659FD93ull;
        h ^= h >> 32;
        return static_cast<std::size_t>(h);
    }

    void rehash(std::size_t n) {
        std::vector<unsigned __int128> old = std::move(slots_);
        slots_.assign(n, kEmpty);
        for (unsigned __int128 k : old)
            if (k != kEmpty) slots_[probe(k)] = k;
    }

    std::vector<unsigned __int128> slots_;
    std::size_t count_ = 0;
};

struct ConfigPacker {
    std::size_t state_bits;
    std::size_t counter_bits;
    std::size_t dim;

    ConfigPacker(const Vass& vass, Counter bound) {
        dim = vass.dimension();
        state_bits = std::bit_width(vass.states().size());
        counter_bits = std::bit_width(static_cast<std::uint64_t>(bound) + 1);
        if (state_bits + dim * counter_bits > 127)
            throw ModelError("configuration space too wide to pack into 128 bits");
    }

    unsigned __int128 pack(const Configuration& c) const {
        unsigned __int128 k = c.state;
        for (std::size_t i = 0; i < dim; ++i) {
            k <<= counter_bits;
            k |= static_cast<unsigned __int128>(static_cast<std::uint64_t>(c.counters[i]));
        }
        return k;
    }
};

}  // namespace detail

// Breadth-first coverability search up to run length `cap` (counted in
// configurations), with domination pruning: a newly reached q(v) is
// discarded when some previously retained q(v') has v' >= v.  Pruning is
// sound for coverability by monotonicity and preserves shortest covering
// witnesses, so a Found answer carries a minimum-length witness.
// DefinitiveNo is reported only when the pruned frontier empties before
// the cap.  The instance's counter bound, if any, is ignored: this solver
// answers plain (unbounded) coverability.
inline SolveResult forward_cover(const Instance& inst, const BigInt& cap) {
    if (inst.mode != Mode::Cover) throw ModeMismatch();
    if (inst.vass.has_guards()) throw UnsupportedGuards();
    if (cap < 1) throw ModelError("forward_cover: cap must be at least 1");
    auto t0 = std::chrono::steady_clock::now();

    const Vass& vass = inst.vass;
    // Per-state antichain of retained maximal counter vectors.
    std::vector<std::vector<std::vector<Counter>>> retained(vass.states().size());
    auto dominated = [](const std::vector<Counter>& a, const std::vector<Counter>& b) {
        // a <= b componentwise
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] > b[i]) return false;
        return true;
    };
    auto retain = [&](const Configuration& c) -> bool {
        auto& anti = retained[c.state];
        for (const auto& v : anti)
            if (dominated(c.counters, v)) return false;
        std::erase_if(anti, [&](const std::vector<Counter>& v) { return dominated(v, c.counters); });
        anti.push_back(c.counters);
        return true;
    };

    detail::ParentMap parents;
    std::size_t expanded = 0;
    std::vector<Configuration> frontier{inst.init};
    retain(inst.init);

    BigInt layer = 1;  // len of runs ending in the current frontier
    while (true) {
        for (const auto& c : frontier) {
            if (c.covers(inst.target)) {
                Run run = detail::reconstruct(vass, inst.init, parents, c);
                Witness w{run, witness_stats_from_run(vass, run)};
                w.stats.nodes_expanded = expanded;
                w.stats.wall_seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                return SolveResult{Answer::Found, std::move(w)};
            }
        }
        if (layer >= cap) return SolveResult{Answer::NotFoundWithinCap, std::nullopt};

        std::vector<Configuration> next;
        for (const auto& c : frontier) {
            ++expanded;
            for (std::size_t ti = 0; ti < vass.transitions().size(); ++ti) {
                const Transition& t = vass.transitions()[ti];
                if (t.src != c.state) continue;
                auto succ = try_step(vass, c, t);
                if (!succ) continue;
                if (!retain(*succ)) continue;
                parents.emplace(detail::key_of(*succ), std::make_pair(detail::key_of(c), ti));
                next.push_back(std::move(*succ));
            }
        }
        if (next.empty()) return SolveResult{Answer::DefinitiveNo, std::nullopt};
        frontier = std::move(next);
        ++layer;
    }
}

// One antichain of minimal counter vectors per state; the upward closure
// of the basis is the represented set.
struct UpwardClosedSet {
    std::vector<std::vector<std::vector<Counter>>> basis;  // indexed by state

    bool contains(const Configuration& c) const {
        for (const auto& b : basis[c.state]) {
            bool le = true;
            for (std::size_t i = 0; i < b.size(); ++i)
                if (b[i] > c.counters[i]) {
                    le = false;
                    break;
                }
            if (le) return true;
        }
        return false;
    }

    // Inserts unless dominated; removes newly dominated elements.
    bool insert(std::size_t state, const std::vector<Counter>& v) {
        auto& anti = basis[state];
        for (const auto& b : anti) {
            bool le = true;
            for (std::size_t i = 0; i < b.size(); ++i)
                if (b[i] > v[i]) {
                    le = false;
                    break;
                }
            if (le) return false;  // some b <= v already present
        }
        std::erase_if(anti, [&](const std::vector<Counter>& b) {
            for (std::size_t i = 0; i < b.size(); ++i)
                if (b[i] < v[i]) return false;
            return true;  // v <= b
        });
        anti.push_back(v);
        return true;
    }
};

struct BackwardResult {
    bool coverable = false;
    UpwardClosedSet basis;
    std::size_t rounds = 0;
};

// Backwards algorithm: fixpoint of predecessor-basis computation from
// {target}.  For a basis element m at q and a transition (p, x, q) the
// predecessor candidate at p is max(m - x, 0) componentwise.  Terminates
// by Dickson's lemma; the answer is membership of the initial
// configuration in the final upward-closed set.
inline BackwardResult backward_cover(const Instance& inst) {
    if (inst.mode != Mode::Cover) throw ModeMismatch();
    if (inst.vass.has_guards()) throw UnsupportedGuards();
    if (inst.bound) throw UnsupportedBound();

    const Vass& vass = inst.vass;
    BackwardResult r;
    r.basis.basis.resize(vass.states().size());
    r.basis.insert(inst.target.state, inst.target.counters);

    std::vector<std::pair<std::size_t, std::vector<Counter>>> worklist{
        {inst.target.state, inst.target.counters}};
    while (!worklist.empty()) {
        ++r.rounds;
        std::vector<std::pair<std::size_t, std::vector<Counter>>> next;
        for (const auto& [q, m] : worklist) {
            for (const Transition& t : vass.transitions()) {
                if (t.dst != q) continue;
                std::vector<Counter> cand(m.size());
                for (std::size_t i = 0; i < m.size(); ++i) {
                    Counter v = m[i] - t.update[i];
                    cand[i] = v < 0 ? 0 : v;
                }
                if (r.basis.insert(t.src, cand)) next.emplace_back(t.src, std::move(cand));
            }
        }
        worklist = std::move(next);
    }
    r.coverable = r.basis.contains(inst.init);
    return r;
}

struct BoundedResult {
    bool found = false;
    std::optional<Witness> witness;
    std::size_t nodes_expanded = 0;
    BigInt expansion_budget;  // |Q| * (B+1)^d
};

namespace detail {

inline BoundedResult bounded_search(const Instance& inst, bool allow_guards) {
    if (!inst.bound) throw MissingBound();
    if (!allow_guards && inst.vass.has_guards()) throw UnsupportedGuards();
    auto t0 = std::chrono::steady_clock::now();

    const Vass& vass = inst.vass;
    const Counter B = *inst.bound;
    for (Counter c : inst.init.counters)
        if (c > B) throw ModelError("initial configuration exceeds the bound");

    BoundedResult r;
    r.expansion_budget = BigInt(vass.states().size()) *
                         boost::multiprecision::pow(BigInt(B) + 1,
                                                    static_cast<unsigned>(vass.dimension()));

    ConfigPacker packer(vass, B);
    PackedSet visited;

    // Outgoing transitions grouped by source state, in declaration order.
    std::vector<std::vector<std::size_t>> out(vass.states().size());
    for (std::size_t ti = 0; ti < vass.transitions().size(); ++ti)
        out[vass.transitions()[ti].src].push_back(ti);

    auto accepts = [&](const Configuration& c) {
        return inst.mode == Mode::Cover ? c.covers(inst.target) : c == inst.target;
    };

    // Iterative DFS; the stack holds the current run, so an accepting
    // configuration yields its witness directly.
    struct Frame {
        Configuration config;
        std::size_t next_edge = 0;
        std::size_t via = 0;  // transition taken from the parent frame
    };
    std::vector<Frame> stack;
    stack.push_back(Frame{inst.init, 0, 0});
    visited.insert(packer.pack(inst.init));
    ++r.nodes_expanded;
    if (accepts(inst.init)) r.found = true;

    while (!stack.empty() && !r.found) {
        Frame& f = stack.back();
        const auto& edges = out[f.config.state];
        bool descended = false;
        while (f.next_edge < edges.size()) {
            std::size_t ti = edges[f.next_edge++];
            auto succ = try_step(vass, f.config, vass.transitions()[ti], B);
            if (!succ) continue;
            if (!visited.insert(packer.pack(*succ))) continue;
            ++r.nodes_expanded;
            bool hit = accepts(*succ);
            stack.push_back(Frame{std::move(*succ), 0, ti});
            descended = true;
            if (hit) r.found = true;
            break;
        }
        if (!descended && !r.found) stack.pop_back();
    }

    if (BigInt(r.nodes_expanded) > r.expansion_budget)
        throw ModelError("bounded search expanded more nodes than |Q|*(B+1)^d");

    if (r.found) {
        Run run;
        for (std::size_t i = 0; i < stack.size(); ++i) {
            run.configurations.push_back(stack[i].config);
            if (i > 0) run.path.push_back(stack[i].via);
        }
        Witness w{run, witness_stats_from_run(vass, run)};
        w.stats.nodes_expanded = r.nodes_expanded;
        w.stats.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.witness = std::move(w);
    }
    return r;
}

}  // namespace detail

// Exhaustive DFS over the finite configuration graph Q x {0..B}^d.  Each
// (state, vector) is expanded at most once; accepts per the instance
// mode.  Node expansions are asserted to stay within |Q| * (B+1)^d.
inline BoundedResult bounded_dfs(const Instance& inst) {
    return detail::bounded_search(inst, /*allow_guards=*/false);
}

// bounded_dfs with zero-guard semantics: guarded transitions fire only
// when the guarded counter is 0.
inline BoundedResult ztest_bounded_search(const Instance& inst) {
    return detail::bounded_search(inst, /*allow_guards=*/true);
}

enum class OracleOutcome { Found, ExhaustedNo, BudgetExhausted };

struct OracleResult {
    OracleOutcome outcome = OracleOutcome::BudgetExhausted;
    std::optional<Run> run;
    std::size_t nodes_expanded = 0;
};

class BudgetExhausted : public ModelError {
public:
    BudgetExhausted() : ModelError("BudgetExhausted") {}
};

// Reference brute-force oracle: plain layered BFS with no pruning and a
// visited set on exact configurations.  Returns a minimum-length witness,
// or reports that the reachable set was exhausted without one, or that
// the node budget ran out first.  Respects guards and the instance bound.
inline OracleResult shortest_witness_oracle(const Instance& inst, std::size_t node_budget) {
    const Vass& vass = inst.vass;
    OracleResult r;

    auto accepts = [&](const Configuration& c) {
        return inst.mode == Mode::Cover ? c.covers(inst.target) : c == inst.target;
    };

    detail::ParentMap parents;
    std::unordered_map<std::vector<Counter>, bool, detail::VecKeyHash> visited;
    std::vector<Configuration> frontier{inst.init};
    visited.emplace(detail::key_of(inst.init), true);

    while (!frontier.empty()) {
        for (const auto& c : frontier) {
            if (accepts(c)) {
                r.outcome = OracleOutcome::Found;
                r.run = detail::reconstruct(vass, inst.init, parents, c);
                return r;
            }
        }
        std::vector<Configuration> next;
        for (const auto& c : frontier) {
            if (++r.nodes_expanded > node_budget) {
                r.outcome = OracleOutcome::BudgetExhausted;
                return r;
            }
            for (std::size_t ti = 0; ti < vass.transitions().size(); ++ti) {
                const Transition& t = vass.transitions()[ti];
                if (t.src != c.state) continue;
                auto succ = try_step(vass, c, t, inst.bound);
                if (!succ) continue;
                auto key = detail::key_of(*succ);
                if (!visited.emplace(key, true).second) continue;
                parents.emplace(std::move(key), std::make_pair(detail::key_of(c), ti));
                next.push_back(std::move(*succ));
            }
        }
        frontier = std::move(next);
    }
    r.outcome = OracleOutcome::ExhaustedNo;
    return r;
}

}  // namespace vasscov

#endif  // VASSCOV_SOLVE_HPP

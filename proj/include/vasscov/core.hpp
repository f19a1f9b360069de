// core.hpp -- the VASS data model: states, transitions, configurations,
// runs, norms, validation, and unary expansion.
//
// A d-VASS is a finite set of states plus a multiset of transitions
// (src, update vector in Z^d, dst).  Transitions may optionally carry a
// zero-guard on one counter ("fires only when counter i == 0"); guarded
// transitions always have the all-zero update.  A configuration is a
// state plus a vector of nonnegative counters; in a B-bounded context
// counters additionally stay <= B.

#ifndef VASSCOV_CORE_HPP
#define VASSCOV_CORE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace vasscov {

using Counter = std::int64_t;
using Update = std::vector<Counter>;

struct Transition {
    std::size_t src = 0;
    std::size_t dst = 0;
    Update update;
    // Index of the counter that must equal 0 for this transition to fire.
    // Guarded transitions carry the all-zero update.
    std::optional<std::size_t> guard;

    bool operator==(const Transition&) const = default;
};

class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// Raised by validate(); carries every violation found, one message per line.
class ValidationError : public ModelError {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : ModelError(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const { return violations_; }

private:
    static std::string join(const std::vector<std::string>& vs) {
        std::string out;
        for (const auto& v : vs) {
            if (!out.empty()) out += "; ";
            out += v;
        }
        return out;
    }

    std::vector<std::string> violations_;
};

enum class StepFailure {
    NegativeCounter,
    BoundExceeded,
    GuardFailed,
    WrongSourceState,
};

class StepError : public ModelError {
public:
    StepError(StepFailure kind, std::size_t component, std::size_t step_index,
              const std::string& what)
        : ModelError(what), kind_(kind), component_(component), step_index_(step_index) {}

    StepFailure kind() const { return kind_; }
    std::size_t component() const { return component_; }
    // Index of the failing step when raised from apply_path, 0 otherwise.
    std::size_t step_index() const { return step_index_; }

private:
    StepFailure kind_;
    std::size_t component_;
    std::size_t step_index_;
};

class Vass {
public:
    Vass(std::size_t dimension, std::vector<std::string> states,
         std::vector<Transition> transitions)
        : dim_(dimension), states_(std::move(states)), transitions_(std::move(transitions)) {
        for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);
    }

    std::size_t dimension() const { return dim_; }
    const std::vector<std::string>& states() const { return states_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    const std::string& state_name(std::size_t i) const { return states_.at(i); }

    std::optional<std::size_t> state_index(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool has_guards() const {
        for (const auto& t : transitions_)
            if (t.guard) return true;
        return false;
    }

private:
    std::size_t dim_;
    std::vector<std::string> states_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Transition> transitions_;
};

struct Configuration {
    std::size_t state = 0;
    std::vector<Counter> counters;

    bool operator==(const Configuration&) const = default;

    // Componentwise >= on counters, same state.
    bool covers(const Configuration& target) const {
        if (state != target.state || counters.size() != target.counters.size()) return false;
        for (std::size_t i = 0; i < counters.size(); ++i)
            if (counters[i] < target.counters[i]) return false;
        return true;
    }
};

// A validated run: configurations[i] --path[i]--> configurations[i+1].
// len(run) counts configurations, so len = |path| + 1.
struct Run {
    std::vector<Configuration> configurations;
    std::vector<std::size_t> path;  // indices into Vass::transitions()

    std::size_t len() const { return configurations.size(); }

    const Configuration& initial() const { return configurations.front(); }
    const Configuration& final() const { return configurations.back(); }

    std::vector<Counter> effect() const {
        const auto& a = initial().counters;
        const auto& b = final().counters;
        std::vector<Counter> eff(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) eff[i] = b[i] - a[i];
        return eff;
    }
};

enum class Mode { Cover, Reach };

// ||v|| = max(1, max_i |v[i]|)
inline Counter norm(const std::vector<Counter>& v) {
    Counter m = 1;
    for (Counter x : v) {
        Counter a = x < 0 ? -x : x;
        if (a > m) m = a;
    }
    return m;
}

// ||V|| = |Q| + sum over transitions of ||update||.  Zero-update
// transitions (including guards) still contribute 1.
inline Counter vass_norm(const Vass& v) {
    Counter n = static_cast<Counter>(v.states().size());
    for (const auto& t : v.transitions()) n += norm(t.update);
    return n;
}

struct Instance {
    Vass vass;
    Configuration init;
    Configuration target;
    Mode mode = Mode::Cover;
    std::optional<Counter> bound;
};

// n = ||V|| + ||s|| + ||t||
inline Counter instance_size(const Instance& inst) {
    return vass_norm(inst.vass) + norm(inst.init.counters) + norm(inst.target.counters);
}

// Raw, unchecked model description as produced by a parser or by hand.
struct RawModel {
    std::size_t dimension = 0;
    std::vector<std::string> states;
    struct RawTransition {
        std::string src;
        std::string dst;
        Update update;
        std::optional<std::size_t> guard;
    };
    std::vector<RawTransition> transitions;
};

// Checks every invariant and reports all violations at once.
inline Vass validate(const RawModel& raw) {
    std::vector<std::string> violations;
    if (raw.states.empty()) violations.push_back("EmptyStates: no states declared");
    if (raw.transitions.empty()) violations.push_back("EmptyTransitions: no transitions declared");

    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < raw.states.size(); ++i) {
        if (!index.emplace(raw.states[i], i).second)
            violations.push_back("DuplicateState: " + raw.states[i]);
    }

    std::vector<Transition> transitions;
    transitions.reserve(raw.transitions.size());
    for (std::size_t i = 0; i < raw.transitions.size(); ++i) {
        const auto& rt = raw.transitions[i];
        Transition t;
        bool ok = true;
        auto src = index.find(rt.src);
        if (src == index.end()) {
            violations.push_back("UnknownState: " + rt.src);
            ok = false;
        } else {
            t.src = src->second;
        }
        auto dst = index.find(rt.dst);
        if (dst == index.end()) {
            violations.push_back("UnknownState: " + rt.dst);
            ok = false;
        } else {
            t.dst = dst->second;
        }
        if (rt.update.size() != raw.dimension) {
            violations.push_back("DimensionMismatch: transition " + std::to_string(i) + " has " +
                                 std::to_string(rt.update.size()) + " entries, expected " +
                                 std::to_string(raw.dimension));
            ok = false;
        }
        if (rt.guard) {
            if (*rt.guard >= raw.dimension) {
                violations.push_back("GuardOutOfRange: transition " + std::to_string(i));
                ok = false;
            }
            for (Counter x : rt.update)
                if (x != 0) {
                    violations.push_back("GuardedUpdateNotZero: transition " + std::to_string(i));
                    ok = false;
                    break;
                }
        }
        if (ok) {
            t.update = rt.update;
            t.guard = rt.guard;
            transitions.push_back(std::move(t));
        }
    }

    if (!violations.empty()) throw ValidationError(std::move(violations));
    return Vass(raw.dimension, raw.states, std::move(transitions));
}

// Applies one transition.  Returns nullopt if the step is not enabled
// (wrong source, guard failure, a counter would go negative, or a
// counter would exceed the bound).
inline std::optional<Configuration> try_step(const Vass& vass, const Configuration& c,
                                             const Transition& t,
                                             std::optional<Counter> bound = std::nullopt) {
    if (c.state != t.src) return std::nullopt;
    if (t.guard && c.counters[*t.guard] != 0) return std::nullopt;
    Configuration next{t.dst, c.counters};
    for (std::size_t i = 0; i < vass.dimension(); ++i) {
        if (__builtin_add_overflow(next.counters[i], t.update[i], &next.counters[i]))
            throw ModelError("counter overflow while applying a transition");
        if (next.counters[i] < 0) return std::nullopt;
        if (bound && next.counters[i] > *bound) return std::nullopt;
    }
    return next;
}

// Like try_step but explains the failure.
inline Configuration step(const Vass& vass, const Configuration& c, const Transition& t,
                          std::optional<Counter> bound = std::nullopt) {
    if (c.state != t.src)
        throw StepError(StepFailure::WrongSourceState, 0, 0,
                        "WrongSourceState: configuration at " + vass.state_name(c.state) +
                            ", transition from " + vass.state_name(t.src));
    if (t.guard && c.counters[*t.guard] != 0)
        throw StepError(StepFailure::GuardFailed, *t.guard, 0,
                        "GuardFailed(" + std::to_string(*t.guard + 1) + ")");
    Configuration next{t.dst, c.counters};
    for (std::size_t i = 0; i < vass.dimension(); ++i) {
        if (__builtin_add_overflow(next.counters[i], t.update[i], &next.counters[i]))
            throw ModelError("counter overflow while applying a transition");
        if (next.counters[i] < 0)
            throw StepError(StepFailure::NegativeCounter, i, 0,
                            "NegativeCounter(" + std::to_string(i + 1) + ")");
        if (bound && next.counters[i] > *bound)
            throw StepError(StepFailure::BoundExceeded, i, 0,
                            "BoundExceeded(" + std::to_string(i + 1) + ")");
    }
    return next;
}

// Folds step over a transition-index sequence.  Throws StepError carrying
// the index of the first failing step.
inline Run apply_path(const Vass& vass, const Configuration& init,
                      const std::vector<std::size_t>& path,
                      std::optional<Counter> bound = std::nullopt) {
    Run run;
    run.configurations.push_back(init);
    run.path = path;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const Transition& t = vass.transitions().at(path[i]);
        try {
            run.configurations.push_back(step(vass, run.configurations.back(), t, bound));
        } catch (const StepError& e) {
            throw StepError(e.kind(), e.component(), i,
                            "StepFailed(" + std::to_string(i) + ", " + e.what() + ")");
        }
    }
    return run;
}

inline bool is_unary_update(const Update& u) {
    for (Counter x : u)
        if (x < -1 || x > 1) return false;
    return true;
}

inline bool is_unary(const Vass& v) {
    for (const auto& t : v.transitions())
        if (!is_unary_update(t.update)) return false;
    return true;
}

// Expands every non-unary transition into a chain of fresh intermediate
// states applying one unit of one counter per step, all decrements before
// all increments.  Already-unary transitions (and the VASS as a whole,
// when unary) are kept untouched.
inline Vass to_unary(const Vass& v) {
    if (is_unary(v)) return v;
    std::vector<std::string> states = v.states();
    std::vector<Transition> transitions;
    std::size_t chain_id = 0;
    for (const auto& t : v.transitions()) {
        if (is_unary_update(t.update)) {
            transitions.push_back(t);
            continue;
        }
        // Unit decomposition: decrements first, then increments.
        std::vector<Update> units;
        for (std::size_t i = 0; i < v.dimension(); ++i)
            for (Counter j = 0; j < -t.update[i]; ++j) {
                Update u(v.dimension(), 0);
                u[i] = -1;
                units.push_back(u);
            }
        for (std::size_t i = 0; i < v.dimension(); ++i)
            for (Counter j = 0; j < t.update[i]; ++j) {
                Update u(v.dimension(), 0);
                u[i] = 1;
                units.push_back(u);
            }
        std::size_t prev = t.src;
        for (std::size_t k = 0; k < units.size(); ++k) {
            std::size_t next;
            if (k + 1 == units.size()) {
                next = t.dst;
            } else {
                states.push_back("u/" + std::to_string(chain_id) + "/" + std::to_string(k));
                next = states.size() - 1;
            }
            transitions.push_back(Transition{prev, next, units[k], std::nullopt});
            prev = next;
        }
        ++chain_id;
    }
    return Vass(v.dimension(), std::move(states), std::move(transitions));
}

inline Instance to_unary(const Instance& inst) {
    return Instance{to_unary(inst.vass), inst.init, inst.target, inst.mode, inst.bound};
}

}  // namespace vasscov

#endif  // VASSCOV_CORE_HPP

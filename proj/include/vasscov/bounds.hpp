// bounds.hpp -- witness-length bound families, the thin-configuration
// predicate, run decomposition at the first non-thin configuration, and
// witness audits.
//
// For an instance of size n in dimension d the bound family is
//   L_i = n^(4^i),   M_0 = n,   M_i = L_{i-1} * n  (i >= 1).
// A counter vector is thin if some permutation sigma places component
// sigma(i) strictly below M_i for every i.  A minimal covering witness
// has length at most L_d; its prefix of thin configurations is bounded
// by d! * n^d * L_{d-1} * ... * L_0 and its tail by L_{d-1}.
//
// All L_i/M_i arithmetic uses arbitrary-precision integers: L_2 already
// exceeds 64 bits for n >= 17.

#ifndef VASSCOV_BOUNDS_HPP
#define VASSCOV_BOUNDS_HPP

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <optional>
#include <vector>

#include "core.hpp"

namespace vasscov {

using BigInt = boost::multiprecision::cpp_int;

struct ThinProfile {
    Counter n = 0;
    std::size_t d = 0;
    std::vector<BigInt> L;  // L[0..d]
    std::vector<BigInt> M;  // M[0..d]
};

class InstanceTooSmall : public ModelError {
public:
    explicit InstanceTooSmall(Counter n)
        : ModelError("InstanceTooSmall: n = " + std::to_string(n) + " < 2") {}
};

inline ThinProfile thin_profile(Counter n, std::size_t d) {
    if (n < 2) throw InstanceTooSmall(n);
    ThinProfile p;
    p.n = n;
    p.d = d;
    p.L.resize(d + 1);
    p.M.resize(d + 1);
    BigInt exponent = 1;  // 4^i
    for (std::size_t i = 0; i <= d; ++i) {
        p.L[i] = boost::multiprecision::pow(BigInt(n), exponent.convert_to<unsigned>());
        p.M[i] = (i == 0) ? BigInt(n) : p.L[i - 1] * n;
        exponent *= 4;
    }
    return p;
}

inline ThinProfile thin_profile(const Instance& inst) {
    return thin_profile(instance_size(inst), inst.vass.dimension());
}

// Thinness check.  Greedy: sort the counters ascending and match against
// M_1 <= M_2 <= ... ; a sorted assignment exists iff any assignment does,
// because the thresholds are nondecreasing.  When thin, returns the
// witnessing permutation sigma as a vector where sigma[i] is the
// (0-based) component assigned to slot i+1.
inline std::pair<bool, std::optional<std::vector<std::size_t>>> is_thin(
    const std::vector<Counter>& counters, const ThinProfile& profile) {
    const std::size_t d = profile.d;
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return counters[a] < counters[b]; });
    for (std::size_t i = 0; i < d; ++i)
        if (BigInt(counters[order[i]]) >= profile.M[i + 1]) return {false, std::nullopt};
    return {true, order};
}

// Splits a run at the first non-thin configuration.  t = len(run) when
// every configuration is thin; either side of the split can be empty.
struct ThinSplit {
    std::vector<Configuration> thin_prefix;
    std::vector<Configuration> tail;
    std::size_t split_index = 0;
};

inline ThinSplit split_thin(const Run& run, const ThinProfile& profile) {
    ThinSplit s;
    std::size_t t = run.len();
    for (std::size_t i = 0; i < run.len(); ++i) {
        if (!is_thin(run.configurations[i].counters, profile).first) {
            t = i;
            break;
        }
    }
    s.split_index = t;
    s.thin_prefix.assign(run.configurations.begin(), run.configurations.begin() + t);
    s.tail.assign(run.configurations.begin() + t, run.configurations.end());
    return s;
}

class NotAWitness : public ModelError {
public:
    explicit NotAWitness(const std::string& why) : ModelError("NotAWitness: " + why) {}
};

struct AuditReport {
    Counter n = 0;
    std::size_t d = 0;
    std::size_t run_len = 0;
    BigInt total_bound;  // L_d
    bool within_total = false;
    std::size_t thin_len = 0;
    BigInt thin_bound;  // d! * n^d * L_{d-1} * ... * L_0
    bool within_thin = false;
    std::size_t tail_len = 0;
    BigInt tail_bound;  // L_{d-1} (L_0's predecessor is taken as 1 when d = 0)
    bool within_tail = false;
    bool distinct_configurations = false;  // necessary for minimality
};

// Checks a covering witness against the length bounds of the minimal-run
// analysis.  The run must start at the instance's initial configuration
// and end covering (mode cover) or equal to (mode reach) the target.
inline AuditReport audit_witness(const Instance& inst, const Run& run) {
    if (run.configurations.empty()) throw NotAWitness("empty run");
    if (!(run.initial() == inst.init)) throw NotAWitness("run does not start at the initial configuration");
    const Configuration& last = run.final();
    if (inst.mode == Mode::Cover) {
        if (!last.covers(inst.target)) throw NotAWitness("final configuration does not cover the target");
    } else {
        if (!(last == inst.target)) throw NotAWitness("final configuration does not equal the target");
    }

    AuditReport r;
    r.n = instance_size(inst);
    r.d = inst.vass.dimension();
    ThinProfile profile = thin_profile(r.n, r.d);

    r.run_len = run.len();
    r.total_bound = profile.L[r.d];
    r.within_total = BigInt(r.run_len) <= r.total_bound;

    ThinSplit split = split_thin(run, profile);
    r.thin_len = split.thin_prefix.size();
    r.tail_len = split.tail.size();

    BigInt factorial = 1;
    for (std::size_t i = 2; i <= r.d; ++i) factorial *= i;
    r.thin_bound = factorial * boost::multiprecision::pow(BigInt(r.n), static_cast<unsigned>(r.d));
    for (std::size_t i = 0; i < r.d; ++i) r.thin_bound *= profile.L[i];
    r.within_thin = BigInt(r.thin_len) <= r.thin_bound;

    r.tail_bound = (r.d == 0) ? BigInt(1) : profile.L[r.d - 1];
    r.within_tail = BigInt(r.tail_len) <= r.tail_bound;

    r.distinct_configurations = true;
    for (std::size_t i = 0; i < run.len() && r.distinct_configurations; ++i)
        for (std::size_t j = i + 1; j < run.len(); ++j)
            if (run.configurations[i] == run.configurations[j]) {
                r.distinct_configurations = false;
                break;
            }
    return r;
}

}  // namespace vasscov

#endif  // VASSCOV_BOUNDS_HPP

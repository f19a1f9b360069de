// io.hpp -- line-oriented textual formats: VASS instances, partitioned
// graphs, 3-uniform hypergraphs, the counter-program DSL, and witness /
// report emission.  All diagnostics carry 1-based line numbers.

#ifndef VASSCOV_IO_HPP
#define VASSCOV_IO_HPP

#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "reduce.hpp"
#include "solve.hpp"

namespace vasscov {

class SyntaxError : public ModelError {
public:
    SyntaxError(std::size_t line, const std::string& what)
        : ModelError("SyntaxError(line " + std::to_string(line) + "): " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class SemanticError : public ModelError {
public:
    SemanticError(std::size_t line, const std::string& what)
        : ModelError("SemanticError(line " + std::to_string(line) + "): " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

// Splits text into (line-number, token-list) pairs; '#' starts a comment
// and blank lines are skipped.
inline std::vector<std::pair<std::size_t, std::vector<std::string>>> tokenize_lines(
    const std::string& text) {
    std::vector<std::pair<std::size_t, std::vector<std::string>>> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (!tokens.empty()) out.emplace_back(lineno, std::move(tokens));
    }
    return out;
}

inline long long parse_int(const std::string& tok, std::size_t lineno) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw SyntaxError(lineno, "expected an integer, got '" + tok + "'");
    return value;
}

// Parses "key=value" returning value, enforcing the key.
inline std::string keyed(const std::string& tok, const std::string& key, std::size_t lineno) {
    if (tok.size() <= key.size() + 1 || tok.compare(0, key.size(), key) != 0 ||
        tok[key.size()] != '=')
        throw SyntaxError(lineno, "expected " + key + "=<value>, got '" + tok + "'");
    return tok.substr(key.size() + 1);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// VASS instances

inline Instance parse_instance(const std::string& text) {
    RawModel raw;
    std::optional<std::size_t> d;
    std::optional<std::string> init_state, target_state;
    std::vector<Counter> init_counters, target_counters;
    std::optional<Mode> mode;
    std::optional<Counter> bound;
    std::size_t header_line = 0;

    auto counters_from = [&](const std::vector<std::string>& toks, std::size_t from,
                             std::size_t lineno) {
        std::vector<Counter> v;
        for (std::size_t i = from; i < toks.size(); ++i)
            v.push_back(detail::parse_int(toks[i], lineno));
        if (!d || v.size() != *d)
            throw SyntaxError(lineno, "expected " + std::to_string(d.value_or(0)) +
                                          " counter values, got " + std::to_string(v.size()));
        return v;
    };

    for (const auto& [lineno, toks] : detail::tokenize_lines(text)) {
        const std::string& kw = toks[0];
        if (kw == "vass") {
            if (toks.size() != 2) throw SyntaxError(lineno, "usage: vass d=<d>");
            long long dim = detail::parse_int(detail::keyed(toks[1], "d", lineno), lineno);
            if (dim < 0) throw SyntaxError(lineno, "dimension must be nonnegative");
            d = static_cast<std::size_t>(dim);
            raw.dimension = *d;
            header_line = lineno;
        } else if (!d) {
            throw SyntaxError(lineno, "missing 'vass d=<d>' header");
        } else if (kw == "state") {
            if (toks.size() != 2) throw SyntaxError(lineno, "usage: state <name>");
            raw.states.push_back(toks[1]);
        } else if (kw == "trans") {
            if (toks.size() != 3 + *d)
                throw SyntaxError(lineno, "usage: trans <src> <dst> <x1> ... <xd>");
            RawModel::RawTransition t;
            t.src = toks[1];
            t.dst = toks[2];
            t.update = counters_from(toks, 3, lineno);
            raw.transitions.push_back(std::move(t));
        } else if (kw == "ztest") {
            if (toks.size() != 4) throw SyntaxError(lineno, "usage: ztest <src> <dst> <i>");
            long long i = detail::parse_int(toks[3], lineno);
            if (i < 1 || static_cast<std::size_t>(i) > *d)
                throw SemanticError(lineno, "guard counter index out of range: " + toks[3]);
            RawModel::RawTransition t;
            t.src = toks[1];
            t.dst = toks[2];
            t.update.assign(*d, 0);
            t.guard = static_cast<std::size_t>(i - 1);
            raw.transitions.push_back(std::move(t));
        } else if (kw == "init") {
            if (toks.size() != 2 + *d)
                throw SyntaxError(lineno, "usage: init <state> <v1> ... <vd>");
            init_state = toks[1];
            init_counters = counters_from(toks, 2, lineno);
        } else if (kw == "target") {
            if (toks.size() != 2 + *d)
                throw SyntaxError(lineno, "usage: target <state> <v1> ... <vd>");
            target_state = toks[1];
            target_counters = counters_from(toks, 2, lineno);
        } else if (kw == "mode") {
            if (toks.size() != 2 || (toks[1] != "cover" && toks[1] != "reach"))
                throw SyntaxError(lineno, "usage: mode cover|reach");
            mode = toks[1] == "cover" ? Mode::Cover : Mode::Reach;
        } else if (kw == "bound") {
            if (toks.size() != 2) throw SyntaxError(lineno, "usage: bound <B>");
            Counter b = detail::parse_int(toks[1], lineno);
            if (b < 0) throw SemanticError(lineno, "bound must be nonnegative");
            bound = b;
        } else {
            throw SyntaxError(lineno, "unknown keyword '" + kw + "'");
        }
    }
    if (!d) throw SyntaxError(1, "missing 'vass d=<d>' header");
    if (!init_state) throw SemanticError(header_line, "missing 'init' line");
    if (!target_state) throw SemanticError(header_line, "missing 'target' line");
    if (!mode) throw SemanticError(header_line, "missing 'mode' line");

    Vass vass = validate(raw);
    auto state_index = [&](const std::string& name) {
        auto idx = vass.state_index(name);
        if (!idx) throw SemanticError(header_line, "unknown state '" + name + "'");
        return *idx;
    };
    for (Counter c : init_counters)
        if (c < 0) throw SemanticError(header_line, "negative initial counter");
    for (Counter c : target_counters)
        if (c < 0) throw SemanticError(header_line, "negative target counter");
    std::size_t init_idx = state_index(*init_state);
    std::size_t target_idx = state_index(*target_state);
    return Instance{std::move(vass), Configuration{init_idx, std::move(init_counters)},
                    Configuration{target_idx, std::move(target_counters)}, *mode, bound};
}

inline std::string emit_instance(const Instance& inst) {
    std::ostringstream out;
    const Vass& v = inst.vass;
    out << "vass d=" << v.dimension() << "\n";
    for (const auto& s : v.states()) out << "state " << s << "\n";
    for (const auto& t : v.transitions()) {
        if (t.guard) {
            out << "ztest " << v.state_name(t.src) << " " << v.state_name(t.dst) << " "
                << (*t.guard + 1) << "\n";
        } else {
            out << "trans " << v.state_name(t.src) << " " << v.state_name(t.dst);
            for (Counter x : t.update) out << " " << x;
            out << "\n";
        }
    }
    out << "init " << v.state_name(inst.init.state);
    for (Counter x : inst.init.counters) out << " " << x;
    out << "\n";
    out << "target " << v.state_name(inst.target.state);
    for (Counter x : inst.target.counters) out << " " << x;
    out << "\n";
    out << "mode " << (inst.mode == Mode::Cover ? "cover" : "reach") << "\n";
    if (inst.bound) out << "bound " << *inst.bound << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Graphs

inline PartitionedGraph parse_graph(const std::string& text) {
    PartitionedGraph g;
    bool have_header = false;
    std::size_t k = 0;
    for (const auto& [lineno, toks] : detail::tokenize_lines(text)) {
        const std::string& kw = toks[0];
        if (kw == "graph") {
            if (toks.size() != 3) throw SyntaxError(lineno, "usage: graph k=<k> mode=partite|circle");
            k = detail::parse_int(detail::keyed(toks[1], "k", lineno), lineno);
            std::string mode = detail::keyed(toks[2], "mode", lineno);
            if (mode == "partite")
                g.layout = PartitionedGraph::Layout::Partite;
            else if (mode == "circle")
                g.layout = PartitionedGraph::Layout::Circle;
            else
                throw SyntaxError(lineno, "mode must be partite or circle");
            g.parts.resize(k);
            have_header = true;
        } else if (!have_header) {
            throw SyntaxError(lineno, "missing 'graph k=<k> mode=...' header");
        } else if (kw == "part") {
            if (toks.size() < 2) throw SyntaxError(lineno, "usage: part <i>: v1 v2 ...");
            std::string idx = toks[1];
            if (!idx.empty() && idx.back() == ':') idx.pop_back();
            long long i = detail::parse_int(idx, lineno);
            if (i < 1 || static_cast<std::size_t>(i) > k)
                throw SemanticError(lineno, "part index out of range: " + idx);
            std::size_t from = 2;
            if (toks.size() > 2 && toks[2] == ":") from = 3;
            for (std::size_t j = from; j < toks.size(); ++j)
                g.parts[i - 1].push_back(toks[j]);
        } else if (kw == "edge") {
            if (toks.size() != 3) throw SyntaxError(lineno, "usage: edge <u> <v>");
            std::size_t pu, pv;
            try {
                pu = g.part_of(toks[1]);
                pv = g.part_of(toks[2]);
            } catch (const GraphError& e) {
                throw SemanticError(lineno, e.what());
            }
            if (g.layout == PartitionedGraph::Layout::Partite && pu == pv)
                throw SemanticError(lineno, "edge {" + toks[1] + "," + toks[2] +
                                                "} lies inside part " + std::to_string(pu + 1));
            if (g.layout == PartitionedGraph::Layout::Circle && pv != (pu + 1) % k)
                throw SemanticError(lineno, "edge " + toks[1] + " -> " + toks[2] +
                                                " does not go to the next layer");
            g.edges.emplace_back(toks[1], toks[2]);
        } else {
            throw SyntaxError(lineno, "unknown keyword '" + kw + "'");
        }
    }
    if (!have_header) throw SyntaxError(1, "missing 'graph' header");
    try {
        g.check();
    } catch (const GraphError& e) {
        throw SemanticError(0, e.what());
    }
    return g;
}

inline std::string emit_graph(const PartitionedGraph& g) {
    std::ostringstream out;
    out << "graph k=" << g.k() << " mode="
        << (g.layout == PartitionedGraph::Layout::Partite ? "partite" : "circle") << "\n";
    for (std::size_t i = 0; i < g.parts.size(); ++i) {
        out << "part " << (i + 1) << ":";
        for (const auto& v : g.parts[i]) out << " " << v;
        out << "\n";
    }
    for (const auto& [u, v] : g.edges) out << "edge " << u << " " << v << "\n";
    return out.str();
}

inline Hypergraph3 parse_hypergraph(const std::string& text) {
    Hypergraph3 h;
    bool have_header = false;
    std::size_t ell = 0;
    for (const auto& [lineno, toks] : detail::tokenize_lines(text)) {
        const std::string& kw = toks[0];
        if (kw == "hypergraph") {
            if (toks.size() != 2) throw SyntaxError(lineno, "usage: hypergraph parts=<l>");
            ell = detail::parse_int(detail::keyed(toks[1], "parts", lineno), lineno);
            h.parts.resize(ell);
            have_header = true;
        } else if (!have_header) {
            throw SyntaxError(lineno, "missing 'hypergraph parts=<l>' header");
        } else if (kw == "part") {
            if (toks.size() < 2) throw SyntaxError(lineno, "usage: part <i>: v1 v2 ...");
            std::string idx = toks[1];
            if (!idx.empty() && idx.back() == ':') idx.pop_back();
            long long i = detail::parse_int(idx, lineno);
            if (i < 1 || static_cast<std::size_t>(i) > ell)
                throw SemanticError(lineno, "part index out of range: " + idx);
            std::size_t from = 2;
            if (toks.size() > 2 && toks[2] == ":") from = 3;
            for (std::size_t j = from; j < toks.size(); ++j)
                h.parts[i - 1].push_back(toks[j]);
        } else if (kw == "hedge") {
            if (toks.size() != 4) throw SyntaxError(lineno, "usage: hedge <u> <v> <w>");
            std::set<std::size_t> ps;
            try {
                for (int j = 1; j <= 3; ++j) ps.insert(h.part_of(toks[j]));
            } catch (const GraphError& e) {
                throw SemanticError(lineno, e.what());
            }
            if (ps.size() != 3)
                throw SemanticError(lineno, "hyperedge {" + toks[1] + "," + toks[2] + "," +
                                                toks[3] + "} does not span three distinct parts");
            h.hyperedges.push_back({toks[1], toks[2], toks[3]});
        } else {
            throw SyntaxError(lineno, "unknown keyword '" + kw + "'");
        }
    }
    if (!have_header) throw SyntaxError(1, "missing 'hypergraph' header");
    try {
        h.check();
    } catch (const GraphError& e) {
        throw SemanticError(0, e.what());
    }
    return h;
}

inline std::string emit_hypergraph(const Hypergraph3& h) {
    std::ostringstream out;
    out << "hypergraph parts=" << h.parts.size() << "\n";
    for (std::size_t i = 0; i < h.parts.size(); ++i) {
        out << "part " << (i + 1) << ":";
        for (const auto& v : h.parts[i]) out << " " << v;
        out << "\n";
    }
    for (const auto& e : h.hyperedges) out << "hedge " << e[0] << " " << e[1] << " " << e[2] << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Counter-program DSL
//
//   counters x y          # declaration; last name is the auxiliary
//   inc x / dec x / ztest x
//   multiply x <p> / divide x <p>
//   edge <pu> <pv>        # primes, operating on the first counter
//   hyperedge <pu> <pv> <pw>
//   guess { inc x ; multiply x 2 | dec x }
//
// guess alternatives are separated by '|'; instructions inside an
// alternative by ';'.  Braces nest.

inline CounterProgram parse_program(const std::string& text) {
    CounterProgram prog;
    std::map<std::string, std::size_t> counter_index;

    // Flatten into a token stream, remembering line numbers; '{', '}',
    // '|', ';' are split off as standalone tokens.
    std::vector<std::pair<std::string, std::size_t>> stream;
    bool have_counters = false;
    for (const auto& [lineno, toks] : detail::tokenize_lines(text)) {
        if (!have_counters) {
            if (toks[0] != "counters")
                throw SyntaxError(lineno, "first line must be 'counters <name>... <aux>'");
            if (toks.size() < 3)
                throw SyntaxError(lineno, "need at least one data counter plus the auxiliary");
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (counter_index.count(toks[i]))
                    throw SemanticError(lineno, "duplicate counter '" + toks[i] + "'");
                counter_index[toks[i]] = prog.counters.size();
                prog.counters.push_back(toks[i]);
            }
            have_counters = true;
            continue;
        }
        for (const auto& tok : toks) {
            std::string cur;
            for (char ch : tok) {
                if (ch == '{' || ch == '}' || ch == '|' || ch == ';') {
                    if (!cur.empty()) stream.emplace_back(cur, lineno), cur.clear();
                    stream.emplace_back(std::string(1, ch), lineno);
                } else {
                    cur += ch;
                }
            }
            if (!cur.empty()) stream.emplace_back(cur, lineno);
        }
        stream.emplace_back(";", lineno);  // line break terminates an instruction
    }
    if (!have_counters) throw SyntaxError(1, "empty program");

    std::size_t pos = 0;
    auto peek = [&]() -> const std::string* {
        return pos < stream.size() ? &stream[pos].first : nullptr;
    };
    auto lineno_here = [&]() { return pos < stream.size() ? stream[pos].second
                                                          : stream.back().second; };
    auto take = [&]() -> std::string {
        if (pos >= stream.size()) throw SyntaxError(lineno_here(), "unexpected end of program");
        return stream[pos++].first;
    };
    auto counter_of = [&](const std::string& name, std::size_t ln) {
        auto it = counter_index.find(name);
        if (it == counter_index.end())
            throw SemanticError(ln, "UnknownCounter: '" + name + "'");
        return it->second;
    };
    auto prime_of = [&](const std::string& tok, std::size_t ln) {
        long long p = detail::parse_int(tok, ln);
        if (p < 2) throw SemanticError(ln, "prime must be at least 2, got " + tok);
        return static_cast<Counter>(p);
    };

    // Parses instruction sequences until one of the given stop tokens.
    std::function<std::vector<Instr>(const std::set<std::string>&)> parse_seq =
        [&](const std::set<std::string>& stop) {
            std::vector<Instr> seq;
            while (const std::string* t = peek()) {
                if (stop.count(*t)) break;
                std::size_t ln = lineno_here();
                std::string kw = take();
                if (kw == ";") continue;
                if (kw == "inc" || kw == "dec") {
                    seq.push_back(Instr::add(counter_of(take(), ln), kw == "inc" ? 1 : -1));
                } else if (kw == "ztest") {
                    seq.push_back(Instr::ztest(counter_of(take(), ln)));
                } else if (kw == "multiply" || kw == "divide") {
                    std::size_t c = counter_of(take(), ln);
                    Counter p = prime_of(take(), ln);
                    seq.push_back(kw == "multiply" ? Instr::multiply(c, p) : Instr::divide(c, p));
                } else if (kw == "edge") {
                    Counter pu = prime_of(take(), ln);
                    Counter pv = prime_of(take(), ln);
                    seq.push_back(Instr::edge(pu, pv));
                } else if (kw == "hyperedge") {
                    Counter pu = prime_of(take(), ln);
                    Counter pv = prime_of(take(), ln);
                    Counter pw = prime_of(take(), ln);
                    seq.push_back(Instr::hyper_edge(pu, pv, pw));
                } else if (kw == "guess") {
                    if (take() != "{") throw SyntaxError(ln, "expected '{' after guess");
                    std::vector<std::vector<Instr>> alts;
                    for (;;) {
                        alts.push_back(parse_seq({"|", "}"}));
                        std::string sep = take();
                        if (sep == "}") break;
                    }
                    seq.push_back(Instr::guess(std::move(alts)));
                } else {
                    throw SyntaxError(ln, "UnknownGadget: '" + kw + "'");
                }
            }
            return seq;
        };

    prog.body = parse_seq({});
    if (pos != stream.size()) throw SyntaxError(lineno_here(), "unexpected token '" + take() + "'");
    return prog;
}

// ---------------------------------------------------------------------------
// Witness / report emission

inline std::string emit_run(const Vass& vass, const Run& run) {
    std::ostringstream out;
    out << "len=" << run.len() << "\n";
    for (const auto& c : run.configurations) {
        out << vass.state_name(c.state);
        for (Counter x : c.counters) out << " " << x;
        out << "\n";
    }
    return out.str();
}

// Inverse of emit_run.  Each consecutive configuration pair is matched
// against the VASS's transitions in declaration order to reconstruct the
// path; an unmatched step is a SemanticError, so a parsed run is always
// a legal run of the given VASS.
inline Run parse_run(const Vass& vass, const std::string& text) {
    auto lines = detail::tokenize_lines(text);
    if (lines.empty()) throw SyntaxError(0, "empty run");
    const auto& [hline, htoks] = lines.front();
    if (htoks.size() != 1) throw SyntaxError(hline, "expected len=<k>");
    std::size_t declared =
        static_cast<std::size_t>(detail::parse_int(detail::keyed(htoks[0], "len", hline), hline));

    Run run;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& [lineno, toks] = lines[li];
        auto state = vass.state_index(toks[0]);
        if (!state) throw SemanticError(lineno, "unknown state '" + toks[0] + "'");
        if (toks.size() != vass.dimension() + 1)
            throw SemanticError(lineno, "expected " + std::to_string(vass.dimension()) +
                                            " counter values");
        std::vector<Counter> counters;
        for (std::size_t i = 1; i < toks.size(); ++i) {
            Counter x = detail::parse_int(toks[i], lineno);
            if (x < 0) throw SemanticError(lineno, "negative counter value");
            counters.push_back(x);
        }
        Configuration c{*state, std::move(counters)};
        if (!run.configurations.empty()) {
            const Configuration& prev = run.configurations.back();
            bool matched = false;
            for (std::size_t ti = 0; ti < vass.transitions().size(); ++ti) {
                auto nc = try_step(vass, prev, vass.transitions()[ti]);
                if (nc && *nc == c) {
                    run.path.push_back(ti);
                    matched = true;
                    break;
                }
            }
            if (!matched)
                throw SemanticError(lineno, "no transition produces this configuration from "
                                            "the previous one");
        }
        run.configurations.push_back(std::move(c));
    }
    if (run.len() != declared)
        throw SemanticError(lines.front().first,
                            "declared len=" + std::to_string(declared) + " but run has " +
                                std::to_string(run.len()) + " configurations");
    return run;
}

inline std::string emit_stats(const SearchStats& stats) {
    std::ostringstream out;
    out << "stats nodes_expanded=" << stats.nodes_expanded
        << " zero_test_steps=" << stats.zero_test_steps;
    out << " max_counters=";
    for (std::size_t i = 0; i < stats.max_counters.size(); ++i)
        out << (i ? "," : "") << stats.max_counters[i];
    out << " wall_seconds=" << stats.wall_seconds << "\n";
    return out.str();
}

// Instance digest + answer, line-oriented key=value.
struct Report {
    Counter n = 0;
    std::size_t d = 0;
    std::size_t q = 0;
    std::size_t t = 0;
    std::optional<Counter> bound;
    std::string algorithm;
    std::string answer;  // yes | no | budget-exhausted
    std::optional<std::size_t> witness_len;
};

inline Report make_report(const Instance& inst, const std::string& algorithm) {
    Report r;
    r.n = instance_size(inst);
    r.d = inst.vass.dimension();
    r.q = inst.vass.states().size();
    r.t = inst.vass.transitions().size();
    r.bound = inst.bound;
    r.algorithm = algorithm;
    return r;
}

inline std::string emit_report(const Report& r) {
    std::ostringstream out;
    out << "n=" << r.n << " d=" << r.d << " states=" << r.q << " transitions=" << r.t;
    if (r.bound) out << " bound=" << *r.bound;
    out << " algo=" << r.algorithm << " answer=" << r.answer;
    if (r.witness_len) out << " witness_len=" << *r.witness_len;
    out << "\n";
    return out.str();
}

}  // namespace vasscov

#endif  // VASSCOV_IO_HPP

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "vasscov/io.hpp"
#include "vasscov/solve.hpp"

using namespace vasscov;

TEST_CASE("parse_instance reads the minimal model and round-trips") {
    std::string text =
        "# comment\n"
        "vass d=1\n"
        "state p\n"
        "trans p p 1\n"
        "init p 0\n"
        "target p 0\n"
        "mode cover\n";
    Instance inst = parse_instance(text);
    CHECK(inst.vass.dimension() == 1);
    CHECK(vass_norm(inst.vass) == 2);
    CHECK(instance_size(inst) == 4);
    CHECK(inst.mode == Mode::Cover);
    CHECK_FALSE(inst.bound.has_value());

    Instance again = parse_instance(emit_instance(inst));
    CHECK(again.vass.states() == inst.vass.states());
    CHECK(again.vass.transitions().size() == inst.vass.transitions().size());
    CHECK(again.init == inst.init);
    CHECK(again.target == inst.target);
    CHECK(again.mode == inst.mode);
}

TEST_CASE("parse_instance round-trips guards and bounds") {
    std::string text =
        "vass d=2\n"
        "state p\nstate q\n"
        "trans p q 1 -1\n"
        "ztest q p 2\n"
        "init p 1 1\n"
        "target q 0 0\n"
        "mode reach\n"
        "bound 7\n";
    Instance inst = parse_instance(text);
    CHECK(inst.vass.has_guards());
    CHECK(inst.vass.transitions()[1].guard == 1);  // counter 2, 0-based 1
    CHECK(inst.bound == 7);
    Instance again = parse_instance(emit_instance(inst));
    CHECK(again.vass.transitions()[1].guard == 1);
    CHECK(again.bound == 7);
    CHECK(again.mode == Mode::Reach);
}

TEST_CASE("parse_instance diagnostics carry line numbers") {
    CHECK_THROWS_AS(parse_instance("state p\n"), SyntaxError);           // before header
    CHECK_THROWS_AS(parse_instance("vass d=1\nwhat p\n"), SyntaxError);  // unknown keyword
    CHECK_THROWS_AS(parse_instance("vass d=1\nstate p\ntrans p p 1\ninit p 0\n"
                                   "target q 0\nmode cover\n"),
                    SemanticError);  // unknown target state
    CHECK_THROWS_AS(parse_instance("vass d=1\nstate p\ntrans p p 1\ninit p 0\n"
                                   "target p 0\n"),
                    SemanticError);  // missing mode
    CHECK_THROWS_AS(parse_instance("vass d=1\nstate p\nztest p p 2\ninit p 0\n"
                                   "target p 0\nmode cover\n"),
                    SemanticError);  // guard index out of range
}

TEST_CASE("parse_graph enforces layout rules") {
    std::string good =
        "graph k=2 mode=partite\n"
        "part 1: a b\n"
        "part 2: c\n"
        "edge a c\n";
    PartitionedGraph g = parse_graph(good);
    CHECK(g.k() == 2);
    CHECK(g.has_edge("a", "c"));
    PartitionedGraph again = parse_graph(emit_graph(g));
    CHECK(again.parts == g.parts);
    CHECK(again.edges == g.edges);

    std::string same_part =
        "graph k=2 mode=partite\n"
        "part 1: a b\n"
        "part 2: c\n"
        "edge a b\n";
    CHECK_THROWS_AS(parse_graph(same_part), SemanticError);

    std::string skip_layer =
        "graph k=3 mode=circle\n"
        "part 1: a\npart 2: b\npart 3: c\n"
        "edge a c\n";  // must go layer 1 -> 2
    CHECK_THROWS_AS(parse_graph(skip_layer), SemanticError);
}

TEST_CASE("parse_hypergraph enforces distinct parts per hyperedge") {
    std::string good =
        "hypergraph parts=4\n"
        "part 1: a\npart 2: b\npart 3: c\npart 4: d\n"
        "hedge a b c\n";
    Hypergraph3 h = parse_hypergraph(good);
    CHECK(h.has_hyperedge("c", "a", "b"));  // order-insensitive
    Hypergraph3 again = parse_hypergraph(emit_hypergraph(h));
    CHECK(again.hyperedges == h.hyperedges);

    std::string shared =
        "hypergraph parts=4\n"
        "part 1: a x\npart 2: b\npart 3: c\npart 4: d\n"
        "hedge a x b\n";
    CHECK_THROWS_AS(parse_hypergraph(shared), SemanticError);
}

TEST_CASE("parse_program handles gadgets, guesses, and errors") {
    std::string text =
        "counters x y\n"
        "inc x\n"
        "multiply x 3\n"
        "guess { divide x 3 | dec x ; dec x }\n"
        "ztest y\n";
    CounterProgram prog = parse_program(text);
    CHECK(prog.counters.size() == 2);  // x plus the auxiliary y
    REQUIRE(prog.body.size() == 4);
    CHECK(prog.body[0].kind == Instr::Kind::AddUnit);
    CHECK(prog.body[1].kind == Instr::Kind::Multiply);
    CHECK(prog.body[2].kind == Instr::Kind::Guess);
    CHECK(prog.body[2].alternatives.size() == 2);
    CHECK(prog.body[2].alternatives[1].size() == 2);

    CHECK_THROWS_AS(parse_program("counters x y\ninc z\n"), SemanticError);  // unknown counter
    CHECK_THROWS_AS(parse_program("counters x y\nfrobnicate x\n"), SyntaxError);
}

TEST_CASE("compiled parsed program matches the direct construction") {
    CounterProgram prog = parse_program("counters x y\nmultiply x 2\n");
    CompiledProgram cp = compile_program(prog);
    Instance inst{cp.vass, Configuration{cp.entry, {3, 0}},
                  Configuration{cp.exit, {6, 0}}, Mode::Reach, 20};
    CHECK(ztest_bounded_search(inst).found);
}

TEST_CASE("emit_run / parse_run round-trip validates the path") {
    Vass v(1, {"p", "q"}, {Transition{0, 0, {1}, std::nullopt}, Transition{0, 1, {0}, std::nullopt}});
    Run run = apply_path(v, Configuration{0, {0}}, {0, 0, 1});
    std::string text = emit_run(v, run);
    Run back = parse_run(v, text);
    CHECK(back.configurations == run.configurations);
    CHECK(back.path == run.path);
    // Parsed runs re-validate through apply_path by construction.
    Run replay = apply_path(v, back.initial(), back.path);
    CHECK(replay.final() == back.final());

    CHECK_THROWS_AS(parse_run(v, "len=2\np 0\np 5\n"), SemanticError);  // illegal step
    CHECK_THROWS_AS(parse_run(v, "len=3\np 0\np 1\n"), SemanticError);  // wrong length
    CHECK_THROWS_AS(parse_run(v, "len=1\nz 0\n"), SemanticError);       // unknown state
}

TEST_CASE("reports are deterministic key=value lines") {
    Vass v(1, {"p"}, {Transition{0, 0, {1}, std::nullopt}});
    Instance inst{std::move(v), Configuration{0, {0}}, Configuration{0, {2}}, Mode::Cover, 5};
    Report r = make_report(inst, "forward");
    r.answer = "yes";
    r.witness_len = 3;
    CHECK(emit_report(r) == "n=5 d=1 states=1 transitions=1 bound=5 algo=forward answer=yes "
                            "witness_len=3\n");
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "truecon/generator.hpp"

using namespace truecon;

TEST_CASE("parsing basic shapes") {
    Process p = parse_process("0");
    CHECK(p->kind == ProcKind::Nil);

    p = parse_process("a!.b.0");
    CHECK(p->kind == ProcKind::Prefix);
    CHECK(p->action == "a");
    CHECK(p->executed);
    CHECK(p->decoration == nullptr);
    CHECK(p->cont->kind == ProcKind::Prefix);
    CHECK(p->cont->action == "b");
    CHECK_FALSE(p->cont->executed);
    CHECK(p->cont->cont->kind == ProcKind::Nil);

    p = parse_process("a.0 |[a]| b.0");
    CHECK(p->kind == ProcKind::Parallel);
    CHECK(p->sync == ActionSet{"a"});
    CHECK(p->left->action == "a");
    CHECK(p->right->action == "b");
}

TEST_CASE("precedence: prefix over parallel over choice") {
    Process p = parse_process("a.b.0 |[]| c.0 + d.0");
    CHECK(p->kind == ProcKind::Choice);
    CHECK(p->left->kind == ProcKind::Parallel);
    CHECK(p->right->action == "d");
}

TEST_CASE("parser rejects bad input") {
    CHECK_THROWS(parse_process(""));
    CHECK_THROWS(parse_process("a."));
    CHECK_THROWS(parse_process("a.0 +"));
    CHECK_THROWS(parse_process("A.0"));
    CHECK_THROWS(parse_process("a.0 |[tau]| b.0"));  // tau never synchronizes
    CHECK_THROWS(parse_process("a.0 junk"));
}

TEST_CASE("printing round-trips") {
    for (const char* text : {"0", "a!.b.0", "a.0 + a.0", "a.0 |[a]| b.0",
                             "(a.0 |[]| a.0) |[a]| a.a.0", "a.(b.0 + c.0)",
                             "tau.a.0"}) {
        Process p = parse_process(text);
        CHECK(print_process(parse_process(print_process(p))) == print_process(p));
    }
    CHECK(print_process(parse_process("a.0+a.0")) == "a.0 + a.0");
}

TEST_CASE("decorated prefixes are serializable") {
    // The decoration produced by a synchronized transition round-trips.
    Process p = parse_process("a.0 |[a]| a.0");
    auto ts = forward_transitions(p);
    REQUIRE(ts.size() == 1);
    std::string text = print_process(ts[0].second);
    CHECK(proc_equal(parse_process(text), ts[0].second));
}

TEST_CASE("is_initial") {
    CHECK(is_initial(parse_process("0")));
    CHECK(is_initial(parse_process("a.0 + b.0")));
    CHECK_FALSE(is_initial(parse_process("a!.b.0")));
}

TEST_CASE("is_well_formed") {
    CHECK(is_well_formed(parse_process("a!.b.0")));
    CHECK_FALSE(is_well_formed(parse_process("b.a!.0")));
    CHECK_FALSE(is_well_formed(parse_process("a!.0 + b!.0")));
    CHECK(is_well_formed(parse_process("a!.0 + b.0")));
    CHECK(is_well_formed(parse_process("a!.0 |[]| b!.0")));
}

TEST_CASE("to_initial") {
    CHECK(print_process(to_initial(parse_process("a!.b.0"))) == "a.b.0");
    CHECK(print_process(to_initial(parse_process("0"))) == "0");
    CHECK(print_process(to_initial(parse_process("a!.0 + c.d.0"))) == "a.0 + c.d.0");
    Process p = parse_process("a!.0 |[]| b!.0");
    CHECK(is_initial(to_initial(p)));
    CHECK(proc_equal(to_initial(to_initial(p)), to_initial(p)));
}

TEST_CASE("executed_occurrences") {
    CHECK(executed_occurrences(parse_process("a.0")).empty());

    auto occ = executed_occurrences(parse_process("a!.b!.0"));
    REQUIRE(occ.size() == 2);
    CHECK(occ[0].first.empty());
    REQUIRE(occ[1].first.size() == 1);
    CHECK(occ[1].first[0].kind == StepKind::IntoPrefix);
    CHECK(occ[1].first[0].action == "a");

    occ = executed_occurrences(parse_process("a!.0 + c.0"));
    REQUIRE(occ.size() == 1);
    REQUIRE(occ[0].first.size() == 1);
    CHECK(occ[0].first[0].kind == StepKind::ChoiceLeft);
}

TEST_CASE("actions_of") {
    CHECK(actions_of(parse_process("0")).empty());
    CHECK(actions_of(parse_process("a.b.0 + a.0")) == ActionSet{"a", "b"});
    CHECK(actions_of(parse_process("a!.0 |[a]| a.0")) == ActionSet{"a"});
}

TEST_CASE("generated processes: structural invariants") {
    GeneratorConfig cfg;
    cfg.seed = 42;
    cfg.count = 60;
    for (auto& p : generate_processes(cfg)) {
        CAPTURE(print_process(p));
        CHECK(is_initial(p));
        CHECK(is_well_formed(p));
        CHECK(proc_equal(parse_process(print_process(p)), p));
        CHECK(executed_occurrences(to_initial(p)).empty());
        CHECK(proc_equal(to_initial(to_initial(p)), to_initial(p)));
    }
}

TEST_CASE("initial implies well-formed on reachable states") {
    GeneratorConfig cfg;
    cfg.seed = 7;
    cfg.count = 20;
    for (auto& p : generate_processes(cfg)) {
        ProvedLTS lts = build_lts(p);
        for (auto& q : lts.states) {
            CHECK(is_well_formed(q));
            if (is_initial(q)) CHECK(proc_equal(q, p));
        }
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "truecon/generator.hpp"

using namespace truecon;

namespace {

Config cfg_of(const ConfigStructure& c, std::initializer_list<const char*> ids) {
    Config x;
    for (auto* id : ids) {
        int e = c.find_event(id);
        REQUIRE(e >= 0);
        x.push_back(e);
    }
    std::sort(x.begin(), x.end());
    return x;
}

ConfigStructure fixture(const char* name) {
    for (const char* base : {"fixtures/", "../fixtures/", "../../fixtures/"}) {
        std::ifstream probe(std::string(base) + name);
        if (probe) return load_scs(std::string(base) + name);
    }
    FAIL("fixture not found: ", name);
    return {};
}

}  // namespace

TEST_CASE("validate_stable") {
    // Autoconcurrency: a diamond of four configurations.
    ConfigStructure c = denote(parse_process("a.0 |[]| a.0")).structure;
    CHECK(c.configurations.size() == 4);
    CHECK(validate_stable(c).ok);

    ConfigStructure bad;
    bad.events.push_back({"e", "a", nullptr});
    bad.configurations.insert({0});
    ValidationReport r = validate_stable(bad);
    CHECK_FALSE(r.ok);
    REQUIRE_FALSE(r.violations.empty());
}

TEST_CASE("connectedness and closure violations are reported") {
    ConfigStructure c;
    c.events.push_back({"e1", "a", nullptr});
    c.events.push_back({"e2", "a", nullptr});
    c.configurations.insert({});
    c.configurations.insert({0, 1});  // skips the singletons
    CHECK_FALSE(validate_stable(c).ok);
}

TEST_CASE("causality and concurrency") {
    Denotation chain = denote(parse_process("a.a.0"));
    Config top = cfg_of(chain.structure, {"a", ".a a"});
    int e1 = chain.structure.find_event("a"), e2 = chain.structure.find_event(".a a");
    auto leq = causality(chain.structure, top);
    CHECK(leq.count({e1, e2}) == 1);
    CHECK(leq.count({e2, e1}) == 0);
    CHECK(concurrency(chain.structure, top).empty());

    Denotation par = denote(parse_process("a.0 |[]| a.0"));
    Config ptop = cfg_of(par.structure, {"|L[] a", "|R[] a"});
    auto pleq = causality(par.structure, ptop);
    int f1 = par.structure.find_event("|L[] a"), f2 = par.structure.find_event("|R[] a");
    CHECK(pleq.count({f1, f2}) == 0);
    CHECK(pleq.count({f2, f1}) == 0);
    CHECK(concurrency(par.structure, ptop).size() == 1);

    Config single = cfg_of(chain.structure, {"a"});
    CHECK(causality(chain.structure, single) ==
          std::set<std::pair<int, int>>{{e1, e1}});
    CHECK(concurrency(chain.structure, single).empty());
}

TEST_CASE("conflicts") {
    ConfigStructure choice = denote(parse_process("a.0 + a.0")).structure;
    CHECK(conflicts(choice).size() == 1);
    CHECK(conflicts(denote(parse_process("a.0 |[]| a.0")).structure).empty());
    CHECK(conflicts(denote(parse_process("a.0")).structure).empty());
}

TEST_CASE("scs transitions") {
    ConfigStructure chain = denote(parse_process("a.a.0")).structure;
    auto ts = scs_transitions(chain);
    REQUIRE(ts.size() == 2);  // the single maximal computation

    ConfigStructure par = denote(parse_process("a.0 |[]| a.0")).structure;
    CHECK(scs_transitions(par).size() == 4);  // diamond

    ConfigStructure only_root;
    only_root.configurations.insert({});
    CHECK(scs_transitions(only_root).empty());
}

TEST_CASE("brm over configurations") {
    ConfigStructure par = denote(parse_process("a.0 |[]| a.0")).structure;
    CHECK(brm_config(par, cfg_of(par, {"|L[] a", "|R[] a"})).to_string() == "{a:2}");
    CHECK(brm_config(par, Config{}).empty());

    ConfigStructure chain = denote(parse_process("a.a.0")).structure;
    CHECK(brm_config(chain, cfg_of(chain, {"a", ".a a"})).to_string() == "{a:1}");
}

TEST_CASE("structure operators") {
    ConfigStructure n = scs_nil();
    CHECK(n.events.empty());
    CHECK(n.configurations == std::set<Config>{{}});

    ConfigStructure pa = scs_prefix("a", scs_nil());
    CHECK(pa.events.size() == 1);
    CHECK(pa.events[0].id == "a");
    CHECK(pa.configurations.size() == 2);

    ConfigStructure ch = scs_choice(pa, pa);
    CHECK(ch.events.size() == 2);
    CHECK(ch.configurations.size() == 3);

    ConfigStructure pl = scs_parallel(pa, pa, {});
    CHECK(pl.events.size() == 2);
    CHECK(pl.configurations.size() == 4);
    CHECK(pl.find_event("|L[] a") >= 0);
    CHECK(pl.find_event("|R[] a") >= 0);

    CHECK_THROWS(scs_parallel(pa, pa, ActionSet{"tau"}));
}

TEST_CASE("denotations of the worked examples") {
    Denotation d = denote(parse_process("a.0 |[]| a.0"));
    CHECK(d.structure.events.size() == 2);
    CHECK(d.structure.configurations.size() == 4);
    CHECK(d.cursor.empty());

    d = denote(parse_process("a.a.0"));
    CHECK(d.structure.events.size() == 2);
    CHECK(d.structure.configurations.size() == 3);
    CHECK(d.cursor.empty());

    d = denote(parse_process("a!.a.0"));
    CHECK(d.structure.configurations.size() == 3);
    REQUIRE(d.cursor.size() == 1);
    CHECK(d.structure.events[d.cursor[0]].id == "a");
}

TEST_CASE("synchronized denotation tracks the proved system") {
    // Synchronization of autoconcurrency with autocausation: 5 states in the
    // proved system, and the structure has matching configurations.
    Denotation d = denote(parse_process("(a.0 |[]| a.0) |[a]| a.a.0"));
    CHECK(validate_stable(d.structure).ok);
    CHECK(d.structure.configurations.size() == 5);
    ProvedLTS l = build_lts(parse_process("(a.0 |[]| a.0) |[a]| a.a.0"));
    CHECK(l.states.size() == 5);
}

TEST_CASE("conflict locality") {
    CHECK_FALSE(is_conflict_local(fixture("E.json")).local);
    CHECK_FALSE(is_conflict_local(fixture("F.json")).local);
    CHECK(is_conflict_local(denote(parse_process("a.0 + a.0")).structure).local);
    CHECK(is_conflict_local(denote(parse_process("a.0 |[]| a.0")).structure).local);
    // Strict mode refuses even root-level cliques.
    CHECK_FALSE(
        is_conflict_local(denote(parse_process("a.0 + a.0")).structure, true).local);
    // A caused conflict under a common prefix stays local in both modes.
    CHECK(is_conflict_local(denote(parse_process("c.(a.0 + a.0)")).structure, true).local);
}

TEST_CASE("locality witness labels for the counterexample fixtures") {
    ConfigStructure e = fixture("E.json");
    LocalityResult r = is_conflict_local(e);
    REQUIRE_FALSE(r.local);
    REQUIRE(r.witness_clique.size() == 3);
    for (int ev : r.witness_clique) CHECK(e.events[ev].label == "b");
}

TEST_CASE("fixture shapes and JSON round trip") {
    ConfigStructure e = fixture("E.json");
    CHECK(e.configurations.size() == 13);
    ConfigStructure f = fixture("F.json");
    CHECK(f.configurations.size() == 12);
    CHECK(validate_stable(e).ok);
    CHECK(validate_stable(f).ok);

    ConfigStructure round = scs_from_json(scs_to_json(e));
    CHECK(round.configurations == e.configurations);
    CHECK(round.events.size() == e.events.size());

    ConfigStructure empty = scs_from_json(R"({"events":[],"configurations":[[]]})");
    CHECK(empty.events.empty());
    CHECK(empty.configurations == scs_nil().configurations);

    CHECK_THROWS(scs_from_json(R"({"events":[],"configurations":[["ghost"]]})"));
    CHECK_THROWS(scs_from_json(
        R"({"events":[{"id":"e","label":"a"},{"id":"e","label":"b"}],"configurations":[[]]})"));
}

TEST_CASE("denotations are stable; cursor tracks reachable states") {
    GeneratorConfig gc;
    gc.seed = 5;
    gc.count = 25;
    for (auto& p : generate_processes(gc)) {
        ProvedLTS l = build_lts(p);
        for (auto& q : l.states) {
            Denotation d = denote(q);
            CAPTURE(print_process(q));
            CHECK(validate_stable(d.structure).ok);
            CHECK(d.structure.has_config(d.cursor));
            CHECK(brm_config(d.structure, d.cursor) == brm_process(q));
        }
    }
}

TEST_CASE("proved transitions biject with structure transitions at the cursor") {
    GeneratorConfig gc;
    gc.seed = 19;
    gc.count = 20;
    for (auto& p : generate_processes(gc)) {
        ProvedLTS l = build_lts(p);
        Denotation root = denote(p);
        for (auto& q : l.states) {
            Denotation d = denote(q);
            // Outgoing proved transitions map injectively onto single-event
            // extensions of the cursor with matching labels.
            auto fwd = forward_transitions(q);
            std::set<Config> targets;
            for (auto& [t, q2] : fwd) {
                int e = d.structure.find_event(t);
                REQUIRE(e >= 0);
                CHECK(d.structure.events[e].label == *act(t));
                Config y = d.cursor;
                y.insert(std::lower_bound(y.begin(), y.end(), e), e);
                CHECK(d.structure.has_config(y));
                targets.insert(y);
            }
            CHECK(targets.size() == fwd.size());
            // And every structure transition out of the cursor is hit.
            std::size_t outgoing = 0;
            for (auto& [x, a, y] : scs_transitions(d.structure))
                if (x == d.cursor) outgoing++;
            CHECK(outgoing == fwd.size());
        }
        (void)root;
    }
}

TEST_CASE("partial order and coverage of causality/concurrency") {
    GeneratorConfig gc;
    gc.seed = 29;
    gc.count = 15;
    for (auto& p : generate_processes(gc)) {
        ConfigStructure c = denote(p).structure;
        for (auto& x : c.configurations) {
            auto leq = causality(c, x);
            auto conc = concurrency(c, x);
            for (int e : x) CHECK(leq.count({e, e}) == 1);
            for (auto& [e1, e2] : leq)
                for (auto& [f1, f2] : leq)
                    if (e2 == f1) CHECK(leq.count({e1, f2}) == 1);
            for (std::size_t i = 0; i < x.size(); i++)
                for (std::size_t j = i + 1; j < x.size(); j++) {
                    int e1 = x[i], e2 = x[j];
                    bool ordered = leq.count({e1, e2}) || leq.count({e2, e1});
                    bool concurrent = conc.count({std::min(e1, e2), std::max(e1, e2)});
                    CHECK(ordered != concurrent);
                }
        }
    }
}

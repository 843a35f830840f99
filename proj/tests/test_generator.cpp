#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "truecon/generator.hpp"

using namespace truecon;

namespace {

int prefix_depth(const Process& p) {
    switch (p->kind) {
        case ProcKind::Nil:
            return 0;
        case ProcKind::Prefix:
            return 1 + prefix_depth(p->cont);
        case ProcKind::Choice:
        case ProcKind::Parallel:
            return std::max(prefix_depth(p->left), prefix_depth(p->right));
    }
    return 0;
}

}  // namespace

TEST_CASE("generation is deterministic per seed") {
    GeneratorConfig cfg;
    cfg.seed = 123;
    cfg.count = 20;
    auto a = generate_processes(cfg);
    auto b = generate_processes(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); i++) CHECK(proc_equal(a[i], b[i]));

    cfg.seed = 124;
    auto c = generate_processes(cfg);
    bool all_equal = true;
    for (std::size_t i = 0; i < a.size(); i++)
        if (!proc_equal(a[i], c[i])) all_equal = false;
    CHECK_FALSE(all_equal);
}

TEST_CASE("generated processes respect the bounds") {
    GeneratorConfig cfg;
    cfg.seed = 9;
    cfg.count = 40;
    cfg.max_prefix_depth = 3;
    cfg.max_actions = 2;
    for (auto& p : generate_processes(cfg)) {
        CHECK(is_initial(p));
        CHECK(is_well_formed(p));
        CHECK(prefix_depth(p) <= cfg.max_prefix_depth);
        for (auto& a : actions_of(p)) CHECK((a == "a" || a == "b"));
    }
}

TEST_CASE("smallest shape") {
    GeneratorConfig cfg;
    cfg.seed = 1;
    cfg.count = 1;
    cfg.max_prefix_depth = 1;
    cfg.max_parallel_width = 1;
    auto procs = generate_processes(cfg);
    REQUIRE(procs.size() == 1);
    CHECK(prefix_depth(procs[0]) <= 1);
}

TEST_CASE("local-only batches pass the locality check") {
    GeneratorConfig cfg;
    cfg.seed = 77;
    cfg.count = 30;
    cfg.local_only = true;
    for (auto& p : generate_processes(cfg))
        CHECK(is_conflict_local(denote(p).structure).local);
}

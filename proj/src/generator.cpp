#include "truecon/generator.hpp"

#include <random>
#include <stdexcept>

namespace truecon {

namespace {

struct Gen {
    std::mt19937_64 rng;
    std::vector<Action> actions;

    Action pick_action() {
        return actions[std::uniform_int_distribution<std::size_t>(0, actions.size() - 1)(rng)];
    }

    ActionSet pick_sync() {
        // Bias toward small synchronization sets; empty is allowed.
        ActionSet s;
        for (auto& a : actions)
            if (std::uniform_real_distribution<>(0.0, 1.0)(rng) < 0.3) s.insert(a);
        return s;
    }

    Process gen(int depth, int width) {
        int roll = std::uniform_int_distribution<int>(0, 99)(rng);
        if (depth <= 0 || roll < 15) return proc_nil();
        if (roll < 60 || width <= 0) {
            return proc_prefix(pick_action(), false, nullptr, gen(depth - 1, width));
        }
        if (roll < 80) {
            // Keep choices meaningful: at least one side starts with a prefix.
            Process l = proc_prefix(pick_action(), false, nullptr, gen(depth - 1, width));
            Process r = gen(depth, width);
            return proc_choice(l, r);
        }
        return proc_parallel(gen(depth - 1, width - 1), gen(depth - 1, width - 1),
                             pick_sync());
    }
};

}  // namespace

std::vector<Process> generate_processes(const GeneratorConfig& cfg) {
    Gen g{std::mt19937_64(cfg.seed), {}};
    for (int i = 0; i < cfg.max_actions; i++)
        g.actions.push_back(std::string(1, static_cast<char>('a' + (i % 26))));

    std::vector<Process> out;
    const int budget_per_item = 500;
    while (out.size() < cfg.count) {
        bool found = false;
        for (int attempt = 0; attempt < budget_per_item; attempt++) {
            Process p = g.gen(cfg.max_prefix_depth, cfg.max_parallel_width);
            if (p->kind == ProcKind::Nil) continue;  // skip degenerate samples
            if (cfg.local_only && !is_conflict_local(denote(p).structure).local) continue;
            out.push_back(p);
            found = true;
            break;
        }
        if (!found)
            throw std::runtime_error("generate_processes: rejection budget exhausted");
    }
    return out;
}

}  // namespace truecon

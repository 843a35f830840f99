#pragma once

#include <cstdint>
#include <vector>

#include "truecon/structures.hpp"

namespace truecon {

struct GeneratorConfig {
    std::uint64_t seed = 0;
    std::size_t count = 1;
    int max_prefix_depth = 3;
    int max_parallel_width = 2;
    int max_actions = 3;
    bool local_only = false;
};

// Deterministic per seed. With local_only, rejection-samples until each
// candidate's denotation is conflict-local; throws when the budget runs out.
std::vector<Process> generate_processes(const GeneratorConfig& cfg);

}  // namespace truecon

#pragma once

#include <string>
#include <vector>

#include "truecon/structures.hpp"

namespace truecon {

struct TraceStep {
    bool backward = false;
    Action action;
};

struct EquivalenceWitness {
    bool verdict = false;
    std::size_t relation_size = 0;          // surviving pairs/triples
    std::vector<TraceStep> trace;           // distinguishing trace when false
};

std::string witness_to_json(const EquivalenceWitness& w);

// Hereditary history-preserving bisimilarity over stable structures.
EquivalenceWitness hhpb(const ConfigStructure& c1, const ConfigStructure& c2);

// brm-forward-reverse bisimilarity over stable structures.
EquivalenceWitness frb_brm_scs(const ConfigStructure& c1, const ConfigStructure& c2);

// brm-forward-reverse bisimilarity over processes, via their proved LTSs.
EquivalenceWitness frb_brm_proc(const Process& p1, const Process& p2);

// Replay checks: does the trace certify inequivalence of the two inputs?
bool trace_distinguishes_frb_scs(const ConfigStructure& c1, const ConfigStructure& c2,
                                 const std::vector<TraceStep>& trace);
bool trace_distinguishes_frb_proc(const Process& p1, const Process& p2,
                                  const std::vector<TraceStep>& trace);
bool trace_distinguishes_hhpb(const ConfigStructure& c1, const ConfigStructure& c2,
                              const std::vector<TraceStep>& trace);

}  // namespace truecon

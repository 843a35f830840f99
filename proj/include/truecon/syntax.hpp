#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "truecon/proofterm.hpp"

namespace truecon {

enum class ProcKind { Nil, Prefix, Choice, Parallel };

class ProcessNode;
using Process = std::shared_ptr<const ProcessNode>;

class ProcessNode {
public:
    ProcKind kind;
    // Prefix
    Action action;
    bool executed = false;
    ProofTerm decoration;  // null unless executed and synchronized
    Process cont;
    // Choice / Parallel
    Process left, right;
    ActionSet sync;  // Parallel only
};

Process proc_nil();
Process proc_prefix(Action a, bool executed, ProofTerm deco, Process cont);
Process proc_choice(Process l, Process r);
Process proc_parallel(Process l, Process r, ActionSet sync);

int proc_compare(const Process& a, const Process& b);
bool proc_equal(const Process& a, const Process& b);

Process parse_process(const std::string& text);
std::string print_process(const Process& p);

bool is_initial(const Process& p);
bool is_well_formed(const Process& p);
Process to_initial(const Process& p);

// Positional address of a subterm.
enum class StepKind { IntoPrefix, ChoiceLeft, ChoiceRight, ParLeft, ParRight };
struct OccurrenceStep {
    StepKind kind;
    Action action;   // IntoPrefix
    ActionSet sync;  // ParLeft/ParRight
};
using OccurrencePath = std::vector<OccurrenceStep>;

// All positions whose subterm is an executed prefix, in left-to-right preorder.
std::vector<std::pair<OccurrencePath, Process>> executed_occurrences(const Process& p);

ActionSet actions_of(const Process& p);

}  // namespace truecon

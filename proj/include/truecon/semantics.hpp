#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "truecon/syntax.hpp"

namespace truecon {

// Default bound on explored states; override with TRUECON_STATE_CAP.
std::size_t default_state_cap();

// All forward transitions derivable from the operational rules.
std::vector<std::pair<ProofTerm, Process>> forward_transitions(const Process& p);

// Decorates the executed prefixes reached along the given synchronization
// term with that term. Throws on inputs the rules can never produce.
Process enr(const Process& p, const ProofTerm& syn_term);

struct ProvedLTS {
    struct Edge {
        int src;
        ProofTerm label;
        int dst;
    };
    std::vector<Process> states;     // index 0 = root
    std::vector<std::string> keys;   // canonical printed form per state
    std::vector<Edge> edges;
    std::vector<std::vector<int>> out_edges, in_edges;  // per-state edge indices

    int find_state(const Process& p) const;  // -1 when absent
};

ProvedLTS build_lts(const Process& initial, std::size_t cap = default_state_cap());

// All (source, label) with an edge into p; read backward these are the
// transitions that can be undone.
std::vector<std::pair<Process, ProofTerm>> incoming_transitions(const ProvedLTS& lts,
                                                                const Process& p);

// Backward ready multiset of a process, computed inductively on the syntax.
ActionMultiset brm_process(const Process& p);

// Proof term of an executed occurrence: the stored decoration when present,
// otherwise reconstructed from the operator path.
ProofTerm apt(const OccurrencePath& occ, const Process& p);

using PtSet = std::set<ProofTerm, PtLess>;

// The configuration X_P identifying p inside the denotation of its initial
// version, computed syntactically from the executed occurrences.
PtSet history_configuration(const Process& p);

// Interleaving/synchronization of two label sequences.
std::vector<ProofTerm> zip_interleave(const std::vector<ProofTerm>& s1,
                                      const std::vector<ProofTerm>& s2,
                                      const ActionSet& sync);

std::string lts_to_dot(const ProvedLTS& lts);
std::string lts_to_json(const ProvedLTS& lts);

}  // namespace truecon

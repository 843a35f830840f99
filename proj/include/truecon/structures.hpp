#pragma once

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "truecon/semantics.hpp"

namespace truecon {

struct ScsEvent {
    std::string id;   // unique within a structure
    Action label;
    ProofTerm term;   // set for denotations, null for loaded structures
};

// Configuration as a sorted vector of event indices.
using Config = std::vector<int>;

struct ConfigStructure {
    std::vector<ScsEvent> events;
    std::set<Config> configurations;

    bool has_config(const Config& x) const { return configurations.count(x) != 0; }
    int find_event(const std::string& id) const;       // -1 when absent
    int find_event(const ProofTerm& t) const;          // by structural equality
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// Checks rooted, connected, and closure under bounded unions/intersections.
ValidationReport validate_stable(const ConfigStructure& c);

// Causality within one configuration, including the reflexive pairs.
std::set<std::pair<int, int>> causality(const ConfigStructure& c, const Config& x);

// Unordered pairs of distinct events of x neither of which causes the other.
std::set<std::pair<int, int>> concurrency(const ConfigStructure& c, const Config& x);

// Unordered pairs of distinct events never jointly present in a configuration.
// Restricted to events that occur in at least one configuration.
std::set<std::pair<int, int>> conflicts(const ConfigStructure& c);

// All single-event extensions between configurations.
std::vector<std::tuple<Config, Action, Config>> scs_transitions(const ConfigStructure& c);

// Multiset of labels of the events individually removable from x.
ActionMultiset brm_config(const ConfigStructure& c, const Config& x);

ConfigStructure scs_nil();
ConfigStructure scs_prefix(const Action& a, const ConfigStructure& c);
ConfigStructure scs_choice(const ConfigStructure& c1, const ConfigStructure& c2);
ConfigStructure scs_parallel(const ConfigStructure& c1, const ConfigStructure& c2,
                             const ActionSet& sync);

struct Denotation {
    ConfigStructure structure;
    Config cursor;
};

// Denotational semantics: the structure of to_initial(p) with the cursor
// at p's history configuration.
Denotation denote(const Process& p);

struct LocalityResult {
    bool local = true;
    std::vector<int> witness_clique;  // a violating maximal conflict clique
};

// Every maximal conflict clique must share a common strict cause. With
// strict=false (default) cliques whose members are all cause-free count as
// local; with strict=true they do not.
LocalityResult is_conflict_local(const ConfigStructure& c, bool strict = false);

ConfigStructure load_scs(const std::string& path, std::optional<Config>* cursor = nullptr);
void save_scs(const ConfigStructure& c, const std::string& path,
              const std::optional<Config>& cursor = std::nullopt);
std::string scs_to_json(const ConfigStructure& c,
                        const std::optional<Config>& cursor = std::nullopt);
ConfigStructure scs_from_json(const std::string& text, std::optional<Config>* cursor = nullptr);

}  // namespace truecon

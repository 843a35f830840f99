#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "truecon/equivalences.hpp"

namespace truecon {

// ---- Backward ready multiset logic ----

enum class BrmKind { True, Atom, Not, And, Fwd, Bwd };

class BrmFormulaNode;
using BrmFormula = std::shared_ptr<const BrmFormulaNode>;

class BrmFormulaNode {
public:
    BrmKind kind;
    ActionMultiset atom;       // Atom
    Action action;             // Fwd, Bwd
    BrmFormula sub, sub2;      // Not/diamonds use sub; And uses sub+sub2
};

BrmFormula brm_true();
BrmFormula brm_atom(ActionMultiset m);
BrmFormula brm_not(BrmFormula f);
BrmFormula brm_and(BrmFormula f, BrmFormula g);
BrmFormula brm_fwd(Action a, BrmFormula f);
BrmFormula brm_bwd(Action a, BrmFormula f);

BrmFormula parse_brm_formula(const std::string& text);
std::string to_string(const BrmFormula& f);
int depth_brm(const BrmFormula& f);

// ---- Event identifier logic ----

enum class EilKind { True, Not, And, FwdBind, Declare, BwdRef };

class EilFormulaNode;
using EilFormula = std::shared_ptr<const EilFormulaNode>;

class EilFormulaNode {
public:
    EilKind kind;
    std::string id;            // FwdBind, Declare, BwdRef
    Action action;             // FwdBind, Declare
    EilFormula sub, sub2;
};

EilFormula eil_true();
EilFormula eil_not(EilFormula f);
EilFormula eil_and(EilFormula f, EilFormula g);
EilFormula eil_fwd_bind(std::string x, Action a, EilFormula f);
EilFormula eil_declare(std::string x, Action a, EilFormula f);
EilFormula eil_bwd_ref(std::string x, EilFormula f);

EilFormula parse_eil_formula(const std::string& text);
std::string to_string(const EilFormula& f);
int depth_eil(const EilFormula& f);
std::set<std::string> fid(const EilFormula& f);

// Environments: identifiers bound to events, as structure-event indices or
// as proof terms depending on the model.
using EnvScs = std::map<std::string, int>;
using EnvProc = std::map<std::string, ProofTerm>;

// ---- Model checking ----

bool mc_brm_process(const Process& p, const BrmFormula& f,
                    std::size_t cap = default_state_cap());
bool mc_brm_scs(const Denotation& d, const BrmFormula& f);

// Throws when rho is not permissible for (x, f) / (history of p, f).
bool mc_eil_scs(const ConfigStructure& c, const Config& x, const EnvScs& rho,
                const EilFormula& f);
bool mc_eil_process(const Process& p, const EnvProc& rho, const EilFormula& f,
                    std::size_t cap = default_state_cap());

// ---- Translation of BRM logic into EIL ----

// Stack of (identifier, action) records, most recent last.
using HistorySequence = std::vector<std::pair<std::string, Action>>;

// Throws when the history records fewer occurrences of an action than some
// multiset atom demands.
EilFormula translate_brm_to_eil(const BrmFormula& f, const ActionSet& actions,
                                const HistorySequence& h);

// When p satisfies f, builds the history/environment pair under which the
// translated formula holds at p; returns nullopt when p does not satisfy f.
std::optional<std::pair<HistorySequence, EnvProc>> witness_environment(
    const Process& p, const BrmFormula& f);

// Exhaustive search over path-consistent histories (one record per executed
// occurrence of each action mentioned in f) and action-compatible
// environments for a pair under which the translation holds at p. Used both
// by witness_environment and to confirm the absence of witnesses when p does
// not satisfy f.
std::optional<std::pair<HistorySequence, EnvProc>> search_translation_witness(
    const Process& p, const BrmFormula& f, std::size_t cap = default_state_cap());

// True when the path-consistent history of p records enough occurrences for
// every multiset atom of f, accounting for forward diamonds along the way.
bool translation_feasible(const Process& p, const BrmFormula& f);

// ---- Bounded exhaustive formula generation ----

std::vector<BrmFormula> enumerate_brm_formulas(const ActionSet& actions, int max_depth,
                                               int max_multiplicity);
std::vector<EilFormula> enumerate_eil_formulas(const ActionSet& actions, int max_depth,
                                               int max_ids);

}  // namespace truecon

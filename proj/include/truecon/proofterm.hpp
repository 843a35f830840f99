#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "truecon/multiset.hpp"

namespace truecon {

// Proof terms: transition labels recording the operator path above the fired
// action. Structural equality is event identity.
enum class PtKind { Base, Dot, PlusL, PlusR, ParL, ParR, Syn };

class ProofTermNode;
using ProofTerm = std::shared_ptr<const ProofTermNode>;

class ProofTermNode {
public:
    PtKind kind;
    Action action;    // Base, Dot
    ActionSet sync;   // ParL, ParR, Syn
    ProofTerm child;  // Dot, PlusL, PlusR, ParL, ParR
    ProofTerm left, right;  // Syn
};

ProofTerm pt_base(Action a);
ProofTerm pt_dot(Action a, ProofTerm t);
ProofTerm pt_plusl(ProofTerm t);
ProofTerm pt_plusr(ProofTerm t);
ProofTerm pt_parl(ActionSet sync, ProofTerm t);
ProofTerm pt_parr(ActionSet sync, ProofTerm t);
ProofTerm pt_syn(ProofTerm l, ProofTerm r, ActionSet sync);

// Extracts the action of a proof term. Partial: a Syn whose sides disagree
// has no action.
std::optional<Action> act(const ProofTerm& t);

int pt_compare(const ProofTerm& a, const ProofTerm& b);
bool pt_equal(const ProofTerm& a, const ProofTerm& b);

struct PtLess {
    bool operator()(const ProofTerm& a, const ProofTerm& b) const {
        return pt_compare(a, b) < 0;
    }
};

std::string to_string(const ProofTerm& t);
ProofTerm parse_proof_term(const std::string& text);

std::string sync_to_string(const ActionSet& sync);

}  // namespace truecon

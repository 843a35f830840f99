#include "truecon/proofterm.hpp"

#include <sstream>

#include "cursor.hpp"

namespace truecon {

static ProofTerm make(ProofTermNode n) {
    return std::make_shared<const ProofTermNode>(std::move(n));
}

ProofTerm pt_base(Action a) { return make({.kind = PtKind::Base, .action = std::move(a)}); }
ProofTerm pt_dot(Action a, ProofTerm t) {
    return make({.kind = PtKind::Dot, .action = std::move(a), .child = std::move(t)});
}
ProofTerm pt_plusl(ProofTerm t) { return make({.kind = PtKind::PlusL, .child = std::move(t)}); }
ProofTerm pt_plusr(ProofTerm t) { return make({.kind = PtKind::PlusR, .child = std::move(t)}); }
ProofTerm pt_parl(ActionSet sync, ProofTerm t) {
    return make({.kind = PtKind::ParL, .sync = std::move(sync), .child = std::move(t)});
}
ProofTerm pt_parr(ActionSet sync, ProofTerm t) {
    return make({.kind = PtKind::ParR, .sync = std::move(sync), .child = std::move(t)});
}
ProofTerm pt_syn(ProofTerm l, ProofTerm r, ActionSet sync) {
    return make({.kind = PtKind::Syn,
                 .sync = std::move(sync),
                 .left = std::move(l),
                 .right = std::move(r)});
}

std::optional<Action> act(const ProofTerm& t) {
    switch (t->kind) {
        case PtKind::Base:
            return t->action;
        case PtKind::Dot:
        case PtKind::PlusL:
        case PtKind::PlusR:
        case PtKind::ParL:
        case PtKind::ParR:
            return act(t->child);
        case PtKind::Syn: {
            auto a1 = act(t->left), a2 = act(t->right);
            if (a1 && a2 && *a1 == *a2) return a1;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

int pt_compare(const ProofTerm& a, const ProofTerm& b) {
    if (a == b) return 0;
    if (!a) return -1;
    if (!b) return 1;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    if (int c = a->action.compare(b->action)) return c;
    if (a->sync != b->sync) return a->sync < b->sync ? -1 : 1;
    switch (a->kind) {
        case PtKind::Syn:
            if (int c = pt_compare(a->left, b->left)) return c;
            return pt_compare(a->right, b->right);
        case PtKind::Base:
            return 0;
        default:
            return pt_compare(a->child, b->child);
    }
}

bool pt_equal(const ProofTerm& a, const ProofTerm& b) { return pt_compare(a, b) == 0; }

std::string sync_to_string(const ActionSet& sync) {
    std::ostringstream os;
    bool first = true;
    for (auto& a : sync) {
        if (!first) os << ',';
        first = false;
        os << a;
    }
    return os.str();
}

std::string to_string(const ProofTerm& t) {
    switch (t->kind) {
        case PtKind::Base:
            return t->action;
        case PtKind::Dot:
            return "." + t->action + " " + to_string(t->child);
        case PtKind::PlusL:
            return "+L " + to_string(t->child);
        case PtKind::PlusR:
            return "+R " + to_string(t->child);
        case PtKind::ParL:
            return "|L[" + sync_to_string(t->sync) + "] " + to_string(t->child);
        case PtKind::ParR:
            return "|R[" + sync_to_string(t->sync) + "] " + to_string(t->child);
        case PtKind::Syn:
            return "<" + to_string(t->left) + "," + to_string(t->right) + ">[" +
                   sync_to_string(t->sync) + "]";
    }
    return "";
}

namespace detail {

ActionSet parse_actlist(Cursor& c) {
    ActionSet out;
    if (c.peek() == ']') return out;
    for (;;) {
        Action a = c.ident();
        if (a == "tau") c.fail("tau not allowed in a synchronization set");
        out.insert(a);
        if (!c.try_consume(",")) break;
    }
    return out;
}

ProofTerm parse_pterm(Cursor& c) {
    if (c.try_consume("<")) {
        ProofTerm l = parse_pterm(c);
        c.expect(",");
        ProofTerm r = parse_pterm(c);
        c.expect(">");
        c.expect("[");
        ActionSet sync = parse_actlist(c);
        c.expect("]");
        return pt_syn(l, r, std::move(sync));
    }
    if (c.try_consume("+L")) return pt_plusl(parse_pterm(c));
    if (c.try_consume("+R")) return pt_plusr(parse_pterm(c));
    if (c.try_consume("|L[")) {
        ActionSet sync = parse_actlist(c);
        c.expect("]");
        return pt_parl(std::move(sync), parse_pterm(c));
    }
    if (c.try_consume("|R[")) {
        ActionSet sync = parse_actlist(c);
        c.expect("]");
        return pt_parr(std::move(sync), parse_pterm(c));
    }
    if (c.try_consume(".")) {
        Action a = c.ident();
        return pt_dot(std::move(a), parse_pterm(c));
    }
    return pt_base(c.ident());
}

}  // namespace detail

ProofTerm parse_proof_term(const std::string& text) {
    detail::Cursor c(text);
    ProofTerm t = detail::parse_pterm(c);
    c.expect_eof();
    return t;
}

}  // namespace truecon

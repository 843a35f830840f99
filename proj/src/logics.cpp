#include "truecon/logics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "cursor.hpp"

namespace truecon {

// ---- Formula constructors ----

BrmFormula brm_true() {
    return std::make_shared<const BrmFormulaNode>(BrmFormulaNode{BrmKind::True, {}, {}, nullptr, nullptr});
}
BrmFormula brm_atom(ActionMultiset m) {
    return std::make_shared<const BrmFormulaNode>(
        BrmFormulaNode{BrmKind::Atom, std::move(m), {}, nullptr, nullptr});
}
BrmFormula brm_not(BrmFormula f) {
    return std::make_shared<const BrmFormulaNode>(
        BrmFormulaNode{BrmKind::Not, {}, {}, std::move(f), nullptr});
}
BrmFormula brm_and(BrmFormula f, BrmFormula g) {
    return std::make_shared<const BrmFormulaNode>(
        BrmFormulaNode{BrmKind::And, {}, {}, std::move(f), std::move(g)});
}
BrmFormula brm_fwd(Action a, BrmFormula f) {
    return std::make_shared<const BrmFormulaNode>(
        BrmFormulaNode{BrmKind::Fwd, {}, std::move(a), std::move(f), nullptr});
}
BrmFormula brm_bwd(Action a, BrmFormula f) {
    return std::make_shared<const BrmFormulaNode>(
        BrmFormulaNode{BrmKind::Bwd, {}, std::move(a), std::move(f), nullptr});
}

EilFormula eil_true() {
    return std::make_shared<const EilFormulaNode>(EilFormulaNode{EilKind::True, {}, {}, nullptr, nullptr});
}
EilFormula eil_not(EilFormula f) {
    return std::make_shared<const EilFormulaNode>(
        EilFormulaNode{EilKind::Not, {}, {}, std::move(f), nullptr});
}
EilFormula eil_and(EilFormula f, EilFormula g) {
    return std::make_shared<const EilFormulaNode>(
        EilFormulaNode{EilKind::And, {}, {}, std::move(f), std::move(g)});
}
EilFormula eil_fwd_bind(std::string x, Action a, EilFormula f) {
    return std::make_shared<const EilFormulaNode>(
        EilFormulaNode{EilKind::FwdBind, std::move(x), std::move(a), std::move(f), nullptr});
}
EilFormula eil_declare(std::string x, Action a, EilFormula f) {
    return std::make_shared<const EilFormulaNode>(
        EilFormulaNode{EilKind::Declare, std::move(x), std::move(a), std::move(f), nullptr});
}
EilFormula eil_bwd_ref(std::string x, EilFormula f) {
    return std::make_shared<const EilFormulaNode>(
        EilFormulaNode{EilKind::BwdRef, std::move(x), {}, std::move(f), nullptr});
}

// ---- Printing ----

std::string to_string(const BrmFormula& f) {
    switch (f->kind) {
        case BrmKind::True:
            return "true";
        case BrmKind::Atom:
            return f->atom.to_string();
        case BrmKind::Not:
            return "!" + to_string(f->sub);
        case BrmKind::And:
            return "(" + to_string(f->sub) + " & " + to_string(f->sub2) + ")";
        case BrmKind::Fwd:
            return "<" + f->action + ">" + to_string(f->sub);
        case BrmKind::Bwd:
            return "<" + f->action + "!>" + to_string(f->sub);
    }
    return {};
}

std::string to_string(const EilFormula& f) {
    switch (f->kind) {
        case EilKind::True:
            return "true";
        case EilKind::Not:
            return "!" + to_string(f->sub);
        case EilKind::And:
            return "(" + to_string(f->sub) + " & " + to_string(f->sub2) + ")";
        case EilKind::FwdBind:
            return "<" + f->id + ":" + f->action + ">" + to_string(f->sub);
        case EilKind::Declare:
            return "(" + f->id + ":" + f->action + ")" + to_string(f->sub);
        case EilKind::BwdRef:
            return "<<" + f->id + ">>" + to_string(f->sub);
    }
    return {};
}

// ---- Parsing ----

namespace {

using detail::Cursor;

BrmFormula parse_brm(Cursor& c);

BrmFormula parse_brm_unary(Cursor& c) {
    if (c.try_keyword("true")) return brm_true();
    if (c.try_consume("!")) return brm_not(parse_brm_unary(c));
    if (c.try_consume("{")) {
        ActionMultiset m;
        if (!c.try_consume("}")) {
            do {
                std::string a = c.ident();
                c.expect(":");
                int n = c.natural();
                if (n <= 0) c.fail("multiplicity must be positive");
                if (m.count(a) != 0) c.fail("duplicate action in multiset");
                m.add(a, n);
            } while (c.try_consume(","));
            c.expect("}");
        }
        return brm_atom(std::move(m));
    }
    if (c.try_consume("<")) {
        std::string a = c.ident();
        bool backward = c.try_consume("!");
        c.expect(">");
        BrmFormula sub = parse_brm_unary(c);
        return backward ? brm_bwd(a, sub) : brm_fwd(a, sub);
    }
    if (c.try_consume("(")) {
        BrmFormula f = parse_brm(c);
        c.expect(")");
        return f;
    }
    c.fail("expected formula");
}

BrmFormula parse_brm(Cursor& c) {
    BrmFormula f = parse_brm_unary(c);
    while (c.try_consume("&")) f = brm_and(f, parse_brm_unary(c));
    return f;
}

EilFormula parse_eil(Cursor& c);

EilFormula parse_eil_unary(Cursor& c) {
    if (c.try_keyword("true")) return eil_true();
    if (c.try_consume("!")) return eil_not(parse_eil_unary(c));
    if (c.try_consume("<<")) {
        std::string x = c.ident();
        c.expect(">>");
        return eil_bwd_ref(x, parse_eil_unary(c));
    }
    if (c.try_consume("<")) {
        std::string x = c.ident();
        c.expect(":");
        std::string a = c.ident();
        c.expect(">");
        return eil_fwd_bind(x, a, parse_eil_unary(c));
    }
    if (c.try_consume("(")) {
        // Either a declaration "(x:a)f" or a parenthesized formula.
        std::size_t mark = c.pos();
        if (c.peek() >= 'a' && c.peek() <= 'z') {
            std::string x = c.ident();
            if (c.try_consume(":")) {
                std::string a = c.ident();
                c.expect(")");
                return eil_declare(x, a, parse_eil_unary(c));
            }
        }
        c.seek(mark);
        EilFormula f = parse_eil(c);
        c.expect(")");
        return f;
    }
    c.fail("expected formula");
}

EilFormula parse_eil(Cursor& c) {
    EilFormula f = parse_eil_unary(c);
    while (c.try_consume("&")) f = eil_and(f, parse_eil_unary(c));
    return f;
}

}  // namespace

BrmFormula parse_brm_formula(const std::string& text) {
    Cursor c(text);
    BrmFormula f = parse_brm(c);
    c.expect_eof();
    return f;
}

EilFormula parse_eil_formula(const std::string& text) {
    Cursor c(text);
    EilFormula f = parse_eil(c);
    c.expect_eof();
    return f;
}

// ---- Depth and free identifiers ----

int depth_brm(const BrmFormula& f) {
    switch (f->kind) {
        case BrmKind::True:
        case BrmKind::Atom:
            return 0;
        case BrmKind::Not:
        case BrmKind::Fwd:
        case BrmKind::Bwd:
            return 1 + depth_brm(f->sub);
        case BrmKind::And:
            return 1 + std::max(depth_brm(f->sub), depth_brm(f->sub2));
    }
    return 0;
}

int depth_eil(const EilFormula& f) {
    switch (f->kind) {
        case EilKind::True:
            return 0;
        case EilKind::Not:
        case EilKind::FwdBind:
        case EilKind::Declare:
        case EilKind::BwdRef:
            return 1 + depth_eil(f->sub);
        case EilKind::And:
            return 1 + std::max(depth_eil(f->sub), depth_eil(f->sub2));
    }
    return 0;
}

std::set<std::string> fid(const EilFormula& f) {
    std::set<std::string> out;
    switch (f->kind) {
        case EilKind::True:
            break;
        case EilKind::Not:
            out = fid(f->sub);
            break;
        case EilKind::And: {
            out = fid(f->sub);
            auto r = fid(f->sub2);
            out.insert(r.begin(), r.end());
            break;
        }
        case EilKind::FwdBind:
        case EilKind::Declare:
            out = fid(f->sub);
            out.erase(f->id);
            break;
        case EilKind::BwdRef:
            out = fid(f->sub);
            out.insert(f->id);
            break;
    }
    return out;
}

// ---- BRM model checking over processes ----

namespace {

struct BrmProcEval {
    const ProvedLTS& lts;
    std::map<std::pair<int, const BrmFormulaNode*>, bool> memo;

    bool eval(int s, const BrmFormula& f) {
        auto key = std::make_pair(s, f.get());
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool v = false;
        switch (f->kind) {
            case BrmKind::True:
                v = true;
                break;
            case BrmKind::Atom:
                v = brm_process(lts.states[s]) == f->atom;
                break;
            case BrmKind::Not:
                v = !eval(s, f->sub);
                break;
            case BrmKind::And:
                v = eval(s, f->sub) && eval(s, f->sub2);
                break;
            case BrmKind::Fwd:
                for (int e : lts.out_edges[s]) {
                    auto a = act(lts.edges[e].label);
                    if (a && *a == f->action && eval(lts.edges[e].dst, f->sub)) {
                        v = true;
                        break;
                    }
                }
                break;
            case BrmKind::Bwd:
                for (int e : lts.in_edges[s]) {
                    auto a = act(lts.edges[e].label);
                    if (a && *a == f->action && eval(lts.edges[e].src, f->sub)) {
                        v = true;
                        break;
                    }
                }
                break;
        }
        memo[key] = v;
        return v;
    }
};

}  // namespace

bool mc_brm_process(const Process& p, const BrmFormula& f, std::size_t cap) {
    if (!is_well_formed(p))
        throw std::invalid_argument("mc_brm_process: process is not well-formed");
    ProvedLTS lts = build_lts(to_initial(p), cap);
    int s = lts.find_state(p);
    if (s < 0) throw std::invalid_argument("mc_brm_process: process not reachable");
    BrmProcEval ev{lts, {}};
    return ev.eval(s, f);
}

// ---- BRM model checking over stable structures ----

namespace {

struct BrmScsEval {
    const ConfigStructure& c;
    std::vector<Config> cfgs;
    std::map<Config, int> idx;
    // Per configuration: (action, other endpoint) for forward/backward moves.
    std::vector<std::vector<std::pair<Action, int>>> fwd, bwd;
    std::map<std::pair<int, const BrmFormulaNode*>, bool> memo;

    explicit BrmScsEval(const ConfigStructure& cs) : c(cs) {
        cfgs.assign(c.configurations.begin(), c.configurations.end());
        for (std::size_t i = 0; i < cfgs.size(); i++) idx[cfgs[i]] = static_cast<int>(i);
        fwd.resize(cfgs.size());
        bwd.resize(cfgs.size());
        for (auto& [x, a, y] : scs_transitions(c)) {
            fwd[idx[x]].emplace_back(a, idx[y]);
            bwd[idx[y]].emplace_back(a, idx[x]);
        }
    }

    bool eval(int s, const BrmFormula& f) {
        auto key = std::make_pair(s, f.get());
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool v = false;
        switch (f->kind) {
            case BrmKind::True:
                v = true;
                break;
            case BrmKind::Atom:
                v = brm_config(c, cfgs[s]) == f->atom;
                break;
            case BrmKind::Not:
                v = !eval(s, f->sub);
                break;
            case BrmKind::And:
                v = eval(s, f->sub) && eval(s, f->sub2);
                break;
            case BrmKind::Fwd:
                for (auto& [a, t] : fwd[s])
                    if (a == f->action && eval(t, f->sub)) {
                        v = true;
                        break;
                    }
                break;
            case BrmKind::Bwd:
                for (auto& [a, t] : bwd[s])
                    if (a == f->action && eval(t, f->sub)) {
                        v = true;
                        break;
                    }
                break;
        }
        memo[key] = v;
        return v;
    }
};

}  // namespace

bool mc_brm_scs(const Denotation& d, const BrmFormula& f) {
    if (!d.structure.has_config(d.cursor))
        throw std::invalid_argument("mc_brm_scs: cursor is not a configuration");
    BrmScsEval ev(d.structure);
    return ev.eval(ev.idx.at(d.cursor), f);
}

// ---- EIL model checking over stable structures ----

namespace {

Config config_with(const Config& x, int e) {
    Config y = x;
    y.insert(std::lower_bound(y.begin(), y.end(), e), e);
    return y;
}

Config config_without(const Config& x, int e) {
    Config y;
    for (int v : x)
        if (v != e) y.push_back(v);
    return y;
}

struct EilScsEval {
    const ConfigStructure& c;

    bool eval(const Config& x, EnvScs rho, const EilFormula& f) {
        switch (f->kind) {
            case EilKind::True:
                return true;
            case EilKind::Not:
                return !eval(x, std::move(rho), f->sub);
            case EilKind::And:
                return eval(x, rho, f->sub) && eval(x, std::move(rho), f->sub2);
            case EilKind::FwdBind:
                for (std::size_t e = 0; e < c.events.size(); e++) {
                    if (c.events[e].label != f->action) continue;
                    if (std::binary_search(x.begin(), x.end(), static_cast<int>(e))) continue;
                    Config y = config_with(x, static_cast<int>(e));
                    if (!c.has_config(y)) continue;
                    EnvScs rho2 = rho;
                    rho2[f->id] = static_cast<int>(e);
                    if (eval(y, std::move(rho2), f->sub)) return true;
                }
                return false;
            case EilKind::Declare:
                for (int e : x) {
                    if (c.events[e].label != f->action) continue;
                    EnvScs rho2 = rho;
                    rho2[f->id] = e;
                    if (eval(x, std::move(rho2), f->sub)) return true;
                }
                return false;
            case EilKind::BwdRef: {
                auto it = rho.find(f->id);
                if (it == rho.end()) return false;
                int e = it->second;
                if (!std::binary_search(x.begin(), x.end(), e)) return false;
                Config y = config_without(x, e);
                if (!c.has_config(y)) return false;
                return eval(y, std::move(rho), f->sub);
            }
        }
        return false;
    }
};

}  // namespace

bool mc_eil_scs(const ConfigStructure& c, const Config& x, const EnvScs& rho,
                const EilFormula& f) {
    if (!c.has_config(x))
        throw std::invalid_argument("mc_eil_scs: cursor is not a configuration");
    for (auto& id : fid(f)) {
        auto it = rho.find(id);
        if (it == rho.end())
            throw std::invalid_argument("mc_eil_scs: free identifier '" + id + "' is unbound");
        if (!std::binary_search(x.begin(), x.end(), it->second))
            throw std::invalid_argument("mc_eil_scs: identifier '" + id +
                                        "' is bound outside the configuration");
    }
    EilScsEval ev{c};
    return ev.eval(x, rho, f);
}

// ---- EIL model checking over processes ----

namespace {

struct EilProcEval {
    const ProvedLTS& lts;

    bool eval(const Process& p, const EnvProc& rho, const EilFormula& f) {
        switch (f->kind) {
            case EilKind::True:
                return true;
            case EilKind::Not:
                return !eval(p, rho, f->sub);
            case EilKind::And:
                return eval(p, rho, f->sub) && eval(p, rho, f->sub2);
            case EilKind::FwdBind:
                for (auto& [t, q] : forward_transitions(p)) {
                    auto a = act(t);
                    if (!a || *a != f->action) continue;
                    EnvProc rho2 = rho;
                    rho2[f->id] = t;
                    if (eval(q, rho2, f->sub)) return true;
                }
                return false;
            case EilKind::Declare:
                for (auto& [occ, node] : executed_occurrences(p)) {
                    if (node->action != f->action) continue;
                    EnvProc rho2 = rho;
                    rho2[f->id] = apt(occ, p);
                    if (eval(p, rho2, f->sub)) return true;
                }
                return false;
            case EilKind::BwdRef: {
                auto it = rho.find(f->id);
                if (it == rho.end()) return false;
                for (auto& [q, t] : incoming_transitions(lts, p))
                    if (pt_equal(t, it->second)) return eval(q, rho, f->sub);
                return false;
            }
        }
        return false;
    }
};

}  // namespace

bool mc_eil_process(const Process& p, const EnvProc& rho, const EilFormula& f,
                    std::size_t cap) {
    if (!is_well_formed(p))
        throw std::invalid_argument("mc_eil_process: process is not well-formed");
    PtSet hist = history_configuration(p);
    for (auto& id : fid(f)) {
        auto it = rho.find(id);
        if (it == rho.end())
            throw std::invalid_argument("mc_eil_process: free identifier '" + id +
                                        "' is unbound");
        if (hist.count(it->second) == 0)
            throw std::invalid_argument("mc_eil_process: identifier '" + id +
                                        "' is bound outside the history configuration");
    }
    ProvedLTS lts = build_lts(to_initial(p), cap);
    if (lts.find_state(p) < 0)
        throw std::invalid_argument("mc_eil_process: process not reachable");
    EilProcEval ev{lts};
    return ev.eval(p, rho, f);
}

// ---- Translation of BRM logic into EIL ----

namespace {

struct Translator {
    const ActionSet& actions;
    std::set<std::string> used;
    int counter = 0;

    std::string fresh(const char* prefix) {
        for (;;) {
            std::string id = prefix + std::to_string(++counter);
            if (used.insert(id).second) return id;
        }
    }

    static EilFormula conjoin(const std::vector<EilFormula>& parts) {
        if (parts.empty()) return eil_true();
        EilFormula f = parts[0];
        for (std::size_t i = 1; i < parts.size(); i++) f = eil_and(f, parts[i]);
        return f;
    }

    EilFormula translate(const BrmFormula& f, const HistorySequence& h) {
        switch (f->kind) {
            case BrmKind::True:
                return eil_true();
            case BrmKind::Not:
                return eil_not(translate(f->sub, h));
            case BrmKind::And:
                return eil_and(translate(f->sub, h), translate(f->sub2, h));
            case BrmKind::Fwd: {
                std::string x = fresh("x");
                HistorySequence h2 = h;
                h2.emplace_back(x, f->action);
                return eil_fwd_bind(x, f->action, translate(f->sub, h2));
            }
            case BrmKind::Bwd: {
                std::string x = fresh("x");
                return eil_declare(x, f->action, eil_bwd_ref(x, translate(f->sub, h)));
            }
            case BrmKind::Atom: {
                std::vector<EilFormula> parts;
                for (auto& [a, n] : f->atom.entries()) {
                    if (actions.count(a) == 0)
                        throw std::invalid_argument(
                            "translate: atom mentions action '" + a +
                            "' outside the declared alphabet");
                    std::vector<std::string> recorded;
                    for (auto& [id, ha] : h)
                        if (ha == a) recorded.push_back(id);
                    if (static_cast<int>(recorded.size()) < n)
                        throw std::invalid_argument(
                            "translate: history records " +
                            std::to_string(recorded.size()) + " occurrence(s) of '" + a +
                            "' but the atom demands " + std::to_string(n));
                    // The most recent n records must still be undoable...
                    for (std::size_t k = recorded.size() - n; k < recorded.size(); k++)
                        parts.push_back(eil_bwd_ref(recorded[k], eil_true()));
                    // ...and the older ones must not be.
                    for (std::size_t k = 0; k + n < recorded.size(); k++)
                        parts.push_back(eil_not(eil_bwd_ref(recorded[k], eil_true())));
                }
                // No action outside the atom's support may be undoable.
                for (auto& b : actions) {
                    if (f->atom.count(b) != 0) continue;
                    std::string y = fresh("y");
                    parts.push_back(
                        eil_not(eil_declare(y, b, eil_bwd_ref(y, eil_true()))));
                }
                return conjoin(parts);
            }
        }
        return eil_true();
    }
};

}  // namespace

EilFormula translate_brm_to_eil(const BrmFormula& f, const ActionSet& actions,
                                const HistorySequence& h) {
    Translator tr{actions, {}, 0};
    for (auto& [id, a] : h) {
        (void)a;
        tr.used.insert(id);
    }
    return tr.translate(f, h);
}

// ---- Witness search for the translation ----

namespace {

void atom_actions(const BrmFormula& f, std::set<Action>& out) {
    switch (f->kind) {
        case BrmKind::True:
            break;
        case BrmKind::Atom:
            for (auto& [a, n] : f->atom.entries()) {
                (void)n;
                out.insert(a);
            }
            break;
        case BrmKind::Not:
        case BrmKind::Fwd:
        case BrmKind::Bwd:
            atom_actions(f->sub, out);
            break;
        case BrmKind::And:
            atom_actions(f->sub, out);
            atom_actions(f->sub2, out);
            break;
    }
}

bool feasible_rec(const BrmFormula& f, std::map<Action, int>& counts) {
    switch (f->kind) {
        case BrmKind::True:
            return true;
        case BrmKind::Atom:
            for (auto& [a, n] : f->atom.entries()) {
                auto it = counts.find(a);
                if ((it == counts.end() ? 0 : it->second) < n) return false;
            }
            return true;
        case BrmKind::Not:
        case BrmKind::Bwd:
            return feasible_rec(f->sub, counts);
        case BrmKind::Fwd: {
            counts[f->action]++;
            bool ok = feasible_rec(f->sub, counts);
            counts[f->action]--;
            return ok;
        }
        case BrmKind::And:
            return feasible_rec(f->sub, counts) && feasible_rec(f->sub2, counts);
    }
    return true;
}

}  // namespace

bool translation_feasible(const Process& p, const BrmFormula& f) {
    std::map<Action, int> counts;
    for (auto& t : history_configuration(p)) {
        auto a = act(t);
        if (a) counts[*a]++;
    }
    return feasible_rec(f, counts);
}

std::optional<std::pair<HistorySequence, EnvProc>> search_translation_witness(
    const Process& p, const BrmFormula& f, std::size_t cap) {
    if (!is_well_formed(p))
        throw std::invalid_argument("search_translation_witness: process is not well-formed");

    std::set<Action> tracked;
    atom_actions(f, tracked);

    // Events of p's history configuration, grouped by action.
    std::map<Action, std::vector<ProofTerm>> events;
    for (auto& t : history_configuration(p)) {
        auto a = act(t);
        if (a && tracked.count(*a)) events[*a].push_back(t);
    }

    // A history consistent with any path into p records exactly the executed
    // occurrences of each tracked action, so it is unique up to identifier
    // naming; variation in the identifier-to-event assignment is explored
    // through the environment instead.
    HistorySequence h;
    std::vector<std::pair<std::string, Action>> vars;  // identifier, action
    int next = 0;
    for (auto& a : tracked)
        for (std::size_t k = 0; k < events[a].size(); k++) {
            std::string id = "u" + std::to_string(++next);
            h.emplace_back(id, a);
            vars.emplace_back(id, a);
        }

    ActionSet alphabet = actions_of(p);
    for (auto& a : tracked) alphabet.insert(a);

    EilFormula translated;
    try {
        translated = translate_brm_to_eil(f, alphabet, h);
    } catch (const std::invalid_argument&) {
        // Some atom demands more occurrences than any path into p provides.
        return std::nullopt;
    }

    // Enumerate every assignment of history identifiers to same-action
    // events and return the first one under which the translation holds.
    std::vector<std::size_t> pick(vars.size(), 0);
    std::size_t total = 1;
    for (auto& [id, a] : vars) {
        (void)id;
        total *= events[a].size();
        if (total > 500000)
            throw std::runtime_error(
                "search_translation_witness: assignment space too large");
    }
    for (std::size_t n = 0; n < std::max<std::size_t>(total, 1); n++) {
        // Identifiers record distinct occurrences: the assignment must be
        // injective within each action group.
        bool injective = true;
        for (std::size_t i = 0; i < vars.size() && injective; i++)
            for (std::size_t j = i + 1; j < vars.size(); j++)
                if (vars[i].second == vars[j].second && pick[i] == pick[j]) {
                    injective = false;
                    break;
                }
        EnvProc rho;
        for (std::size_t i = 0; i < vars.size(); i++)
            rho[vars[i].first] = events[vars[i].second][pick[i]];
        if (injective && mc_eil_process(p, rho, translated, cap))
            return std::make_pair(h, rho);
        for (std::size_t i = 0; i < pick.size(); i++) {
            if (++pick[i] < events[vars[i].second].size()) break;
            pick[i] = 0;
        }
    }
    return std::nullopt;
}

std::optional<std::pair<HistorySequence, EnvProc>> witness_environment(
    const Process& p, const BrmFormula& f) {
    if (!mc_brm_process(p, f)) return std::nullopt;
    return search_translation_witness(p, f);
}

// ---- Bounded exhaustive formula generation ----

std::vector<BrmFormula> enumerate_brm_formulas(const ActionSet& actions, int max_depth,
                                               int max_multiplicity) {
    std::vector<BrmFormula> all;
    std::set<std::string> seen;
    auto push = [&](const BrmFormula& f) {
        if (seen.insert(to_string(f)).second) all.push_back(f);
    };

    push(brm_true());
    std::vector<Action> acts(actions.begin(), actions.end());
    std::vector<int> mult(acts.size(), 0);
    for (;;) {
        ActionMultiset m;
        for (std::size_t i = 0; i < acts.size(); i++)
            if (mult[i] > 0) m.add(acts[i], mult[i]);
        push(brm_atom(m));
        std::size_t i = 0;
        for (; i < mult.size(); i++) {
            if (++mult[i] <= max_multiplicity) break;
            mult[i] = 0;
        }
        if (i == mult.size()) break;
    }

    std::size_t layer_start = 0;
    for (int d = 1; d <= max_depth; d++) {
        std::size_t layer_end = all.size();
        (void)layer_start;
        std::vector<BrmFormula> fresh;
        for (std::size_t i = 0; i < layer_end; i++) fresh.push_back(brm_not(all[i]));
        for (std::size_t i = 0; i < layer_end; i++)
            for (std::size_t j = 0; j < layer_end; j++)
                fresh.push_back(brm_and(all[i], all[j]));
        for (auto& a : acts)
            for (std::size_t i = 0; i < layer_end; i++) {
                fresh.push_back(brm_fwd(a, all[i]));
                fresh.push_back(brm_bwd(a, all[i]));
            }
        for (auto& f : fresh) push(f);
        layer_start = layer_end;
    }
    return all;
}

std::vector<EilFormula> enumerate_eil_formulas(const ActionSet& actions, int max_depth,
                                               int max_ids) {
    std::vector<std::string> ids;
    for (int i = 1; i <= max_ids; i++) ids.push_back("x" + std::to_string(i));
    std::vector<Action> acts(actions.begin(), actions.end());

    std::vector<EilFormula> all{eil_true()};
    std::set<std::string> seen{"true"};
    auto push = [&](const EilFormula& f) {
        if (seen.insert(to_string(f)).second) all.push_back(f);
    };

    for (int d = 1; d <= max_depth; d++) {
        std::size_t layer_end = all.size();
        std::vector<EilFormula> fresh;
        for (std::size_t i = 0; i < layer_end; i++) fresh.push_back(eil_not(all[i]));
        for (std::size_t i = 0; i < layer_end; i++)
            for (std::size_t j = 0; j < layer_end; j++)
                fresh.push_back(eil_and(all[i], all[j]));
        for (auto& x : ids) {
            for (auto& a : acts)
                for (std::size_t i = 0; i < layer_end; i++) {
                    fresh.push_back(eil_fwd_bind(x, a, all[i]));
                    fresh.push_back(eil_declare(x, a, all[i]));
                }
            for (std::size_t i = 0; i < layer_end; i++)
                fresh.push_back(eil_bwd_ref(x, all[i]));
        }
        for (auto& f : fresh) push(f);
    }

    std::vector<EilFormula> closed;
    for (auto& f : all)
        if (fid(f).empty()) closed.push_back(f);
    return closed;
}

}  // namespace truecon

#include "truecon/semantics.hpp"

#include <cstdlib>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace truecon {

std::size_t default_state_cap() {
    if (const char* env = std::getenv("TRUECON_STATE_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 100000;
}

Process enr(const Process& p, const ProofTerm& walk) {
    auto undefined = [&] {
        throw std::runtime_error("enr: undefined on " + print_process(p) + " along " +
                                 to_string(walk));
    };
    // The full synchronization term is what gets installed at the leaves, so
    // thread it through unchanged.
    struct Walker {
        const ProofTerm& root;
        Process operator()(const Process& q, const ProofTerm& t) const {
            switch (q->kind) {
                case ProcKind::Nil:
                    return q;
                case ProcKind::Prefix:
                    if (!q->executed) break;
                    if (t->kind == PtKind::Base && t->action == q->action)
                        return proc_prefix(q->action, true, root, q->cont);
                    if (t->kind == PtKind::Dot && t->action == q->action)
                        return proc_prefix(q->action, true, q->decoration,
                                           (*this)(q->cont, t->child));
                    break;
                case ProcKind::Choice:
                    if (t->kind == PtKind::PlusL)
                        return proc_choice((*this)(q->left, t->child), q->right);
                    if (t->kind == PtKind::PlusR)
                        return proc_choice(q->left, (*this)(q->right, t->child));
                    break;
                case ProcKind::Parallel:
                    if (t->kind == PtKind::ParL && t->sync == q->sync)
                        return proc_parallel((*this)(q->left, t->child), q->right, q->sync);
                    if (t->kind == PtKind::ParR && t->sync == q->sync)
                        return proc_parallel(q->left, (*this)(q->right, t->child), q->sync);
                    if (t->kind == PtKind::Syn && t->sync == q->sync)
                        return proc_parallel((*this)(q->left, t->left),
                                             (*this)(q->right, t->right), q->sync);
                    break;
            }
            throw std::runtime_error("enr: undefined on " + print_process(q) + " along " +
                                     to_string(t));
        }
    };
    if (walk->kind != PtKind::Syn) undefined();
    return Walker{walk}(p, walk);
}

std::vector<std::pair<ProofTerm, Process>> forward_transitions(const Process& p) {
    std::vector<std::pair<ProofTerm, Process>> out;
    switch (p->kind) {
        case ProcKind::Nil:
            break;
        case ProcKind::Prefix:
            if (!p->executed) {
                out.emplace_back(pt_base(p->action),
                                 proc_prefix(p->action, true, nullptr, p->cont));
            } else {
                for (auto& [t, q] : forward_transitions(p->cont))
                    out.emplace_back(pt_dot(p->action, t),
                                     proc_prefix(p->action, true, p->decoration, q));
            }
            break;
        case ProcKind::Choice:
            if (is_initial(p->right))
                for (auto& [t, q] : forward_transitions(p->left))
                    out.emplace_back(pt_plusl(t), proc_choice(q, p->right));
            if (is_initial(p->left))
                for (auto& [t, q] : forward_transitions(p->right))
                    out.emplace_back(pt_plusr(t), proc_choice(p->left, q));
            break;
        case ProcKind::Parallel: {
            auto lt = forward_transitions(p->left);
            auto rt = forward_transitions(p->right);
            for (auto& [t, q] : lt) {
                auto a = act(t);
                if (a && !p->sync.count(*a))
                    out.emplace_back(pt_parl(p->sync, t), proc_parallel(q, p->right, p->sync));
            }
            for (auto& [t, q] : rt) {
                auto a = act(t);
                if (a && !p->sync.count(*a))
                    out.emplace_back(pt_parr(p->sync, t), proc_parallel(p->left, q, p->sync));
            }
            for (auto& [t1, q1] : lt)
                for (auto& [t2, q2] : rt) {
                    auto a1 = act(t1), a2 = act(t2);
                    if (a1 && a2 && *a1 == *a2 && p->sync.count(*a1)) {
                        ProofTerm syn = pt_syn(t1, t2, p->sync);
                        out.emplace_back(syn, enr(proc_parallel(q1, q2, p->sync), syn));
                    }
                }
            break;
        }
    }
    return out;
}

int ProvedLTS::find_state(const Process& p) const {
    std::string key = print_process(p);
    for (std::size_t i = 0; i < keys.size(); i++)
        if (keys[i] == key) return static_cast<int>(i);
    return -1;
}

ProvedLTS build_lts(const Process& initial, std::size_t cap) {
    if (!is_initial(initial))
        throw std::invalid_argument("build_lts: process is not initial");
    ProvedLTS lts;
    std::unordered_map<std::string, int> index;
    auto intern = [&](const Process& p) {
        std::string key = print_process(p);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        if (lts.states.size() >= cap)
            throw std::runtime_error("build_lts: state cap of " + std::to_string(cap) +
                                     " exceeded");
        int id = static_cast<int>(lts.states.size());
        lts.states.push_back(p);
        lts.keys.push_back(key);
        lts.out_edges.emplace_back();
        lts.in_edges.emplace_back();
        index.emplace(std::move(key), id);
        return id;
    };
    std::deque<int> queue{intern(initial)};
    while (!queue.empty()) {
        int src = queue.front();
        queue.pop_front();
        Process p = lts.states[src];
        for (auto& [label, target] : forward_transitions(p)) {
            bool fresh = index.find(print_process(target)) == index.end();
            int dst = intern(target);
            int e = static_cast<int>(lts.edges.size());
            lts.edges.push_back({src, label, dst});
            lts.out_edges[src].push_back(e);
            lts.in_edges[dst].push_back(e);
            if (fresh) queue.push_back(dst);
        }
    }
    return lts;
}

std::vector<std::pair<Process, ProofTerm>> incoming_transitions(const ProvedLTS& lts,
                                                                const Process& p) {
    int id = lts.find_state(p);
    if (id < 0) throw std::invalid_argument("incoming_transitions: unknown state");
    std::vector<std::pair<Process, ProofTerm>> out;
    for (int e : lts.in_edges[id])
        out.emplace_back(lts.states[lts.edges[e].src], lts.edges[e].label);
    return out;
}

ActionMultiset brm_process(const Process& p) {
    ActionMultiset m;
    switch (p->kind) {
        case ProcKind::Nil:
            break;
        case ProcKind::Prefix:
            if (p->executed) {
                if (is_initial(p->cont))
                    m.add(p->action);
                else
                    m = brm_process(p->cont);
            }
            break;
        case ProcKind::Choice:
            if (!is_initial(p->left))
                m = brm_process(p->left);
            else if (!is_initial(p->right))
                m = brm_process(p->right);
            break;
        case ProcKind::Parallel: {
            ActionMultiset m1 = brm_process(p->left), m2 = brm_process(p->right);
            m = m1.restrict_outside(p->sync)
                    .oplus(m2.restrict_outside(p->sync))
                    .oplus(m1.otimes(m2).restrict_to(p->sync));
            break;
        }
    }
    return m;
}

namespace {

// Does the proof term t, read top-down, follow the occurrence path suffix
// starting at index i all the way to the addressed prefix? Used to locate
// the parallel node at which a stored synchronization decoration originated:
// the decoration covers the operators from that node downward, while the
// steps above it still wrap the reconstructed term.
bool descends_along(const ProofTerm& t, const OccurrencePath& occ, std::size_t i) {
    if (i == occ.size()) return t->kind == PtKind::Base;
    const OccurrenceStep& s = occ[i];
    switch (t->kind) {
        case PtKind::Base:
            return false;  // ends above the addressed prefix
        case PtKind::Dot:
            return s.kind == StepKind::IntoPrefix && t->action == s.action &&
                   descends_along(t->child, occ, i + 1);
        case PtKind::PlusL:
            return s.kind == StepKind::ChoiceLeft && descends_along(t->child, occ, i + 1);
        case PtKind::PlusR:
            return s.kind == StepKind::ChoiceRight && descends_along(t->child, occ, i + 1);
        case PtKind::ParL:
            return s.kind == StepKind::ParLeft && t->sync == s.sync &&
                   descends_along(t->child, occ, i + 1);
        case PtKind::ParR:
            return s.kind == StepKind::ParRight && t->sync == s.sync &&
                   descends_along(t->child, occ, i + 1);
        case PtKind::Syn:
            if (s.kind == StepKind::ParLeft && t->sync == s.sync)
                return descends_along(t->left, occ, i + 1);
            if (s.kind == StepKind::ParRight && t->sync == s.sync)
                return descends_along(t->right, occ, i + 1);
            return false;
    }
    return false;
}

ProofTerm wrap_step(const OccurrenceStep& s, ProofTerm t) {
    switch (s.kind) {
        case StepKind::IntoPrefix:
            return pt_dot(s.action, std::move(t));
        case StepKind::ChoiceLeft:
            return pt_plusl(std::move(t));
        case StepKind::ChoiceRight:
            return pt_plusr(std::move(t));
        case StepKind::ParLeft:
            return pt_parl(s.sync, std::move(t));
        case StepKind::ParRight:
            return pt_parr(s.sync, std::move(t));
    }
    return t;
}

}  // namespace

ProofTerm apt(const OccurrencePath& occ, const Process& p) {
    const ProcessNode* node = p.get();
    // Walk down to the addressed prefix first: a stored decoration overrides
    // the positional reconstruction.
    std::vector<const ProcessNode*> spine{node};
    for (auto& step : occ) {
        switch (step.kind) {
            case StepKind::IntoPrefix:
                if (node->kind != ProcKind::Prefix || node->action != step.action)
                    throw std::invalid_argument("apt: path does not match process");
                node = node->cont.get();
                break;
            case StepKind::ChoiceLeft:
                if (node->kind != ProcKind::Choice)
                    throw std::invalid_argument("apt: path does not match process");
                node = node->left.get();
                break;
            case StepKind::ChoiceRight:
                if (node->kind != ProcKind::Choice)
                    throw std::invalid_argument("apt: path does not match process");
                node = node->right.get();
                break;
            case StepKind::ParLeft:
                if (node->kind != ProcKind::Parallel || node->sync != step.sync)
                    throw std::invalid_argument("apt: path does not match process");
                node = node->left.get();
                break;
            case StepKind::ParRight:
                if (node->kind != ProcKind::Parallel || node->sync != step.sync)
                    throw std::invalid_argument("apt: path does not match process");
                node = node->right.get();
                break;
        }
        spine.push_back(node);
    }
    if (node->kind != ProcKind::Prefix || !node->executed)
        throw std::invalid_argument("apt: occurrence is not an executed prefix");
    if (node->decoration) {
        // The decoration is the label as derived at the parallel node where
        // the synchronization fired; operators above that node wrap it.
        for (std::size_t k = 0; k < occ.size(); k++)
            if (descends_along(node->decoration, occ, k)) {
                ProofTerm t = node->decoration;
                for (std::size_t j = k; j-- > 0;) t = wrap_step(occ[j], t);
                return t;
            }
        return node->decoration;
    }
    ProofTerm t = pt_base(node->action);
    for (auto it = occ.rbegin(); it != occ.rend(); ++it) t = wrap_step(*it, t);
    return t;
}

PtSet history_configuration(const Process& p) {
    PtSet out;
    for (auto& [occ, _] : executed_occurrences(p)) out.insert(apt(occ, p));
    return out;
}

std::vector<ProofTerm> zip_interleave(const std::vector<ProofTerm>& s1,
                                      const std::vector<ProofTerm>& s2,
                                      const ActionSet& sync) {
    auto rest = [](const std::vector<ProofTerm>& s) {
        return std::vector<ProofTerm>(s.begin() + 1, s.end());
    };
    auto in_sync = [&](const ProofTerm& t) {
        auto a = act(t);
        return a && sync.count(*a) != 0;
    };
    if (!s1.empty() && !in_sync(s1.front()) &&
        (s2.empty() || in_sync(s2.front()) || s1.size() >= s2.size())) {
        auto tail = zip_interleave(rest(s1), s2, sync);
        tail.insert(tail.begin(), pt_parl(sync, s1.front()));
        return tail;
    }
    if (!s2.empty() && !in_sync(s2.front()) &&
        (s1.empty() || in_sync(s1.front()) || s1.size() < s2.size())) {
        auto tail = zip_interleave(s1, rest(s2), sync);
        tail.insert(tail.begin(), pt_parr(sync, s2.front()));
        return tail;
    }
    if (!s1.empty() && !s2.empty()) {
        auto a1 = act(s1.front()), a2 = act(s2.front());
        if (a1 && a2 && *a1 == *a2 && sync.count(*a1)) {
            auto tail = zip_interleave(rest(s1), rest(s2), sync);
            tail.insert(tail.begin(), pt_syn(s1.front(), s2.front(), sync));
            return tail;
        }
    }
    return {};
}

std::string lts_to_dot(const ProvedLTS& lts) {
    std::ostringstream os;
    os << "digraph lts {\n";
    for (std::size_t i = 0; i < lts.states.size(); i++)
        os << "  s" << i << " [label=\"" << lts.keys[i] << "\"];\n";
    for (auto& e : lts.edges)
        os << "  s" << e.src << " -> s" << e.dst << " [label=\"" << to_string(e.label)
           << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string lts_to_json(const ProvedLTS& lts) {
    nlohmann::json j;
    j["states"] = lts.keys;
    j["root"] = 0;
    j["edges"] = nlohmann::json::array();
    for (auto& e : lts.edges)
        j["edges"].push_back({{"src", e.src}, {"label", to_string(e.label)}, {"dst", e.dst}});
    return j.dump(2);
}

}  // namespace truecon

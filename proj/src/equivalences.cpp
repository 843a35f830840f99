#include "truecon/equivalences.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace truecon {

std::string witness_to_json(const EquivalenceWitness& w) {
    nlohmann::json j;
    j["verdict"] = w.verdict;
    j["relationSize"] = w.relation_size;
    j["trace"] = nlohmann::json::array();
    for (auto& s : w.trace)
        j["trace"].push_back(
            {{"dir", s.backward ? "backward" : "forward"}, {"action", s.action}});
    return j.dump(2);
}

namespace {

// ---- Shared fixpoint machinery for the brm-forward-reverse game ----

struct FrbSide {
    int n = 0;
    int start = 0;
    std::vector<ActionMultiset> brm;
    // Per-state moves: (action, other state).
    std::vector<std::vector<std::pair<Action, int>>> fwd, bwd;
};

struct KillReason {
    int round = -1;  // -1 = alive
    bool brm_mismatch = false;
    int side = 0;
    bool backward = false;
    Action action;
    int target = -1;  // the mover's resulting state
};

EquivalenceWitness run_frb(const FrbSide& A, const FrbSide& B) {
    const int N = A.n * B.n;
    std::vector<KillReason> kill(N);
    auto at = [&](int i, int j) -> KillReason& { return kill[i * B.n + j]; };
    auto alive = [&](int i, int j) { return kill[i * B.n + j].round < 0; };

    // Pairs with unequal backward ready multisets can never be related.
    for (int i = 0; i < A.n; i++)
        for (int j = 0; j < B.n; j++)
            if (!(A.brm[i] == B.brm[j])) at(i, j) = {.round = 0, .brm_mismatch = true};

    auto unmatched = [&](const std::vector<std::pair<Action, int>>& mine,
                         const std::vector<std::pair<Action, int>>& theirs, bool side1, int i,
                         int j, KillReason& out, bool backward) {
        for (auto& [a, t] : mine) {
            bool ok = false;
            for (auto& [b, u] : theirs)
                if (a == b && (side1 ? alive(t, u) : alive(u, t))) {
                    ok = true;
                    break;
                }
            if (!ok) {
                out = {.round = 0,
                       .side = side1 ? 1 : 2,
                       .backward = backward,
                       .action = a,
                       .target = t};
                return true;
            }
        }
        return false;
    };

    int round = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        round++;
        for (int i = 0; i < A.n; i++)
            for (int j = 0; j < B.n; j++) {
                if (!alive(i, j)) continue;
                KillReason r;
                if (unmatched(A.fwd[i], B.fwd[j], true, i, j, r, false) ||
                    unmatched(A.bwd[i], B.bwd[j], true, i, j, r, true) ||
                    unmatched(B.fwd[j], A.fwd[i], false, i, j, r, false) ||
                    unmatched(B.bwd[j], A.bwd[i], false, i, j, r, true)) {
                    r.round = round;
                    at(i, j) = r;
                    changed = true;
                }
            }
    }

    EquivalenceWitness w;
    w.verdict = alive(A.start, B.start);
    for (int k = 0; k < N; k++)
        if (kill[k].round < 0) w.relation_size++;
    if (w.verdict) return w;

    // Greedy trace extraction: follow kill reasons, answering each killed
    // move with the reply that died earliest.
    int i = A.start, j = B.start;
    for (;;) {
        KillReason& k = at(i, j);
        if (k.brm_mismatch) break;
        w.trace.push_back({k.backward, k.action});
        const auto& replies = (k.side == 1) ? (k.backward ? B.bwd[j] : B.fwd[j])
                                            : (k.backward ? A.bwd[i] : A.fwd[i]);
        int best = -1, best_round = INT_MAX;
        for (auto& [a, t] : replies) {
            if (a != k.action) continue;
            int r = (k.side == 1) ? at(k.target, t).round : at(t, k.target).round;
            if (r >= 0 && r < best_round) {
                best_round = r;
                best = t;
            }
        }
        if (best < 0) break;  // no reply at all: the move itself distinguishes
        if (k.side == 1) {
            i = k.target;
            j = best;
        } else {
            i = best;
            j = k.target;
        }
    }
    return w;
}

// ---- Model extraction ----

struct ScsModel {
    std::vector<Config> cfgs;
    std::map<Config, int> idx;
    std::vector<Action> label;
    // Per configuration: (event, other configuration index).
    std::vector<std::vector<std::pair<int, int>>> out, in;
    std::vector<std::set<std::pair<int, int>>> leq;  // causality per configuration
};

ScsModel make_scs_model(const ConfigStructure& c) {
    ScsModel m;
    for (auto& x : c.configurations) {
        m.idx[x] = static_cast<int>(m.cfgs.size());
        m.cfgs.push_back(x);
    }
    for (auto& e : c.events) m.label.push_back(e.label);
    m.out.resize(m.cfgs.size());
    m.in.resize(m.cfgs.size());
    for (auto& [x, a, y] : scs_transitions(c)) {
        int xi = m.idx.at(x), yi = m.idx.at(y);
        int e = -1;
        for (int f : y)
            if (!std::binary_search(x.begin(), x.end(), f)) e = f;
        m.out[xi].emplace_back(e, yi);
        m.in[yi].emplace_back(e, xi);
    }
    for (auto& x : m.cfgs) m.leq.push_back(causality(c, x));
    return m;
}

FrbSide scs_to_frb(const ScsModel& m, const ConfigStructure& c) {
    FrbSide s;
    s.n = static_cast<int>(m.cfgs.size());
    s.start = m.idx.at(Config{});
    s.fwd.resize(s.n);
    s.bwd.resize(s.n);
    for (int i = 0; i < s.n; i++) {
        s.brm.push_back(brm_config(c, m.cfgs[i]));
        for (auto& [e, j] : m.out[i]) s.fwd[i].emplace_back(m.label[e], j);
        for (auto& [e, j] : m.in[i]) s.bwd[i].emplace_back(m.label[e], j);
    }
    return s;
}

FrbSide lts_to_frb(const ProvedLTS& lts, int start) {
    FrbSide s;
    s.n = static_cast<int>(lts.states.size());
    s.start = start;
    s.fwd.resize(s.n);
    s.bwd.resize(s.n);
    for (int i = 0; i < s.n; i++) s.brm.push_back(brm_process(lts.states[i]));
    for (auto& e : lts.edges) {
        auto a = act(e.label);
        if (!a) throw std::logic_error("transition label without action");
        s.fwd[e.src].emplace_back(*a, e.dst);
        s.bwd[e.dst].emplace_back(*a, e.src);
    }
    return s;
}

void require_stable(const ConfigStructure& c, const char* who) {
    auto r = validate_stable(c);
    if (!r.ok)
        throw std::invalid_argument(std::string(who) + ": input is not stable: " +
                                    r.violations.front());
}

}  // namespace

EquivalenceWitness frb_brm_scs(const ConfigStructure& c1, const ConfigStructure& c2) {
    require_stable(c1, "frb_brm_scs");
    require_stable(c2, "frb_brm_scs");
    return run_frb(scs_to_frb(make_scs_model(c1), c1), scs_to_frb(make_scs_model(c2), c2));
}

EquivalenceWitness frb_brm_proc(const Process& p1, const Process& p2) {
    if (!is_well_formed(p1) || !is_well_formed(p2))
        throw std::invalid_argument("frb_brm_proc: processes must be well-formed");
    ProvedLTS l1 = build_lts(to_initial(p1)), l2 = build_lts(to_initial(p2));
    int s1 = l1.find_state(p1), s2 = l2.find_state(p2);
    if (s1 < 0 || s2 < 0)
        throw std::invalid_argument("frb_brm_proc: process not reachable from its initial version");
    return run_frb(lts_to_frb(l1, s1), lts_to_frb(l2, s2));
}

// ---- Hereditary history-preserving bisimilarity ----

namespace {

using Bijection = std::vector<std::pair<int, int>>;  // sorted by first component

bool causality_compatible(const ScsModel& m1, int i1, const ScsModel& m2, int i2,
                          const Bijection& f) {
    for (auto& [e1, e2] : f)
        for (auto& [d1, d2] : f) {
            if (m1.leq[i1].count({e1, d1}) != m2.leq[i2].count({e2, d2})) return false;
        }
    return true;
}

struct HhpbState {
    struct Triple {
        int i1, i2;
        Bijection f;
    };
    std::vector<Triple> triples;
    std::map<std::tuple<int, int, Bijection>, int> index;
    std::vector<KillReason> kill;  // target field = reply triple hint unused

    int find(int i1, int i2, const Bijection& f) const {
        auto it = index.find({i1, i2, f});
        return it == index.end() ? -1 : it->second;
    }
};

Bijection extend(const Bijection& f, int e1, int e2) {
    Bijection g = f;
    g.emplace_back(e1, e2);
    std::sort(g.begin(), g.end());
    return g;
}

Bijection restrict_away(const Bijection& f, int e1) {
    Bijection g;
    for (auto& p : f)
        if (p.first != e1) g.push_back(p);
    return g;
}

// Enumerates every label- and causality-preserving bijection between the two
// configurations, invoking sink on each.
template <typename Sink>
void enumerate_bijections(const ScsModel& m1, int i1, const ScsModel& m2, int i2, Sink sink) {
    const Config& x1 = m1.cfgs[i1];
    const Config& x2 = m2.cfgs[i2];
    if (x1.size() != x2.size()) return;
    std::vector<int> image(x1.size(), -1);
    std::vector<bool> used(x2.size(), false);
    Bijection f;
    std::function<void(std::size_t)> go = [&](std::size_t k) {
        if (k == x1.size()) {
            Bijection g = f;
            std::sort(g.begin(), g.end());
            if (causality_compatible(m1, i1, m2, i2, g)) sink(std::move(g));
            return;
        }
        for (std::size_t j = 0; j < x2.size(); j++) {
            if (used[j] || m1.label[x1[k]] != m2.label[x2[j]]) continue;
            used[j] = true;
            f.emplace_back(x1[k], x2[j]);
            go(k + 1);
            f.pop_back();
            used[j] = false;
        }
    };
    go(0);
}

}  // namespace

EquivalenceWitness hhpb(const ConfigStructure& c1, const ConfigStructure& c2) {
    require_stable(c1, "hhpb");
    require_stable(c2, "hhpb");
    ScsModel m1 = make_scs_model(c1), m2 = make_scs_model(c2);

    HhpbState st;
    for (int i1 = 0; i1 < static_cast<int>(m1.cfgs.size()); i1++)
        for (int i2 = 0; i2 < static_cast<int>(m2.cfgs.size()); i2++)
            enumerate_bijections(m1, i1, m2, i2, [&](Bijection f) {
                st.index[{i1, i2, f}] = static_cast<int>(st.triples.size());
                st.triples.push_back({i1, i2, std::move(f)});
            });
    st.kill.assign(st.triples.size(), {});

    auto alive = [&](int t) { return t >= 0 && st.kill[t].round < 0; };
    auto fwd_of = [&](const Bijection& f, int e1) {
        for (auto& [a, b] : f)
            if (a == e1) return b;
        return -1;
    };
    auto bwd_of = [&](const Bijection& f, int e2) {
        for (auto& [a, b] : f)
            if (b == e2) return a;
        return -1;
    };

    int round = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        round++;
        for (std::size_t t = 0; t < st.triples.size(); t++) {
            if (st.kill[t].round >= 0) continue;
            auto& tr = st.triples[t];
            KillReason r;
            bool killed = false;

            // Forward clauses, both sides.
            for (auto& [e1, j1] : m1.out[tr.i1]) {
                bool ok = false;
                for (auto& [e2, j2] : m2.out[tr.i2])
                    if (m1.label[e1] == m2.label[e2] &&
                        alive(st.find(j1, j2, extend(tr.f, e1, e2))))
                        ok = true;
                if (!ok) {
                    r = {.round = round, .side = 1, .backward = false,
                         .action = m1.label[e1], .target = j1};
                    killed = true;
                    break;
                }
            }
            if (!killed)
                for (auto& [e2, j2] : m2.out[tr.i2]) {
                    bool ok = false;
                    for (auto& [e1, j1] : m1.out[tr.i1])
                        if (m1.label[e1] == m2.label[e2] &&
                            alive(st.find(j1, j2, extend(tr.f, e1, e2))))
                            ok = true;
                    if (!ok) {
                        r = {.round = round, .side = 2, .backward = false,
                             .action = m2.label[e2], .target = j2};
                        killed = true;
                        break;
                    }
                }
            // Backward clauses: the reply must undo the corresponding event.
            if (!killed)
                for (auto& [e1, j1] : m1.in[tr.i1]) {
                    int e2 = fwd_of(tr.f, e1);
                    bool ok = false;
                    if (e2 >= 0)
                        for (auto& [e2b, j2] : m2.in[tr.i2])
                            if (e2b == e2 && alive(st.find(j1, j2, restrict_away(tr.f, e1))))
                                ok = true;
                    if (!ok) {
                        r = {.round = round, .side = 1, .backward = true,
                             .action = m1.label[e1], .target = j1};
                        killed = true;
                        break;
                    }
                }
            if (!killed)
                for (auto& [e2, j2] : m2.in[tr.i2]) {
                    int e1 = bwd_of(tr.f, e2);
                    bool ok = false;
                    if (e1 >= 0)
                        for (auto& [e1b, j1] : m1.in[tr.i1])
                            if (e1b == e1 && alive(st.find(j1, j2, restrict_away(tr.f, e1))))
                                ok = true;
                    if (!ok) {
                        r = {.round = round, .side = 2, .backward = true,
                             .action = m2.label[e2], .target = j2};
                        killed = true;
                        break;
                    }
                }

            if (killed) {
                st.kill[t] = r;
                changed = true;
            }
        }
    }

    EquivalenceWitness w;
    int root = st.find(m1.idx.at(Config{}), m2.idx.at(Config{}), {});
    w.verdict = alive(root);
    for (auto& k : st.kill)
        if (k.round < 0) w.relation_size++;
    if (w.verdict) return w;

    // Trace extraction mirroring the pair game: answer each killed move with
    // the reply triple that died earliest.
    int t = root;
    for (;;) {
        KillReason& k = st.kill[t];
        if (k.round < 0) break;
        w.trace.push_back({k.backward, k.action});
        auto& tr = st.triples[t];
        int best = -1, best_round = INT_MAX;
        auto consider = [&](int cand) {
            if (cand < 0) return;
            int r = st.kill[cand].round;
            if (r >= 0 && r < best_round) {
                best_round = r;
                best = cand;
            }
        };
        if (!k.backward) {
            if (k.side == 1) {
                for (auto& [e1, j1] : m1.out[tr.i1]) {
                    if (m1.label[e1] != k.action || j1 != k.target) continue;
                    for (auto& [e2, j2] : m2.out[tr.i2])
                        if (m2.label[e2] == k.action)
                            consider(st.find(j1, j2, extend(tr.f, e1, e2)));
                }
            } else {
                for (auto& [e2, j2] : m2.out[tr.i2]) {
                    if (m2.label[e2] != k.action || j2 != k.target) continue;
                    for (auto& [e1, j1] : m1.out[tr.i1])
                        if (m1.label[e1] == k.action)
                            consider(st.find(j1, j2, extend(tr.f, e1, e2)));
                }
            }
        } else {
            if (k.side == 1) {
                for (auto& [e1, j1] : m1.in[tr.i1]) {
                    if (m1.label[e1] != k.action || j1 != k.target) continue;
                    int e2 = fwd_of(tr.f, e1);
                    if (e2 < 0) continue;
                    for (auto& [e2b, j2] : m2.in[tr.i2])
                        if (e2b == e2) consider(st.find(j1, j2, restrict_away(tr.f, e1)));
                }
            } else {
                for (auto& [e2, j2] : m2.in[tr.i2]) {
                    if (m2.label[e2] != k.action || j2 != k.target) continue;
                    int e1 = bwd_of(tr.f, e2);
                    if (e1 < 0) continue;
                    for (auto& [e1b, j1] : m1.in[tr.i1])
                        if (e1b == e1) consider(st.find(j1, j2, restrict_away(tr.f, e1)));
                }
            }
        }
        if (best < 0) break;
        t = best;
    }
    return w;
}

// ---- Trace replay verification ----

namespace {

bool frb_dist(const FrbSide& A, const FrbSide& B, const std::vector<TraceStep>& trace,
              std::size_t pos, int i, int j) {
    if (pos == trace.size()) return !(A.brm[i] == B.brm[j]);
    const auto& s = trace[pos];
    auto attack = [&](const std::vector<std::pair<Action, int>>& mine,
                      const std::vector<std::pair<Action, int>>& theirs, bool side1) {
        for (auto& [a, t] : mine) {
            if (a != s.action) continue;
            bool all_fail = true;
            for (auto& [b, u] : theirs) {
                if (b != s.action) continue;
                bool d = side1 ? frb_dist(A, B, trace, pos + 1, t, u)
                               : frb_dist(A, B, trace, pos + 1, u, t);
                if (!d) {
                    all_fail = false;
                    break;
                }
            }
            if (all_fail) return true;
        }
        return false;
    };
    if (!s.backward)
        return attack(A.fwd[i], B.fwd[j], true) || attack(B.fwd[j], A.fwd[i], false);
    return attack(A.bwd[i], B.bwd[j], true) || attack(B.bwd[j], A.bwd[i], false);
}

}  // namespace

bool trace_distinguishes_frb_scs(const ConfigStructure& c1, const ConfigStructure& c2,
                                 const std::vector<TraceStep>& trace) {
    FrbSide A = scs_to_frb(make_scs_model(c1), c1);
    FrbSide B = scs_to_frb(make_scs_model(c2), c2);
    return frb_dist(A, B, trace, 0, A.start, B.start);
}

bool trace_distinguishes_frb_proc(const Process& p1, const Process& p2,
                                  const std::vector<TraceStep>& trace) {
    ProvedLTS l1 = build_lts(to_initial(p1)), l2 = build_lts(to_initial(p2));
    FrbSide A = lts_to_frb(l1, l1.find_state(p1));
    FrbSide B = lts_to_frb(l2, l2.find_state(p2));
    return frb_dist(A, B, trace, 0, A.start, B.start);
}

namespace {

bool hhpb_dist(const ScsModel& m1, const ScsModel& m2, const std::vector<TraceStep>& trace,
               std::size_t pos, int i1, int i2, const Bijection& f) {
    if (pos == trace.size()) return false;
    const auto& s = trace[pos];
    auto valid = [&](int j1, int j2, const Bijection& g) {
        // A reply only counts when the new triple is itself a candidate.
        for (auto& [e1, e2] : g)
            if (m1.label[e1] != m2.label[e2]) return false;
        return causality_compatible(m1, j1, m2, j2, g);
    };
    if (!s.backward) {
        for (auto& [e1, j1] : m1.out[i1]) {
            if (m1.label[e1] != s.action) continue;
            bool all_fail = true;
            for (auto& [e2, j2] : m2.out[i2]) {
                if (m2.label[e2] != s.action) continue;
                Bijection g = extend(f, e1, e2);
                if (valid(j1, j2, g) && !hhpb_dist(m1, m2, trace, pos + 1, j1, j2, g)) {
                    all_fail = false;
                    break;
                }
            }
            if (all_fail) return true;
        }
        for (auto& [e2, j2] : m2.out[i2]) {
            if (m2.label[e2] != s.action) continue;
            bool all_fail = true;
            for (auto& [e1, j1] : m1.out[i1]) {
                if (m1.label[e1] != s.action) continue;
                Bijection g = extend(f, e1, e2);
                if (valid(j1, j2, g) && !hhpb_dist(m1, m2, trace, pos + 1, j1, j2, g)) {
                    all_fail = false;
                    break;
                }
            }
            if (all_fail) return true;
        }
        return false;
    }
    for (auto& [e1, j1] : m1.in[i1]) {
        if (m1.label[e1] != s.action) continue;
        int e2 = -1;
        for (auto& [a, b] : f)
            if (a == e1) e2 = b;
        bool all_fail = true;
        if (e2 >= 0)
            for (auto& [e2b, j2] : m2.in[i2]) {
                if (e2b != e2) continue;
                Bijection g = restrict_away(f, e1);
                if (valid(j1, j2, g) && !hhpb_dist(m1, m2, trace, pos + 1, j1, j2, g)) {
                    all_fail = false;
                    break;
                }
            }
        if (all_fail) return true;
    }
    for (auto& [e2, j2] : m2.in[i2]) {
        if (m2.label[e2] != s.action) continue;
        int e1 = -1;
        for (auto& [a, b] : f)
            if (b == e2) e1 = a;
        bool all_fail = true;
        if (e1 >= 0)
            for (auto& [e1b, j1] : m1.in[i1]) {
                if (e1b != e1) continue;
                Bijection g = restrict_away(f, e1);
                if (valid(j1, j2, g) && !hhpb_dist(m1, m2, trace, pos + 1, j1, j2, g)) {
                    all_fail = false;
                    break;
                }
            }
        if (all_fail) return true;
    }
    return false;
}

}  // namespace

bool trace_distinguishes_hhpb(const ConfigStructure& c1, const ConfigStructure& c2,
                              const std::vector<TraceStep>& trace) {
    ScsModel m1 = make_scs_model(c1), m2 = make_scs_model(c2);
    return hhpb_dist(m1, m2, trace, 0, m1.idx.at(Config{}), m2.idx.at(Config{}), {});
}

}  // namespace truecon

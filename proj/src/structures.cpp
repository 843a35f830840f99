#include "truecon/structures.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace truecon {

namespace {

bool contains(const Config& x, int e) {
    return std::binary_search(x.begin(), x.end(), e);
}

Config with_event(const Config& x, int e) {
    Config y = x;
    y.insert(std::lower_bound(y.begin(), y.end(), e), e);
    return y;
}

Config without_event(const Config& x, int e) {
    Config y;
    y.reserve(x.size() - 1);
    for (int f : x)
        if (f != e) y.push_back(f);
    return y;
}

std::string config_to_string(const ConfigStructure& c, const Config& x) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < x.size(); i++) {
        if (i) os << ',';
        os << c.events[x[i]].id;
    }
    os << '}';
    return os.str();
}

}  // namespace

int ConfigStructure::find_event(const std::string& id) const {
    for (std::size_t i = 0; i < events.size(); i++)
        if (events[i].id == id) return static_cast<int>(i);
    return -1;
}

int ConfigStructure::find_event(const ProofTerm& t) const {
    for (std::size_t i = 0; i < events.size(); i++)
        if (events[i].term && pt_equal(events[i].term, t)) return static_cast<int>(i);
    return -1;
}

ValidationReport validate_stable(const ConfigStructure& c) {
    ValidationReport r;
    auto flag = [&](std::string v) {
        r.ok = false;
        r.violations.push_back(std::move(v));
    };
    if (!c.has_config({})) flag("not rooted: empty configuration missing");
    for (auto& x : c.configurations) {
        if (x.empty()) continue;
        bool connected = false;
        for (int e : x)
            if (c.has_config(without_event(x, e))) {
                connected = true;
                break;
            }
        if (!connected)
            flag("not connected: " + config_to_string(c, x) +
                 " has no one-event-smaller configuration");
    }
    std::vector<const Config*> cfgs;
    for (auto& x : c.configurations) cfgs.push_back(&x);
    for (std::size_t xi = 0; xi < cfgs.size(); xi++)
        for (std::size_t yi = xi; yi < cfgs.size(); yi++) {
            const Config& x = *cfgs[xi];
            const Config& y = *cfgs[yi];
            bool bounded = false;
            for (auto& z : c.configurations)
                if (std::includes(z.begin(), z.end(), x.begin(), x.end()) &&
                    std::includes(z.begin(), z.end(), y.begin(), y.end())) {
                    bounded = true;
                    break;
                }
            if (!bounded) continue;
            Config u, i;
            std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(u));
            std::set_intersection(x.begin(), x.end(), y.begin(), y.end(),
                                  std::back_inserter(i));
            if (!c.has_config(u))
                flag("not closed under bounded union: " + config_to_string(c, x) + " and " +
                     config_to_string(c, y));
            if (!c.has_config(i))
                flag("not closed under bounded intersection: " + config_to_string(c, x) +
                     " and " + config_to_string(c, y));
        }
    return r;
}

std::set<std::pair<int, int>> causality(const ConfigStructure& c, const Config& x) {
    if (!c.has_config(x)) throw std::invalid_argument("causality: unknown configuration");
    std::set<std::pair<int, int>> rel;
    for (int e1 : x)
        for (int e2 : x) {
            bool leq = true;
            for (auto& y : c.configurations) {
                if (!std::includes(x.begin(), x.end(), y.begin(), y.end())) continue;
                if (contains(y, e2) && !contains(y, e1)) {
                    leq = false;
                    break;
                }
            }
            if (leq) rel.emplace(e1, e2);
        }
    return rel;
}

std::set<std::pair<int, int>> concurrency(const ConfigStructure& c, const Config& x) {
    auto leq = causality(c, x);
    std::set<std::pair<int, int>> out;
    for (int e1 : x)
        for (int e2 : x) {
            if (e1 >= e2) continue;
            bool lt12 = leq.count({e1, e2}) && !leq.count({e2, e1});
            bool lt21 = leq.count({e2, e1}) && !leq.count({e1, e2});
            if (!lt12 && !lt21) out.emplace(e1, e2);
        }
    return out;
}

std::set<std::pair<int, int>> conflicts(const ConfigStructure& c) {
    std::vector<bool> occurs(c.events.size(), false);
    for (auto& x : c.configurations)
        for (int e : x) occurs[e] = true;
    std::set<std::pair<int, int>> out;
    for (int e1 = 0; e1 < static_cast<int>(c.events.size()); e1++) {
        if (!occurs[e1]) continue;
        for (int e2 = e1 + 1; e2 < static_cast<int>(c.events.size()); e2++) {
            if (!occurs[e2]) continue;
            bool joint = false;
            for (auto& x : c.configurations)
                if (contains(x, e1) && contains(x, e2)) {
                    joint = true;
                    break;
                }
            if (!joint) out.emplace(e1, e2);
        }
    }
    return out;
}

std::vector<std::tuple<Config, Action, Config>> scs_transitions(const ConfigStructure& c) {
    std::vector<std::tuple<Config, Action, Config>> out;
    for (auto& x : c.configurations)
        for (int e = 0; e < static_cast<int>(c.events.size()); e++) {
            if (contains(x, e)) continue;
            Config y = with_event(x, e);
            if (c.has_config(y)) out.emplace_back(x, c.events[e].label, y);
        }
    return out;
}

ActionMultiset brm_config(const ConfigStructure& c, const Config& x) {
    if (!c.has_config(x)) throw std::invalid_argument("brm_config: unknown configuration");
    ActionMultiset m;
    for (int e : x)
        if (c.has_config(without_event(x, e))) m.add(c.events[e].label);
    return m;
}

namespace {

// Drops events that occur in no configuration, matching the domain of the
// labeling function.
ConfigStructure prune_unused(ConfigStructure c) {
    std::vector<bool> occurs(c.events.size(), false);
    for (auto& x : c.configurations)
        for (int e : x) occurs[e] = true;
    std::vector<int> remap(c.events.size(), -1);
    std::vector<ScsEvent> events;
    for (std::size_t i = 0; i < c.events.size(); i++)
        if (occurs[i]) {
            remap[i] = static_cast<int>(events.size());
            events.push_back(std::move(c.events[i]));
        }
    std::set<Config> configs;
    for (auto& x : c.configurations) {
        Config y;
        y.reserve(x.size());
        for (int e : x) y.push_back(remap[e]);
        std::sort(y.begin(), y.end());
        configs.insert(std::move(y));
    }
    return {std::move(events), std::move(configs)};
}

ScsEvent wrap_event(const ProofTerm& t) {
    auto a = act(t);
    if (!a) throw std::logic_error("event proof term has no action");
    return {to_string(t), *a, t};
}

}  // namespace

ConfigStructure scs_nil() { return {{}, {Config{}}}; }

ConfigStructure scs_prefix(const Action& a, const ConfigStructure& c) {
    ConfigStructure out;
    out.events.push_back(wrap_event(pt_base(a)));
    for (auto& e : c.events) {
        if (!e.term) throw std::invalid_argument("scs_prefix: events must be proof terms");
        out.events.push_back(wrap_event(pt_dot(a, e.term)));
    }
    out.configurations.insert(Config{});
    for (auto& x : c.configurations) {
        Config y{0};
        for (int e : x) y.push_back(e + 1);
        std::sort(y.begin(), y.end());
        out.configurations.insert(std::move(y));
    }
    return prune_unused(std::move(out));
}

ConfigStructure scs_choice(const ConfigStructure& c1, const ConfigStructure& c2) {
    ConfigStructure out;
    for (auto& e : c1.events) {
        if (!e.term) throw std::invalid_argument("scs_choice: events must be proof terms");
        out.events.push_back(wrap_event(pt_plusl(e.term)));
    }
    int off = static_cast<int>(c1.events.size());
    for (auto& e : c2.events) {
        if (!e.term) throw std::invalid_argument("scs_choice: events must be proof terms");
        out.events.push_back(wrap_event(pt_plusr(e.term)));
    }
    for (auto& x : c1.configurations) out.configurations.insert(x);
    for (auto& x : c2.configurations) {
        Config y;
        for (int e : x) y.push_back(e + off);
        out.configurations.insert(std::move(y));
    }
    return prune_unused(std::move(out));
}

ConfigStructure scs_parallel(const ConfigStructure& c1, const ConfigStructure& c2,
                             const ActionSet& sync) {
    if (sync.count("tau"))
        throw std::invalid_argument("scs_parallel: tau not allowed in a synchronization set");
    ConfigStructure out;
    // proj[12][e] = the component event of e on that side, or -1.
    std::vector<int> proj1, proj2;
    auto add_event = [&](ScsEvent ev, int p1, int p2) {
        out.events.push_back(std::move(ev));
        proj1.push_back(p1);
        proj2.push_back(p2);
    };
    for (std::size_t i = 0; i < c1.events.size(); i++) {
        auto& e = c1.events[i];
        if (!e.term) throw std::invalid_argument("scs_parallel: events must be proof terms");
        if (!sync.count(e.label))
            add_event(wrap_event(pt_parl(sync, e.term)), static_cast<int>(i), -1);
    }
    for (std::size_t i = 0; i < c2.events.size(); i++) {
        auto& e = c2.events[i];
        if (!e.term) throw std::invalid_argument("scs_parallel: events must be proof terms");
        if (!sync.count(e.label))
            add_event(wrap_event(pt_parr(sync, e.term)), -1, static_cast<int>(i));
    }
    for (std::size_t i = 0; i < c1.events.size(); i++)
        for (std::size_t j = 0; j < c2.events.size(); j++)
            if (c1.events[i].label == c2.events[j].label && sync.count(c1.events[i].label))
                add_event(wrap_event(pt_syn(c1.events[i].term, c2.events[j].term, sync)),
                          static_cast<int>(i), static_cast<int>(j));

    auto project = [&](const Config& x, const std::vector<int>& proj,
                       const ConfigStructure& side) {
        Config y;
        for (int e : x)
            if (proj[e] >= 0) y.push_back(proj[e]);
        std::sort(y.begin(), y.end());
        return side.has_config(y);
    };
    auto admissible = [&](const Config& x) {
        if (!project(x, proj1, c1) || !project(x, proj2, c2)) return false;
        // Local injectivity: distinct events must not share a component.
        for (std::size_t i = 0; i < x.size(); i++)
            for (std::size_t j = i + 1; j < x.size(); j++) {
                if (proj1[x[i]] >= 0 && proj1[x[i]] == proj1[x[j]]) return false;
                if (proj2[x[i]] >= 0 && proj2[x[i]] == proj2[x[j]]) return false;
            }
        // Coincidence freeness: every pair of distinct events is separated by
        // a projectable subset containing exactly one of them.
        for (std::size_t i = 0; i < x.size(); i++)
            for (std::size_t j = i + 1; j < x.size(); j++) {
                bool separated = false;
                for (std::size_t mask = 0; mask < (std::size_t{1} << x.size()) && !separated;
                     mask++) {
                    if (((mask >> i) & 1) == ((mask >> j) & 1)) continue;
                    Config y;
                    for (std::size_t k = 0; k < x.size(); k++)
                        if ((mask >> k) & 1) y.push_back(x[k]);
                    if (project(y, proj1, c1) && project(y, proj2, c2)) separated = true;
                }
                if (!separated) return false;
            }
        return true;
    };

    // Stable structures are connected, so every configuration is reachable by
    // single-event growth from the root.
    std::set<Config> configs{Config{}};
    std::vector<Config> frontier{Config{}};
    while (!frontier.empty()) {
        std::vector<Config> next;
        for (auto& x : frontier)
            for (int e = 0; e < static_cast<int>(out.events.size()); e++) {
                if (contains(x, e)) continue;
                Config y = with_event(x, e);
                if (configs.count(y) || !admissible(y)) continue;
                configs.insert(y);
                next.push_back(std::move(y));
            }
        frontier = std::move(next);
    }
    out.configurations = std::move(configs);
    return prune_unused(std::move(out));
}

namespace {

ConfigStructure scs_of_initial(const Process& q) {
    switch (q->kind) {
        case ProcKind::Nil:
            return scs_nil();
        case ProcKind::Prefix:
            return scs_prefix(q->action, scs_of_initial(q->cont));
        case ProcKind::Choice:
            return scs_choice(scs_of_initial(q->left), scs_of_initial(q->right));
        case ProcKind::Parallel:
            return scs_parallel(scs_of_initial(q->left), scs_of_initial(q->right), q->sync);
    }
    return scs_nil();
}

}  // namespace

Denotation denote(const Process& p) {
    if (!is_well_formed(p)) throw std::invalid_argument("denote: process not well-formed");
    Denotation d;
    d.structure = scs_of_initial(to_initial(p));
    for (auto& t : history_configuration(p)) {
        int e = d.structure.find_event(t);
        if (e < 0)
            throw std::runtime_error("denote: history event " + to_string(t) +
                                     " not in structure (unreachable process)");
        d.cursor.push_back(e);
    }
    std::sort(d.cursor.begin(), d.cursor.end());
    if (!d.structure.has_config(d.cursor))
        throw std::runtime_error("denote: history is not a configuration (unreachable process)");
    return d;
}

namespace {

void max_cliques(const std::vector<int>& nodes,
                 const std::function<bool(int, int)>& adjacent,
                 std::vector<std::vector<int>>& out) {
    // Bron-Kerbosch without pivoting; conflict graphs here are tiny.
    std::function<void(std::vector<int>, std::vector<int>, std::vector<int>)> go =
        [&](std::vector<int> r, std::vector<int> p, std::vector<int> x) {
            if (p.empty() && x.empty()) {
                if (!r.empty()) out.push_back(std::move(r));
                return;
            }
            while (!p.empty()) {
                int v = p.back();
                std::vector<int> r2 = r, p2, x2;
                r2.push_back(v);
                for (int u : p)
                    if (adjacent(u, v)) p2.push_back(u);
                for (int u : x)
                    if (adjacent(u, v)) x2.push_back(u);
                go(std::move(r2), std::move(p2), std::move(x2));
                p.pop_back();
                x.push_back(v);
            }
        };
    go({}, nodes, {});
}

}  // namespace

LocalityResult is_conflict_local(const ConfigStructure& c, bool strict) {
    auto confl = conflicts(c);
    std::set<int> involved;
    for (auto& [e1, e2] : confl) {
        involved.insert(e1);
        involved.insert(e2);
    }
    std::vector<int> nodes(involved.begin(), involved.end());
    std::vector<std::vector<int>> cliques;
    max_cliques(
        nodes,
        [&](int a, int b) {
            return confl.count({std::min(a, b), std::max(a, b)}) != 0;
        },
        cliques);

    // causes[e] = events strictly below e in some configuration containing both.
    std::map<int, std::set<int>> causes;
    for (auto& x : c.configurations) {
        auto leq = causality(c, x);
        for (int e1 : x)
            for (int e2 : x)
                if (e1 != e2 && leq.count({e1, e2}) && !leq.count({e2, e1}))
                    causes[e2].insert(e1);
    }

    for (auto& k : cliques) {
        if (k.size() < 2) continue;
        std::set<int> common = causes[k[0]];
        bool all_cause_free = causes[k[0]].empty();
        for (std::size_t i = 1; i < k.size(); i++) {
            std::set<int> next;
            for (int e : causes[k[i]])
                if (common.count(e)) next.insert(e);
            common = std::move(next);
            all_cause_free = all_cause_free && causes[k[i]].empty();
        }
        if (!common.empty()) continue;
        if (!strict && all_cause_free) continue;
        std::sort(k.begin(), k.end());
        return {false, k};
    }
    return {true, {}};
}

std::string scs_to_json(const ConfigStructure& c, const std::optional<Config>& cursor) {
    nlohmann::json j;
    j["events"] = nlohmann::json::array();
    for (auto& e : c.events) j["events"].push_back({{"id", e.id}, {"label", e.label}});
    j["configurations"] = nlohmann::json::array();
    for (auto& x : c.configurations) {
        nlohmann::json cfg = nlohmann::json::array();
        for (int e : x) cfg.push_back(c.events[e].id);
        j["configurations"].push_back(std::move(cfg));
    }
    if (cursor) {
        nlohmann::json cfg = nlohmann::json::array();
        for (int e : *cursor) cfg.push_back(c.events[e].id);
        j["cursor"] = std::move(cfg);
    }
    return j.dump(2);
}

ConfigStructure scs_from_json(const std::string& text, std::optional<Config>* cursor) {
    nlohmann::json j = nlohmann::json::parse(text);
    ConfigStructure c;
    std::map<std::string, int> index;
    for (auto& e : j.at("events")) {
        std::string id = e.at("id").get<std::string>();
        if (index.count(id)) throw std::runtime_error("duplicate event id: " + id);
        index[id] = static_cast<int>(c.events.size());
        c.events.push_back({id, e.at("label").get<std::string>(), nullptr});
    }
    auto read_config = [&](const nlohmann::json& cfg) {
        Config x;
        for (auto& id : cfg) {
            auto it = index.find(id.get<std::string>());
            if (it == index.end())
                throw std::runtime_error("dangling event reference: " + id.get<std::string>());
            x.push_back(it->second);
        }
        std::sort(x.begin(), x.end());
        x.erase(std::unique(x.begin(), x.end()), x.end());
        return x;
    };
    for (auto& cfg : j.at("configurations")) {
        Config x = read_config(cfg);
        if (c.configurations.count(x))
            throw std::runtime_error("duplicate configuration in input");
        c.configurations.insert(std::move(x));
    }
    if (cursor) {
        if (j.contains("cursor"))
            *cursor = read_config(j.at("cursor"));
        else
            *cursor = std::nullopt;
    }
    return c;
}

ConfigStructure load_scs(const std::string& path, std::optional<Config>* cursor) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return scs_from_json(buf.str(), cursor);
}

void save_scs(const ConfigStructure& c, const std::string& path,
              const std::optional<Config>& cursor) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << scs_to_json(c, cursor) << '\n';
}

}  // namespace truecon

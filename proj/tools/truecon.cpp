#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "truecon/generator.hpp"
#include "truecon/logics.hpp"

using namespace truecon;

namespace {

ConfigStructure load_with_cursor(const std::string& path, std::optional<Config>& cursor) {
    return load_scs(path, &cursor);
}

Config parse_config_ids(const ConfigStructure& c, const std::string& spec) {
    Config x;
    if (spec.empty()) return x;
    std::stringstream ss(spec);
    std::string id;
    while (std::getline(ss, id, ',')) {
        int e = c.find_event(id);
        if (e < 0) throw std::invalid_argument("unknown event id '" + id + "'");
        x.push_back(e);
    }
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    return x;
}

void print_witness(const EquivalenceWitness& w, bool json) {
    if (json) {
        std::cout << witness_to_json(w) << "\n";
        return;
    }
    std::cout << (w.verdict ? "equivalent" : "not equivalent")
              << " (relation size " << w.relation_size << ")\n";
    if (!w.verdict && !w.trace.empty()) {
        std::cout << "distinguishing trace:";
        for (auto& s : w.trace)
            std::cout << ' ' << (s.backward ? "undo " : "") << s.action;
        std::cout << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"toolkit for a reversible process calculus with true-concurrency semantics"};
    app.require_subcommand(1);

    // parse
    std::string parse_proc;
    bool parse_json = false;
    auto* cmd_parse = app.add_subcommand("parse", "parse a process and print it back");
    cmd_parse->add_option("process", parse_proc)->required();
    cmd_parse->add_flag("--json", parse_json);

    // lts
    std::string lts_proc, lts_format = "text";
    bool lts_json = false;
    auto* cmd_lts = app.add_subcommand("lts", "build the proved transition system");
    cmd_lts->add_option("process", lts_proc)->required();
    cmd_lts->add_flag("--json", lts_json);
    cmd_lts->add_option("--format", lts_format)->check(CLI::IsMember({"text", "dot"}));

    // denote
    std::string denote_proc;
    bool denote_json = false;
    auto* cmd_denote = app.add_subcommand("denote", "compute the configuration structure");
    cmd_denote->add_option("process", denote_proc)->required();
    cmd_denote->add_flag("--json", denote_json);

    // brm
    std::string brm_proc;
    bool brm_json = false;
    auto* cmd_brm = app.add_subcommand("brm", "backward ready multiset of a process");
    cmd_brm->add_option("process", brm_proc)->required();
    cmd_brm->add_flag("--json", brm_json);

    // stable
    std::string stable_file;
    bool stable_json = false;
    auto* cmd_stable = app.add_subcommand("stable", "validate a configuration structure");
    cmd_stable->add_option("file", stable_file)->required();
    cmd_stable->add_flag("--json", stable_json);

    // locality
    std::string loc_file, loc_proc;
    bool loc_json = false, loc_strict = false;
    auto* cmd_loc = app.add_subcommand("locality", "check conflict locality");
    cmd_loc->add_option("file", loc_file);
    cmd_loc->add_option("--proc", loc_proc);
    cmd_loc->add_flag("--strict", loc_strict);
    cmd_loc->add_flag("--json", loc_json);

    // check
    std::string check_kind;
    std::vector<std::string> check_proc, check_scs;
    bool check_json = false;
    auto* cmd_check = app.add_subcommand("check", "equivalence check");
    cmd_check->add_option("kind", check_kind)->required()->check(
        CLI::IsMember({"frb-brm", "hhpb"}));
    cmd_check->add_option("--proc", check_proc)->expected(2);
    cmd_check->add_option("--scs", check_scs)->expected(2);
    cmd_check->add_flag("--json", check_json);

    // mc
    std::string mc_logic, mc_proc, mc_scs, mc_config, mc_formula, mc_env;
    bool mc_config_set = false, mc_json = false;
    auto* cmd_mc = app.add_subcommand("mc", "model check a formula");
    cmd_mc->add_option("--logic", mc_logic)->required()->check(CLI::IsMember({"brm", "eil"}));
    cmd_mc->add_option("--proc", mc_proc);
    cmd_mc->add_option("--scs", mc_scs);
    auto* mc_config_opt = cmd_mc->add_option("--config", mc_config);
    cmd_mc->add_option("--formula", mc_formula)->required();
    cmd_mc->add_option("--env", mc_env);
    cmd_mc->add_flag("--json", mc_json);

    // translate
    std::string tr_formula, tr_actions, tr_history;
    bool tr_json = false;
    auto* cmd_tr = app.add_subcommand("translate",
                                      "translate a BRM formula into the identifier logic");
    cmd_tr->add_option("--formula", tr_formula)->required();
    cmd_tr->add_option("--actions", tr_actions)->required();
    cmd_tr->add_option("--history", tr_history);
    cmd_tr->add_flag("--json", tr_json);

    // xvalidate
    std::uint64_t xv_seed = 0;
    std::size_t xv_count = 10;
    bool xv_local = false, xv_json = false;
    int xv_depth = 3;
    auto* cmd_xv = app.add_subcommand("xvalidate",
                                      "cross-validate the two equivalence checkers");
    cmd_xv->add_option("--seed", xv_seed)->required();
    cmd_xv->add_option("--count", xv_count)->required();
    cmd_xv->add_flag("--local-only", xv_local);
    cmd_xv->add_option("--max-depth", xv_depth);
    cmd_xv->add_flag("--json", xv_json);

    CLI11_PARSE(app, argc, argv);
    mc_config_set = mc_config_opt->count() > 0;

    if (cmd_parse->parsed()) {
        Process p = parse_process(parse_proc);
        if (parse_json) {
            nlohmann::json j;
            j["canonical"] = print_process(p);
            j["initial"] = is_initial(p);
            j["wellFormed"] = is_well_formed(p);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << print_process(p) << "\n";
        }
        return 0;
    }

    if (cmd_lts->parsed()) {
        Process p = parse_process(lts_proc);
        ProvedLTS lts = build_lts(to_initial(p));
        if (lts_format == "dot")
            std::cout << lts_to_dot(lts);
        else if (lts_json)
            std::cout << lts_to_json(lts) << "\n";
        else {
            std::cout << "states: " << lts.states.size() << "\nedges: " << lts.edges.size()
                      << "\n";
            for (auto& e : lts.edges)
                std::cout << "  " << lts.keys[e.src] << " --" << to_string(e.label) << "--> "
                          << lts.keys[e.dst] << "\n";
        }
        return 0;
    }

    if (cmd_denote->parsed()) {
        Process p = parse_process(denote_proc);
        Denotation d = denote(p);
        if (denote_json) {
            std::cout << scs_to_json(d.structure, d.cursor) << "\n";
        } else {
            std::cout << "events: " << d.structure.events.size()
                      << "\nconfigurations: " << d.structure.configurations.size()
                      << "\ncursor:";
            for (int e : d.cursor) std::cout << ' ' << d.structure.events[e].id;
            std::cout << "\n";
        }
        return 0;
    }

    if (cmd_brm->parsed()) {
        Process p = parse_process(brm_proc);
        if (!is_well_formed(p)) throw std::invalid_argument("process is not well-formed");
        ActionMultiset m = brm_process(p);
        if (brm_json) {
            nlohmann::json j = nlohmann::json::object();
            for (auto& [a, n] : m.entries()) j[a] = n;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << m.to_string() << "\n";
        }
        return 0;
    }

    if (cmd_stable->parsed()) {
        ConfigStructure c = load_scs(stable_file);
        ValidationReport r = validate_stable(c);
        if (stable_json) {
            nlohmann::json j;
            j["ok"] = r.ok;
            j["violations"] = r.violations;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << (r.ok ? "stable" : "not stable") << "\n";
            for (auto& v : r.violations) std::cout << "  " << v << "\n";
        }
        return r.ok ? 0 : 1;
    }

    if (cmd_loc->parsed()) {
        ConfigStructure c;
        if (!loc_proc.empty())
            c = denote(parse_process(loc_proc)).structure;
        else if (!loc_file.empty())
            c = load_scs(loc_file);
        else
            throw std::invalid_argument("locality: give a structure file or --proc");
        LocalityResult r = is_conflict_local(c, loc_strict);
        if (loc_json) {
            nlohmann::json j;
            j["local"] = r.local;
            j["witnessClique"] = nlohmann::json::array();
            for (int e : r.witness_clique) j["witnessClique"].push_back(c.events[e].id);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << (r.local ? "conflict-local" : "not conflict-local") << "\n";
            if (!r.local) {
                std::cout << "witness clique:";
                for (int e : r.witness_clique) std::cout << ' ' << c.events[e].id;
                std::cout << "\n";
            }
        }
        return r.local ? 0 : 1;
    }

    if (cmd_check->parsed()) {
        if (check_proc.empty() == check_scs.empty())
            throw std::invalid_argument("check: give exactly one of --proc or --scs");
        EquivalenceWitness w;
        if (!check_proc.empty()) {
            Process p1 = parse_process(check_proc[0]), p2 = parse_process(check_proc[1]);
            if (check_kind == "frb-brm")
                w = frb_brm_proc(p1, p2);
            else
                w = hhpb(denote(p1).structure, denote(p2).structure);
        } else {
            ConfigStructure c1 = load_scs(check_scs[0]), c2 = load_scs(check_scs[1]);
            w = (check_kind == "frb-brm") ? frb_brm_scs(c1, c2) : hhpb(c1, c2);
        }
        print_witness(w, check_json);
        return w.verdict ? 0 : 1;
    }

    if (cmd_mc->parsed()) {
        if (mc_proc.empty() == mc_scs.empty())
            throw std::invalid_argument("mc: give exactly one of --proc or --scs");
        bool verdict = false;
        if (mc_logic == "brm") {
            BrmFormula f = parse_brm_formula(mc_formula);
            if (!mc_proc.empty()) {
                verdict = mc_brm_process(parse_process(mc_proc), f);
            } else {
                std::optional<Config> cursor;
                ConfigStructure c = load_with_cursor(mc_scs, cursor);
                Config x = mc_config_set ? parse_config_ids(c, mc_config)
                                         : cursor.value_or(Config{});
                verdict = mc_brm_scs(Denotation{c, x}, f);
            }
        } else {
            EilFormula f = parse_eil_formula(mc_formula);
            if (!mc_proc.empty()) {
                EnvProc rho;
                if (!mc_env.empty()) {
                    std::stringstream ss(mc_env);
                    std::string item;
                    while (std::getline(ss, item, ',')) {
                        auto eq = item.find('=');
                        if (eq == std::string::npos)
                            throw std::invalid_argument("mc: bad --env entry '" + item + "'");
                        rho[item.substr(0, eq)] = parse_proof_term(item.substr(eq + 1));
                    }
                }
                verdict = mc_eil_process(parse_process(mc_proc), rho, f);
            } else {
                std::optional<Config> cursor;
                ConfigStructure c = load_with_cursor(mc_scs, cursor);
                Config x = mc_config_set ? parse_config_ids(c, mc_config)
                                         : cursor.value_or(Config{});
                EnvScs rho;
                if (!mc_env.empty()) {
                    std::stringstream ss(mc_env);
                    std::string item;
                    while (std::getline(ss, item, ',')) {
                        auto eq = item.find('=');
                        if (eq == std::string::npos)
                            throw std::invalid_argument("mc: bad --env entry '" + item + "'");
                        int e = c.find_event(item.substr(eq + 1));
                        if (e < 0)
                            throw std::invalid_argument("mc: unknown event id '" +
                                                        item.substr(eq + 1) + "'");
                        rho[item.substr(0, eq)] = e;
                    }
                }
                verdict = mc_eil_scs(c, x, rho, f);
            }
        }
        if (mc_json) {
            nlohmann::json j;
            j["verdict"] = verdict;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << (verdict ? "satisfied" : "not satisfied") << "\n";
        }
        return verdict ? 0 : 1;
    }

    if (cmd_tr->parsed()) {
        BrmFormula f = parse_brm_formula(tr_formula);
        ActionSet actions;
        {
            std::stringstream ss(tr_actions);
            std::string a;
            while (std::getline(ss, a, ','))
                if (!a.empty()) actions.insert(a);
        }
        HistorySequence h;
        if (!tr_history.empty()) {
            std::stringstream ss(tr_history);
            std::string item;
            while (std::getline(ss, item, ',')) {
                auto colon = item.find(':');
                if (colon == std::string::npos)
                    throw std::invalid_argument("translate: bad --history entry '" + item +
                                                "' (want id:action)");
                h.emplace_back(item.substr(0, colon), item.substr(colon + 1));
            }
        }
        EilFormula t = translate_brm_to_eil(f, actions, h);
        if (tr_json) {
            nlohmann::json j;
            j["formula"] = to_string(t);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << to_string(t) << "\n";
        }
        return 0;
    }

    if (cmd_xv->parsed()) {
        GeneratorConfig gc;
        gc.seed = xv_seed;
        gc.count = 2 * xv_count;
        gc.max_prefix_depth = xv_depth;
        gc.local_only = xv_local;
        std::vector<Process> procs = generate_processes(gc);
        std::size_t agreements = 0;
        nlohmann::json dumps = nlohmann::json::array();
        std::size_t bad = 0;  // disagreements not explained by non-locality
        for (std::size_t k = 0; k < xv_count; k++) {
            const Process &p1 = procs[2 * k], &p2 = procs[2 * k + 1];
            Denotation d1 = denote(p1), d2 = denote(p2);
            bool h = hhpb(d1.structure, d2.structure).verdict;
            bool f = frb_brm_proc(p1, p2).verdict;
            if (h == f) {
                agreements++;
                continue;
            }
            bool nonlocal = !is_conflict_local(d1.structure).local ||
                            !is_conflict_local(d2.structure).local;
            if (!nonlocal) bad++;
            dumps.push_back({{"p1", print_process(p1)},
                             {"p2", print_process(p2)},
                             {"hhpb", h},
                             {"frbBrm", f},
                             {"nonLocal", nonlocal}});
        }
        std::size_t disagreements = xv_count - agreements;
        if (xv_json) {
            nlohmann::json j;
            j["pairsChecked"] = xv_count;
            j["agreements"] = agreements;
            j["disagreements"] = disagreements;
            j["dumps"] = dumps;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "pairs checked: " << xv_count << "\nagreements: " << agreements
                      << "\ndisagreements: " << disagreements << "\n";
            for (auto& d : dumps)
                std::cout << "  " << d["p1"].get<std::string>() << "  vs  "
                          << d["p2"].get<std::string>() << "  hhpb=" << d["hhpb"]
                          << " frb-brm=" << d["frbBrm"] << " nonLocal=" << d["nonLocal"]
                          << "\n";
        }
        // Disagreements are acceptable only on non-local pairs.
        return bad == 0 && (!xv_local || disagreements == 0) ? 0 : 1;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fairdiv/envyfree.hpp"
#include "fairdiv/homology.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/splitter.hpp"

using namespace fairdiv;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknown = 2;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string digest(const std::vector<std::string>& argv_echo) {
    std::string joined;
    for (const auto& a : argv_echo) joined += a + "\x1f";
    std::ostringstream out;
    out << std::hex << fnv1a(joined);
    return out.str();
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

SignedMeasure as_signed(const Measure& mu) {
    SignedMeasure nu;
    nu.breakpoints = mu.breakpoints;
    nu.densities = mu.densities;
    return nu;
}

// Per-player spec tokens separated by ';'; a single token replicates to all
// players. Tokens: measure:<idx>, fewest:<q>, contains:<t>, length:<L>[:empty],
// longest.
PreferenceMatrix parse_pref_spec(const std::string& spec, int r, const Instance& inst) {
    std::vector<SignedMeasure> pool = inst.pref_measures;
    if (pool.empty() && inst.necklace)
        for (const auto& mu : inst.necklace->measures) pool.push_back(as_signed(mu));
    auto make = [&](const std::string& token) -> PreferenceOracle {
        const auto f = split_on(token, ':');
        if (f[0] == "measure") {
            const int idx = f.size() > 1 ? std::stoi(f[1]) : 0;
            if (idx < 0 || idx >= static_cast<int>(pool.size()))
                throw std::runtime_error("prefs: measure index " + std::to_string(idx) +
                                         " out of range");
            return measure_preference(pool[idx]);
        }
        if (f[0] == "fewest") return fewest_pieces_preference(f.size() > 1 ? std::stoi(f[1]) : 1);
        if (f[0] == "contains") return contains_point_preference(std::stod(f.at(1)));
        if (f[0] == "length")
            return length_threshold_preference(std::stod(f.at(1)),
                                               f.size() > 2 && f[2] == "empty");
        if (f[0] == "longest") return longest_piece_preference();
        throw std::runtime_error("prefs: unknown built-in '" + f[0] + "'");
    };
    auto tokens = split_on(spec, ';');
    if (tokens.size() == 1) tokens.assign(r, tokens[0]);
    if (static_cast<int>(tokens.size()) != r)
        throw std::runtime_error("prefs: expected 1 or r player specs");
    PreferenceMatrix prefs;
    for (const auto& t : tokens) prefs.rows.push_back(make(t));
    return prefs;
}

// Cut-oracle tokens for ak-demo: longest, length:<L>, point:<t>, leftmost.
std::vector<CutOracle> parse_cut_spec(const std::string& spec, int r) {
    auto make = [&](const std::string& token) -> CutOracle {
        const auto f = split_on(token, ':');
        CutOracle o;
        o.r = r;
        o.name = token;
        if (f[0] == "longest") {
            o.margins = [r](const std::vector<Interval>& pieces) {
                double best = 0.0;
                for (const auto& p : pieces) best = std::max(best, p.length());
                std::vector<double> m(r, -best); // empty shares lose to the longest
                for (std::size_t i = 0; i < pieces.size() && i < static_cast<std::size_t>(r); ++i)
                    m[i] = pieces[i].length() - best;
                return m;
            };
        } else if (f[0] == "length") {
            const double L = std::stod(f.at(1));
            o.margins = [r, L](const std::vector<Interval>& pieces) {
                double best = 0.0;
                for (const auto& p : pieces) best = std::max(best, p.length());
                std::vector<double> m(r, L - best); // empty preferred iff nothing reaches L
                for (std::size_t i = 0; i < pieces.size() && i < static_cast<std::size_t>(r); ++i)
                    m[i] = pieces[i].length() - L;
                return m;
            };
        } else if (f[0] == "point") {
            const double t = std::stod(f.at(1));
            o.margins = [r, t](const std::vector<Interval>& pieces) {
                std::vector<double> m(r, -1.0);
                for (std::size_t i = 0; i < pieces.size() && i < static_cast<std::size_t>(r); ++i)
                    m[i] = std::min(t - pieces[i].lo, pieces[i].hi - t);
                return m;
            };
        } else if (f[0] == "leftmost") {
            o.margins = [r](const std::vector<Interval>& pieces) {
                std::vector<double> m(r, -1.0);
                for (std::size_t i = 0; i < pieces.size() && i < static_cast<std::size_t>(r); ++i)
                    m[i] = i == 0 ? 1.0 : -1.0;
                return m;
            };
        } else {
            throw std::runtime_error("prefs: unknown cut oracle '" + f[0] + "'");
        }
        return o;
    };
    auto tokens = split_on(spec, ';');
    if (tokens.size() == 1) tokens.assign(r, tokens[0]);
    if (static_cast<int>(tokens.size()) != r)
        throw std::runtime_error("prefs: expected 1 or r player specs");
    std::vector<CutOracle> oracles;
    for (const auto& t : tokens) oracles.push_back(make(t));
    return oracles;
}

json report_header(const std::string& command, const std::vector<std::string>& echo,
                   std::uint64_t seed) {
    json rep;
    rep["command"] = command;
    rep["digest"] = digest(echo);
    rep["seed"] = seed;
    return rep;
}

void emit(const json& rep, bool as_json, const std::string& text) {
    if (as_json)
        std::cout << rep.dump() << "\n";
    else
        std::cout << text;
}

json split_report_json(const SplitReport& rep, int L) {
    json out;
    json cuts = json::array(), positions = json::array();
    for (const auto& c : rep.pa.cuts) {
        cuts.push_back(to_string(c));
        const Rational pos = c * L;
        if (denominator(pos) == 1) positions.push_back(numerator(pos).str());
    }
    out["cuts"] = cuts;
    out["positions"] = positions;
    json alloc = json::array();
    for (int o : rep.pa.allocation) alloc.push_back(o + 1);
    out["f"] = alloc;
    out["fairness_residual"] = to_string(rep.fairness_residual);
    out["profile"] = rep.cardinality_profile;
    out["equicardinal"] = rep.equicardinal_ok;
    out["g_constraint"] = rep.g_constraint_ok;
    out["complex_member"] = rep.complex_member_ok;
    out["theorem_covered"] = rep.theorem_covered;
    return out;
}

std::string split_report_text(const SplitReport& rep, int L) {
    std::ostringstream out;
    out << "cuts:";
    for (const auto& c : rep.pa.cuts) out << " " << to_string(c);
    out << "\npositions:";
    for (const auto& c : rep.pa.cuts) {
        const Rational pos = c * L;
        if (denominator(pos) == 1) out << " " << pos;
    }
    out << "\nf:";
    for (int o : rep.pa.allocation) out << " " << o + 1;
    out << "\nfairness_residual: " << to_string(rep.fairness_residual) << "\nprofile:";
    for (int c : rep.cardinality_profile) out << " " << c;
    out << "\nequicardinal: " << (rep.equicardinal_ok ? "yes" : "no")
        << "\ng_constraint: " << (rep.g_constraint_ok ? "yes" : "no")
        << "\ncomplex_member: " << (rep.complex_member_ok ? "yes" : "no")
        << "\ntheorem_covered: " << (rep.theorem_covered ? "yes" : "no") << "\n";
    return out.str();
}

SimplicialComplex generate(const std::vector<std::string>& args) {
    if (args.empty()) throw std::runtime_error("gen: expected a kind");
    const std::string& kind = args[0];
    if (kind == "chessboard") {
        if (args.size() != 3) throw std::runtime_error("gen: chessboard <m> <r>");
        return chessboard(std::stoi(args[1]), std::stoi(args[2]));
    }
    if (kind == "kgm") {
        if (args.size() != 4) throw std::runtime_error("gen: kgm <kind> <param> <m>");
        return g_constraint_complex(parse_graph_spec(args[1] + ":" + args[2]),
                                    std::stoi(args[3]));
    }
    if (kind == "bounded") {
        if (args.size() != 3) throw std::runtime_error("gen: bounded <m> <c>");
        return bounded_subsets_complex(std::stoi(args[1]), std::stoi(args[2]));
    }
    throw std::runtime_error("gen: unknown kind '" + kind + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"constrained fair-division toolkit"};
    app.require_subcommand(1);
    std::vector<std::string> echo(argv, argv + argc);

    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    // split
    auto* cmd_split = app.add_subcommand("split", "fair splitting of a bead string");
    std::string split_instance, split_graph, split_family;
    int split_r = 2, split_max_cuts = -1;
    std::uint64_t split_seed = 0;
    bool split_equi = false, split_oracle = false;
    cmd_split->add_option("instance", split_instance)->required();
    cmd_split->add_option("--r", split_r);
    cmd_split->add_flag("--equicardinal", split_equi);
    cmd_split->add_option("--graph", split_graph);
    cmd_split->add_option("--family", split_family);
    cmd_split->add_option("--max-cuts", split_max_cuts);
    cmd_split->add_option("--seed", split_seed);
    cmd_split->add_flag("--oracle", split_oracle);

    // envy-free
    auto* cmd_ef = app.add_subcommand("envy-free", "approximate envy-free splitting");
    std::string ef_instance, ef_prefs = "measure:0";
    SolverConfig ef_cfg;
    bool ef_equi = false;
    int ef_binary = -1;
    cmd_ef->add_option("instance", ef_instance)->required();
    cmd_ef->add_option("--prefs", ef_prefs);
    cmd_ef->add_option("--eps", ef_cfg.epsilon);
    cmd_ef->add_option("--grid", ef_cfg.grid);
    cmd_ef->add_option("--restarts", ef_cfg.restarts);
    cmd_ef->add_option("--seed", ef_cfg.seed);
    cmd_ef->add_option("--time-limit", ef_cfg.time_limit_sec);
    cmd_ef->add_flag("--equicardinal", ef_equi);
    cmd_ef->add_option("--binary", ef_binary, "cube dimension d, r = 2^d");

    // ak-demo
    auto* cmd_ak = app.add_subcommand("ak-demo", "cut-set preference demo");
    std::string ak_prefs = "longest";
    int ak_r = 2;
    SolverConfig ak_cfg;
    cmd_ak->add_option("--r", ak_r);
    cmd_ak->add_option("--prefs", ak_prefs);
    cmd_ak->add_option("--seed", ak_cfg.seed);
    cmd_ak->add_option("--restarts", ak_cfg.restarts);

    // verify-connectivity
    auto* cmd_vc = app.add_subcommand("verify-connectivity", "Betti-profile connectivity check");
    std::string vc_file;
    int vc_claim = 0, vc_p = 2;
    cmd_vc->add_option("file", vc_file, "complex file; stdin if omitted");
    cmd_vc->add_option("--claim", vc_claim)->required();
    cmd_vc->add_option("--p", vc_p);

    // check-unavoidable
    auto* cmd_cu = app.add_subcommand("check-unavoidable", "collective unavoidability check");
    std::string cu_family = "thm32", cu_complex;
    int cu_r = 2, cu_n = 1;
    cmd_cu->add_option("--family", cu_family, "thm32 (skeleta family)");
    cmd_cu->add_option("--complex", cu_complex, "single complex file; checks r-unavoidability");
    cmd_cu->add_option("--r", cu_r);
    cmd_cu->add_option("--n", cu_n);

    // gen
    auto* cmd_gen = app.add_subcommand("gen", "complex generators");
    std::vector<std::string> gen_args;
    cmd_gen->add_option("args", gen_args, "chessboard m r | kgm kind param m | bounded m c");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_split->parsed()) {
            const Instance inst = parse_instance_arg(split_instance, split_r);
            if (!inst.necklace || !inst.necklace->beads)
                throw std::runtime_error("split: instance must carry a bead string");
            const BeadString& beads = *inst.necklace->beads;
            const int r = inst.necklace->thieves;
            const int L = static_cast<int>(beads.length());

            SearchBudget budget;
            budget.max_cuts = split_max_cuts;
            budget.seed = split_seed;
            if (const char* env = std::getenv("FAIRDIV_NODE_LIMIT"))
                budget.node_limit = std::atoll(env);

            ConstraintSpec constraint{};
            SolveOutcome outcome;
            if (split_equi) {
                const auto [k, s] = ks_parameters(r, beads.num_types());
                constraint = EquicardinalConstraint{k, s};
                outcome = solve_equicardinal(beads, r, budget);
            } else if (!split_graph.empty()) {
                const Graph g = parse_graph_spec(split_graph);
                constraint = GraphConstraint{g};
                outcome = solve_g_constraint(beads, r, g, budget);
            } else if (!split_family.empty()) {
                ComplexFamilyConstraint c;
                c.m = (r - 1) * (beads.num_types() + 1) + 1;
                std::ifstream in(split_family);
                if (!in) throw std::runtime_error("cannot open " + split_family);
                std::string chunk, line;
                std::vector<std::string> chunks{""};
                while (std::getline(in, line)) {
                    if (line == "%")
                        chunks.push_back("");
                    else
                        chunks.back() += line + "\n";
                }
                for (const auto& ch : chunks) {
                    std::istringstream one(ch);
                    c.family.push_back(read_complex(one));
                }
                constraint = c;
                outcome = solve_complex_constrained(beads, r, c.family, c.m, budget);
            } else {
                outcome = solve_fair(beads, r, budget);
            }

            json rep = report_header("split", echo, split_seed);
            std::ostringstream text;
            text << "split r=" << r << " beads=" << beads.to_letters() << "\n";
            int code = kExitOk;
            if (outcome.found()) {
                const int effective_cuts = split_max_cuts >= 0
                                               ? split_max_cuts
                                               : (r - 1) * beads.num_types();
                if (!validate_report(beads, r, *outcome.report, constraint, effective_cuts))
                    throw std::runtime_error("internal: result failed re-validation");
                rep["result"] = split_report_json(*outcome.report, L);
                rep["status"] = "found";
                text << split_report_text(*outcome.report, L);
            } else if (outcome.budget_exhausted) {
                rep["status"] = "unknown";
                text << "unknown within budget (" << outcome.nodes << " nodes)\n";
                code = kExitUnknown;
            } else {
                rep["status"] = "infeasible";
                text << "no splitting within the cut budget\n";
                code = kExitUnknown;
            }
            if (split_oracle) {
                const int max_cuts = split_max_cuts >= 0 ? split_max_cuts
                                                         : (r - 1) * beads.num_types();
                const auto all = brute_force_oracle(beads, r, max_cuts, constraint);
                rep["oracle_count"] = all.size();
                text << "oracle solutions: " << all.size() << "\n";
                for (const auto& pa : all) {
                    std::ostringstream lineout;
                    lineout << "  positions:";
                    json positions = json::array();
                    for (const auto& c : pa.cuts) {
                        const Rational pos = c * L;
                        lineout << " " << pos;
                        positions.push_back(numerator(pos).str());
                    }
                    lineout << " f:";
                    for (int o : pa.allocation) lineout << " " << o + 1;
                    text << lineout.str() << "\n";
                }
            }
            emit(rep, as_json, text.str());
            return code;
        }

        if (cmd_ef->parsed()) {
            const Instance inst = parse_instance_arg(ef_instance, 2);
            if (!inst.necklace) throw std::runtime_error("envy-free: instance must carry a necklace");
            const Necklace& nk = *inst.necklace;
            const PreferenceMatrix prefs = parse_pref_spec(ef_prefs, nk.r(), inst);

            EnvyFreeSolution sol;
            if (ef_equi)
                sol = solve_envy_free_equicardinal(nk, prefs, ef_cfg);
            else if (ef_binary >= 0)
                sol = solve_envy_free_binary(nk, prefs, ef_binary, ef_cfg);
            else
                sol = solve_envy_free(nk, prefs, ef_cfg);

            // independent re-validation of the residual before emission
            const double check = test_map(sol.point, nk, prefs, sol.delta);
            const bool reached = sol.reached && check <= ef_cfg.epsilon * (1 + 1e-9);

            json rep = report_header("envy-free", echo, ef_cfg.seed);
            rep["residual"] = sol.residual;
            rep["delta"] = sol.delta;
            rep["reached"] = reached;
            rep["theorem_covered"] = sol.theorem_covered;
            rep["cuts"] = sol.point.cuts;
            json owner = json::array();
            for (int o : sol.point.owner) owner.push_back(o + 1);
            rep["f"] = owner;
            json pi = json::array();
            for (int a : sol.assignment) pi.push_back(a + 1);
            rep["assignment"] = pi;

            std::ostringstream text;
            text << "envy-free r=" << nk.r() << " residual=" << sol.residual
                 << " delta=" << sol.delta << " reached=" << (reached ? "yes" : "no") << "\ncuts:";
            for (double c : sol.point.cuts) text << " " << c;
            text << "\nf:";
            for (int o : sol.point.owner) text << " " << o + 1;
            text << "\nassignment:";
            for (int a : sol.assignment) text << " " << a + 1;
            text << "\ntheorem_covered: " << (sol.theorem_covered ? "yes" : "no") << "\n";
            emit(rep, as_json, text.str());
            return reached ? kExitOk : kExitUnknown;
        }

        if (cmd_ak->parsed()) {
            const auto oracles = parse_cut_spec(ak_prefs, ak_r);
            const AkSolution sol = solve_ak(oracles, ak_r, ak_cfg);
            json rep = report_header("ak-demo", echo, ak_cfg.seed);
            rep["residual"] = sol.residual;
            rep["reached"] = sol.reached;
            json pieces = json::array();
            for (const auto& p : sol.pieces) pieces.push_back({p.lo, p.hi});
            rep["pieces"] = pieces;
            rep["share_piece"] = sol.share_piece;
            rep["margins"] = sol.margins;

            std::ostringstream text;
            text << "ak-demo r=" << ak_r << " residual=" << sol.residual
                 << " reached=" << (sol.reached ? "yes" : "no") << "\npieces:";
            for (const auto& p : sol.pieces) text << " [" << p.lo << "," << p.hi << "]";
            text << "\nshares:";
            for (std::size_t j = 0; j < sol.share_piece.size(); ++j) {
                text << " player" << j + 1 << "->";
                if (sol.share_piece[j] < 0)
                    text << "empty";
                else
                    text << "piece" << sol.share_piece[j] + 1;
            }
            text << "\nmargins:";
            for (double mgn : sol.margins) text << " " << mgn;
            text << "\n";
            emit(rep, as_json, text.str());
            return sol.reached ? kExitOk : kExitUnknown;
        }

        if (cmd_vc->parsed()) {
            SimplicialComplex K;
            if (vc_file.empty())
                K = read_complex(std::cin);
            else
                K = read_complex_file(vc_file);
            const auto cert = connectivity_certificate(K, vc_claim, vc_p);
            json rep = report_header("verify-connectivity", echo, 0);
            rep["pass"] = cert.pass;
            rep["claim"] = cert.claimed;
            rep["p"] = cert.profile.p;
            rep["betti"] = cert.profile.reduced_betti;
            rep["connectivity"] = cert.profile.connectivity;
            rep["path_connected"] = cert.path_connected;
            emit(rep, as_json, cert.to_text() + "\n");
            return cert.pass ? kExitOk : kExitError;
        }

        if (cmd_cu->parsed()) {
            bool verdict = false;
            json rep = report_header("check-unavoidable", echo, 0);
            if (!cu_complex.empty()) {
                const SimplicialComplex K = read_complex_file(cu_complex);
                const int m = K.num_vertices();
                verdict = is_r_unavoidable(K, m, cu_r);
                rep["mode"] = "r-unavoidable";
            } else if (cu_family == "thm32") {
                const auto family = equicardinal_skeleta_family(cu_r, cu_n);
                const int m = (cu_r - 1) * (cu_n + 1) + 1;
                verdict = is_collectively_unavoidable(family, m);
                rep["mode"] = "collective";
                // cross-check against the symbolic pigeonhole criterion
                const auto [k, s] = ks_parameters(cu_r, cu_n);
                std::vector<int> caps;
                for (int i = 0; i < cu_r; ++i) caps.push_back(i < s ? k + 1 : k);
                if (skeleta_family_unavoidable_symbolic(caps, m) != verdict)
                    throw std::runtime_error("internal: symbolic criterion disagrees");
            } else {
                throw std::runtime_error("check-unavoidable: unknown family '" + cu_family + "'");
            }
            rep["verdict"] = verdict;
            emit(rep, as_json, std::string(verdict ? "true" : "false") + "\n");
            return verdict ? kExitOk : kExitError;
        }

        if (cmd_gen->parsed()) {
            const SimplicialComplex K = generate(gen_args);
            write_complex(std::cout, K);
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fairdiv/complexes.hpp"
#include "fairdiv/envyfree.hpp"
#include "fairdiv/homology.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/necklace.hpp"
#include "fairdiv/splitter.hpp"

#include <string>
#include <vector>

namespace py = pybind11;
using namespace fairdiv;

namespace {

Rational rational_from(const py::handle& v) {
    if (py::isinstance<py::str>(v)) return parse_rational(v.cast<std::string>());
    if (py::isinstance<py::int_>(v)) return Rational(BigInt(v.cast<long long>()));
    throw py::type_error("expected an int or a 'p/q' string");
}

std::vector<Rational> rationals_from(const py::sequence& seq) {
    std::vector<Rational> out;
    for (const auto& v : seq) out.push_back(rational_from(v));
    return out;
}

Measure measure_from(const py::sequence& bp, const py::sequence& dens) {
    return Measure(rationals_from(bp), rationals_from(dens));
}

py::dict report_to_dict(const SplitReport& rep) {
    py::dict d;
    py::list cuts;
    for (const auto& c : rep.pa.cuts) cuts.append(to_string(c));
    d["cuts"] = cuts;
    d["allocation"] = rep.pa.allocation;
    d["fairness_residual"] = to_string(rep.fairness_residual);
    d["cardinality_profile"] = rep.cardinality_profile;
    d["equicardinal_ok"] = rep.equicardinal_ok;
    d["g_constraint_ok"] = rep.g_constraint_ok;
    d["theorem_covered"] = rep.theorem_covered;
    return d;
}

py::object outcome_to_py(const SolveOutcome& out) {
    if (!out.found()) return py::none();
    py::dict d = report_to_dict(*out.report);
    d["nodes"] = out.nodes;
    return d;
}

SearchBudget budget_of(double time_limit, long long node_limit, std::uint64_t seed) {
    SearchBudget b;
    b.time_limit_sec = time_limit;
    b.node_limit = node_limit;
    b.seed = seed;
    return b;
}

PreferenceOracle oracle_from(const py::tuple& spec) {
    if (spec.size() == 0) throw py::value_error("empty preference spec");
    const auto kind = spec[0].cast<std::string>();
    if (kind == "measure") {
        SignedMeasure nu;
        nu.breakpoints = rationals_from(spec[1].cast<py::sequence>());
        nu.densities = rationals_from(spec[2].cast<py::sequence>());
        nu.validate();
        return measure_preference(nu);
    }
    if (kind == "fewest_pieces") return fewest_pieces_preference(spec[1].cast<int>());
    if (kind == "contains_point") return contains_point_preference(spec[1].cast<double>());
    if (kind == "length_threshold")
        return length_threshold_preference(spec[1].cast<double>(),
                                           spec.size() > 2 && spec[2].cast<bool>());
    if (kind == "longest") return longest_piece_preference();
    throw py::value_error("unknown preference kind: " + kind);
}

SolverConfig config_of(double epsilon, int restarts, std::uint64_t seed, double delta,
                       double time_limit) {
    SolverConfig cfg;
    cfg.epsilon = epsilon;
    cfg.restarts = restarts;
    cfg.seed = seed;
    cfg.delta = delta;
    cfg.time_limit_sec = time_limit;
    return cfg;
}

py::dict envyfree_to_dict(const EnvyFreeSolution& sol) {
    py::dict d;
    d["cuts"] = sol.point.cuts;
    d["owner"] = sol.point.owner;
    d["assignment"] = sol.assignment;
    d["margins"] = sol.margins;
    d["residual"] = sol.residual;
    d["delta"] = sol.delta;
    d["reached"] = sol.reached;
    d["theorem_covered"] = sol.theorem_covered;
    return d;
}

} // namespace

PYBIND11_MODULE(_fairdiv, m) {
    m.doc() = "fair splitting of necklaces: exact discrete solvers, the simplicial "
              "complexes behind them, and envy-free division with preference oracles";

    // ---- discrete necklace solvers ----
    m.def(
        "solve_fair",
        [](const std::string& beads, int r, double time_limit, long long node_limit,
           std::uint64_t seed) {
            return outcome_to_py(
                solve_fair(BeadString::from_string(beads), r, budget_of(time_limit, node_limit, seed)));
        },
        py::arg("beads"), py::arg("r"), py::arg("time_limit") = 60.0,
        py::arg("node_limit") = 50'000'000LL, py::arg("seed") = 0,
        "Fair split of a bead string among r thieves with at most (r-1)n cuts. "
        "Returns a report dict, or None when no split exists within the budget.");

    m.def(
        "solve_equicardinal",
        [](const std::string& beads, int r, double time_limit, long long node_limit,
           std::uint64_t seed) {
            return outcome_to_py(solve_equicardinal(BeadString::from_string(beads), r,
                                                    budget_of(time_limit, node_limit, seed)));
        },
        py::arg("beads"), py::arg("r"), py::arg("time_limit") = 60.0,
        py::arg("node_limit") = 50'000'000LL, py::arg("seed") = 0,
        "Fair split whose per-thief piece counts are as balanced as the cut bound allows.");

    m.def(
        "solve_g_constraint",
        [](const std::string& beads, int r, const std::string& graph_spec, double time_limit,
           long long node_limit, std::uint64_t seed) {
            return outcome_to_py(solve_g_constraint(BeadString::from_string(beads), r,
                                                    parse_graph_spec(graph_spec),
                                                    budget_of(time_limit, node_limit, seed)));
        },
        py::arg("beads"), py::arg("r"), py::arg("graph"), py::arg("time_limit") = 60.0,
        py::arg("node_limit") = 50'000'000LL, py::arg("seed") = 0,
        "Fair split where consecutive pieces go to equal or adjacent thieves of the "
        "graph ('cube:d', 'complete:r', 'cycle:r', 'path:r').");

    m.def(
        "brute_force",
        [](const std::string& beads, int r, int max_cuts) {
            py::list out;
            for (const auto& pa : brute_force_oracle(BeadString::from_string(beads), r, max_cuts)) {
                py::dict d;
                py::list cuts;
                for (const auto& c : pa.cuts) cuts.append(to_string(c));
                d["cuts"] = cuts;
                d["allocation"] = pa.allocation;
                out.append(d);
            }
            return out;
        },
        py::arg("beads"), py::arg("r"), py::arg("max_cuts"),
        "All fair integer-cut splittings with at most max_cuts cuts.");

    m.def(
        "ks_parameters", [](int r, int n) { return ks_parameters(r, n); }, py::arg("r"),
        py::arg("n"), "The (k, s) with kr + s = (r-1)n + 1 and 0 <= s < r.");

    m.def("is_prime_power", &is_prime_power, py::arg("r"));

    // ---- simplicial complexes and homology ----
    py::class_<SimplicialComplex>(m, "SimplicialComplex")
        .def_property_readonly("vertex_labels",
                               [](const SimplicialComplex& K) { return K.vertex_labels; })
        .def_property_readonly("facets", [](const SimplicialComplex& K) { return K.facets; })
        .def("num_vertices", &SimplicialComplex::num_vertices)
        .def("dim", &SimplicialComplex::dim)
        .def("__repr__", [](const SimplicialComplex& K) {
            return "<SimplicialComplex dim=" + std::to_string(K.dim()) + " facets=" +
                   std::to_string(K.facets.size()) + ">";
        });

    m.def("chessboard", &chessboard, py::arg("m"), py::arg("r"),
          "Chessboard complex on an m x r board: rook-disjoint placements.");
    m.def("bounded_subsets", &bounded_subsets_complex, py::arg("m"), py::arg("c"),
          "Subsets of [m] of size at most c+1 (the c-skeleton of the full simplex).");
    m.def("deleted_join", &deleted_join, py::arg("family"), py::arg("m"));
    m.def("symm_deleted_join", &symm_deleted_join, py::arg("family"), py::arg("m"));
    m.def(
        "g_constraint_complex",
        [](const std::string& graph_spec, int m) {
            return g_constraint_complex(parse_graph_spec(graph_spec), m);
        },
        py::arg("graph"), py::arg("m"),
        "Order complex of the allocation poset of walk-compatible splittings.");
    m.def(
        "count_g_walks",
        [](const std::string& graph_spec, int m) {
            return count_g_walks(parse_graph_spec(graph_spec), m);
        },
        py::arg("graph"), py::arg("m"));
    m.def("is_r_unavoidable", &is_r_unavoidable, py::arg("complex"), py::arg("m"), py::arg("r"));
    m.def("is_collectively_unavoidable", &is_collectively_unavoidable, py::arg("family"),
          py::arg("m"));

    m.def(
        "betti",
        [](const SimplicialComplex& K, int p) { return betti_profile(K, p).reduced_betti; },
        py::arg("complex"), py::arg("p") = 2,
        "Reduced Betti numbers over the field with p elements.");
    m.def(
        "connectivity",
        [](const SimplicialComplex& K, int claimed, int p) {
            const auto rep = connectivity_certificate(K, claimed, p);
            py::dict d;
            d["pass"] = rep.pass;
            d["claimed"] = rep.claimed;
            d["path_connected"] = rep.path_connected;
            d["reduced_betti"] = rep.profile.reduced_betti;
            d["text"] = rep.to_text();
            return d;
        },
        py::arg("complex"), py::arg("claimed"), py::arg("p") = 2,
        "Certificate that the complex is at least `claimed`-connected homologically.");

    // ---- envy-free division ----
    m.def(
        "solve_envy_free",
        [](int r, const py::sequence& measures, const py::sequence& preferences, double epsilon,
           int restarts, std::uint64_t seed, double delta, double time_limit) {
            Necklace nk;
            nk.thieves = r;
            for (const auto& pair : measures) {
                auto t = pair.cast<py::sequence>();
                nk.measures.push_back(
                    measure_from(t[0].cast<py::sequence>(), t[1].cast<py::sequence>()));
            }
            PreferenceMatrix prefs;
            for (const auto& spec : preferences)
                prefs.rows.push_back(oracle_from(spec.cast<py::tuple>()));
            return envyfree_to_dict(solve_envy_free(
                nk, prefs, config_of(epsilon, restarts, seed, delta, time_limit)));
        },
        py::arg("r"), py::arg("measures"), py::arg("preferences"), py::arg("epsilon") = 1e-6,
        py::arg("restarts") = 64, py::arg("seed") = 0, py::arg("delta") = 1e-3,
        py::arg("time_limit") = 120.0,
        "Split [0,1] so every measure is shared equally and every player receives a "
        "preferred part. measures: [(breakpoints, densities), ...] with exact rational "
        "entries. preferences: one spec tuple per player, e.g. ('measure', bp, dens), "
        "('fewest_pieces', q), ('contains_point', t), ('length_threshold', L, prefer_empty), "
        "('longest',).");

    m.def(
        "solve_ak",
        [](const py::sequence& margin_fns, int r, double epsilon, int restarts,
           std::uint64_t seed, double delta, double time_limit) {
            std::vector<CutOracle> oracles;
            for (const auto& fn : margin_fns) {
                CutOracle o;
                o.r = r;
                o.name = "python";
                auto callable = fn.cast<py::function>();
                o.margins = [callable, r](const std::vector<Interval>& pieces) {
                    py::list arg;
                    for (const auto& p : pieces) arg.append(py::make_tuple(p.lo, p.hi));
                    return callable(arg).cast<std::vector<double>>();
                };
                oracles.push_back(std::move(o));
            }
            const auto sol =
                solve_ak(oracles, r, config_of(epsilon, restarts, seed, delta, time_limit));
            py::dict d;
            py::list pieces;
            for (const auto& p : sol.pieces) pieces.append(py::make_tuple(p.lo, p.hi));
            d["pieces"] = pieces;
            d["share_piece"] = sol.share_piece;
            d["margins"] = sol.margins;
            d["residual"] = sol.residual;
            d["reached"] = sol.reached;
            return d;
        },
        py::arg("margin_fns"), py::arg("r"), py::arg("epsilon") = 1e-6, py::arg("restarts") = 64,
        py::arg("seed") = 0, py::arg("delta") = 1e-3, py::arg("time_limit") = 120.0,
        "Partition [0,1] into at most r parts so that each player receives a preferred "
        "part or a preferred empty share. Each margin function maps the list of "
        "non-degenerate pieces [(lo, hi), ...] to r margins: entry i < len(pieces) rates "
        "piece i, later entries rate an empty share.");
}

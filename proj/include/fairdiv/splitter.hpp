#pragma once

#include "fairdiv/complexes.hpp"
#include "fairdiv/necklace.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace fairdiv {

struct SearchBudget {
    int max_cuts = -1; // -1: default (r-1)n
    std::int64_t node_limit = 50'000'000;
    double time_limit_sec = 60.0;
    std::uint64_t seed = 0;
};

struct EquicardinalConstraint {
    int k = 0, s = 0;
};
struct GraphConstraint {
    Graph g;
};
struct ComplexFamilyConstraint {
    std::vector<SimplicialComplex> family; // over [m], m = (r-1)(n+1)+1
    int m = 0;
};
using ConstraintSpec = std::variant<std::monostate, EquicardinalConstraint, GraphConstraint,
                                    ComplexFamilyConstraint>;

// Outcome of a bounded search: a report, or "unknown within budget".
struct SolveOutcome {
    std::optional<SplitReport> report;
    bool budget_exhausted = false;
    std::int64_t nodes = 0;

    bool found() const { return report.has_value(); }
};

SolveOutcome solve_fair(const BeadString& beads, int r, const SearchBudget& budget = {});

SolveOutcome solve_equicardinal(const BeadString& beads, int r, const SearchBudget& budget = {});

SolveOutcome solve_g_constraint(const BeadString& beads, int r, const Graph& g,
                                const SearchBudget& budget = {});

SolveOutcome solve_complex_constrained(const BeadString& beads, int r,
                                       const std::vector<SimplicialComplex>& family, int m,
                                       const SearchBudget& budget = {});

// Complete enumeration of integer-cut splittings with <= max_cuts cuts,
// filtered by fairness and the constraint. Throws on capacity overflow.
std::vector<PartitionAllocation> brute_force_oracle(const BeadString& beads, int r, int max_cuts,
                                                    const ConstraintSpec& constraint = {});

// Independent re-validation of a solver result (fairness, cut bound, constraint).
bool validate_report(const BeadString& beads, int r, const SplitReport& rep,
                     const ConstraintSpec& constraint, int max_cuts);

} // namespace fairdiv

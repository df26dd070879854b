#include "fairdiv/splitter.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace fairdiv {

namespace {

using Clock = std::chrono::steady_clock;

struct SearchContext {
    const BeadString& beads;
    int r;
    int types;
    std::vector<int> mult;
    int max_cuts;
    std::int64_t node_limit;
    Clock::time_point deadline;
    std::vector<int> owner_order;

    // constraint hooks
    int eq_k = -1, eq_s = -1;
    const Graph* graph = nullptr;
    const SymmFamilyOracle* oracle = nullptr;
    int family_m = 0;

    // mutable search state
    std::vector<std::vector<int>> count;   // thief x type
    std::vector<int> piece_count;          // per thief
    std::vector<std::uint64_t> piece_sets; // per thief, piece-index bitmask
    std::vector<int> owners;               // per bead
    std::int64_t nodes = 0;
    bool exhausted = false;
};

PartitionAllocation pa_from_owners(const std::vector<int>& owners) {
    const int L = static_cast<int>(owners.size());
    PartitionAllocation pa;
    pa.allocation.push_back(owners[0]);
    for (int c = 1; c < L; ++c)
        if (owners[c] != owners[c - 1]) {
            pa.cuts.push_back(Rational(c, L));
            pa.allocation.push_back(owners[c]);
        }
    return pa;
}

bool dfs(SearchContext& ctx, int pos, int cuts_used) {
    if (++ctx.nodes > ctx.node_limit || (ctx.nodes % 4096 == 0 && Clock::now() > ctx.deadline)) {
        ctx.exhausted = true;
        return false;
    }
    const int L = static_cast<int>(ctx.beads.length());
    if (pos == L) return true; // counts are exact by construction of the pruning

    const int type = ctx.beads.beads[pos];
    const int prev = pos > 0 ? ctx.owners[pos - 1] : -1;

    // Out of cuts: the rest of the necklace must go to the current thief.
    if (prev >= 0 && cuts_used == ctx.max_cuts) {
        int taken = 0;
        bool feasible = true;
        for (int q = pos; q < L; ++q) {
            const int qt = ctx.beads.beads[q];
            if (ctx.count[prev][qt] >= ctx.mult[qt] / ctx.r) {
                feasible = false;
                break;
            }
            ctx.count[prev][qt]++;
            ctx.owners[q] = prev;
            taken++;
        }
        if (feasible && dfs(ctx, L, cuts_used)) return true;
        for (int q = pos; q < pos + taken; ++q) ctx.count[prev][ctx.beads.beads[q]]--;
        return false;
    }

    for (int t : ctx.owner_order) {
        if (ctx.count[t][type] >= ctx.mult[type] / ctx.r) continue;
        const bool new_piece = (t != prev);
        const int nc = cuts_used + (prev >= 0 && new_piece ? 1 : 0);
        if (nc > ctx.max_cuts) continue;
        if (new_piece && ctx.graph && prev >= 0 && !ctx.graph->has_edge(prev, t)) continue;
        const bool opens = (prev < 0) || new_piece;
        if (opens && ctx.eq_k >= 0) {
            if (ctx.piece_count[t] + 1 > ctx.eq_k + 1) continue;
            if (ctx.piece_count[t] + 1 == ctx.eq_k + 1) {
                int at_top = 1;
                for (int u = 0; u < ctx.r; ++u)
                    if (u != t && ctx.piece_count[u] == ctx.eq_k + 1) at_top++;
                if (at_top > ctx.eq_s) continue;
            }
        }
        int piece_index = -1;
        if (opens && ctx.oracle) {
            piece_index = (prev < 0) ? 0 : nc; // pieces so far = cuts so far (+1 for first)
            if (prev >= 0) piece_index = nc;   // 0-based index of the new piece
            if (piece_index >= ctx.family_m) continue;
            ctx.piece_sets[t] |= 1ull << piece_index;
            if (!ctx.oracle->admits(ctx.piece_sets)) {
                ctx.piece_sets[t] &= ~(1ull << piece_index);
                continue;
            }
        }
        ctx.owners[pos] = t;
        ctx.count[t][type]++;
        if (opens) ctx.piece_count[t]++;
        if (dfs(ctx, pos + 1, nc)) return true;
        if (opens) ctx.piece_count[t]--;
        ctx.count[t][type]--;
        if (piece_index >= 0) ctx.piece_sets[t] &= ~(1ull << piece_index);
        if (ctx.exhausted) return false;
    }
    return false;
}

SolveOutcome run_search(const BeadString& beads, int r, const SearchBudget& budget,
                        const ConstraintSpec& constraint) {
    if (beads.beads.empty()) throw std::invalid_argument("solver: empty bead string");
    const auto mult = beads.multiplicities();
    for (int c : mult)
        if (c % r != 0)
            throw std::invalid_argument("solver: every multiplicity must be divisible by r");
    const int n = static_cast<int>(mult.size());

    SearchContext ctx{beads, r, n, mult,
                      budget.max_cuts >= 0 ? budget.max_cuts : (r - 1) * n,
                      budget.node_limit,
                      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                         std::chrono::duration<double>(budget.time_limit_sec)),
                      {}};
    ctx.owner_order.resize(r);
    std::iota(ctx.owner_order.begin(), ctx.owner_order.end(), 0);
    if (budget.seed != 0) {
        std::mt19937_64 rng(budget.seed);
        std::shuffle(ctx.owner_order.begin(), ctx.owner_order.end(), rng);
    }
    ctx.count.assign(r, std::vector<int>(n, 0));
    ctx.piece_count.assign(r, 0);
    ctx.piece_sets.assign(r, 0);
    ctx.owners.assign(beads.length(), -1);

    std::unique_ptr<SymmFamilyOracle> oracle;
    if (const auto* eq = std::get_if<EquicardinalConstraint>(&constraint)) {
        ctx.eq_k = eq->k;
        ctx.eq_s = eq->s;
    } else if (const auto* gc = std::get_if<GraphConstraint>(&constraint)) {
        ctx.graph = &gc->g;
    } else if (const auto* cf = std::get_if<ComplexFamilyConstraint>(&constraint)) {
        oracle = std::make_unique<SymmFamilyOracle>(cf->family, cf->m);
        ctx.oracle = oracle.get();
        ctx.family_m = cf->m;
    }

    const bool found = dfs(ctx, 0, 0);
    SolveOutcome out;
    out.nodes = ctx.nodes;
    out.budget_exhausted = ctx.exhausted;
    if (!found) return out;

    SplitReport rep;
    rep.pa = pa_from_owners(ctx.owners);
    const Necklace nk = discrete_to_continuous(beads, r);
    rep.fairness_residual = fairness_residual(nk, rep.pa);
    rep.cardinality_profile = rep.pa.cardinality_profile(r);
    const auto [k, s] = ks_parameters(r, n);
    rep.equicardinal_ok = is_ks_equicardinal(rep.pa, r, k, s);
    rep.g_constraint_ok = ctx.graph ? is_g_constraint(rep.pa, *ctx.graph) : false;
    if (ctx.oracle) {
        std::vector<std::vector<int>> parts(r);
        for (int p = 0; p < rep.pa.pieces(); ++p)
            if (!rep.pa.degenerate(p)) parts[rep.pa.allocation[p]].push_back(p);
        rep.complex_member_ok =
            tuple_in_symm_family(parts, std::get<ComplexFamilyConstraint>(constraint).family);
    }
    rep.theorem_covered = is_prime_power(r) ||
                          (std::holds_alternative<std::monostate>(constraint) ||
                           std::holds_alternative<GraphConstraint>(constraint));
    out.report = std::move(rep);
    return out;
}

} // namespace

SolveOutcome solve_fair(const BeadString& beads, int r, const SearchBudget& budget) {
    return run_search(beads, r, budget, std::monostate{});
}

SolveOutcome solve_equicardinal(const BeadString& beads, int r, const SearchBudget& budget) {
    const auto [k, s] = ks_parameters(r, beads.num_types());
    return run_search(beads, r, budget, EquicardinalConstraint{k, s});
}

SolveOutcome solve_g_constraint(const BeadString& beads, int r, const Graph& g,
                                const SearchBudget& budget) {
    if (g.num_vertices != r) throw std::invalid_argument("solver: graph vertex set must be [r]");
    if (!g.connected()) throw std::invalid_argument("solver: constraint graph must be connected");
    return run_search(beads, r, budget, GraphConstraint{g});
}

SolveOutcome solve_complex_constrained(const BeadString& beads, int r,
                                       const std::vector<SimplicialComplex>& family, int m,
                                       const SearchBudget& budget) {
    if (static_cast<int>(family.size()) != r)
        throw std::invalid_argument("solver: family must have r complexes");
    if (!is_collectively_unavoidable(family, m))
        throw std::invalid_argument("solver: family is not collectively unavoidable");
    const auto [k, s] = ks_parameters(r, beads.num_types());
    for (std::size_t i = 0; i < family.size(); ++i)
        if (!is_balanced(family[i], m, k))
            throw std::invalid_argument("solver: family member " + std::to_string(i + 1) +
                                        " is not (m,k)-balanced");
    return run_search(beads, r, budget, ComplexFamilyConstraint{family, m});
}

namespace {

bool constraint_holds(const PartitionAllocation& pa, int r, int n,
                      const ConstraintSpec& constraint) {
    if (const auto* eq = std::get_if<EquicardinalConstraint>(&constraint))
        return is_ks_equicardinal(pa, r, eq->k, eq->s);
    if (const auto* gc = std::get_if<GraphConstraint>(&constraint))
        return is_g_constraint(pa, gc->g);
    if (const auto* cf = std::get_if<ComplexFamilyConstraint>(&constraint)) {
        std::vector<std::vector<int>> parts(r);
        for (int p = 0; p < pa.pieces(); ++p)
            if (!pa.degenerate(p)) parts[pa.allocation[p]].push_back(p);
        if (pa.pieces() > cf->m) return false;
        return tuple_in_symm_family(parts, cf->family);
    }
    (void)n;
    return true;
}

double binom(int n, int k) {
    double v = 1;
    for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
    return v;
}

} // namespace

std::vector<PartitionAllocation> brute_force_oracle(const BeadString& beads, int r, int max_cuts,
                                                    const ConstraintSpec& constraint) {
    const int L = static_cast<int>(beads.length());
    const auto mult = beads.multiplicities();
    for (int c : mult)
        if (c % r != 0)
            throw std::invalid_argument("oracle: every multiplicity must be divisible by r");
    if (binom(L - 1, max_cuts) * std::pow(static_cast<double>(r), max_cuts + 1) > 1e8)
        throw std::runtime_error("oracle: capacity C(L-1,K)*r^(K+1) <= 1e8 exceeded");

    const int types = beads.num_types();
    // prefix[t][q]: beads of type t among the first q cells
    std::vector<std::vector<int>> prefix(types, std::vector<int>(L + 1, 0));
    for (int q = 0; q < L; ++q)
        for (int t = 0; t < types; ++t)
            prefix[t][q + 1] = prefix[t][q] + (beads.beads[q] == t ? 1 : 0);

    std::set<std::pair<std::vector<Rational>, std::vector<int>>> seen;
    std::vector<PartitionAllocation> solutions;

    std::vector<int> cut_positions;
    std::function<void()> assign_owners = [&]() {
        const int pieces = static_cast<int>(cut_positions.size()) + 1;
        std::vector<int> owner(pieces, 0);
        std::vector<int> count(r * types);
        while (true) {
            std::fill(count.begin(), count.end(), 0);
            bool fair = true;
            for (int k = 0; k < pieces && fair; ++k) {
                const int lo = k == 0 ? 0 : cut_positions[k - 1];
                const int hi = k == pieces - 1 ? L : cut_positions[k];
                for (int t = 0; t < types; ++t) {
                    const int idx = owner[k] * types + t;
                    count[idx] += prefix[t][hi] - prefix[t][lo];
                    if (count[idx] > mult[t] / r) {
                        fair = false;
                        break;
                    }
                }
            }
            if (fair)
                for (int i = 0; i < r * types && fair; ++i)
                    if (count[i] != mult[i % types] / r) fair = false;
            if (fair) {
                PartitionAllocation pa;
                for (int c : cut_positions) pa.cuts.push_back(Rational(c, L));
                pa.allocation = owner;
                if (constraint_holds(pa, r, types, constraint)) {
                    // canonicalize: merge pieces across no-op cuts
                    PartitionAllocation canon;
                    canon.allocation.push_back(pa.allocation[0]);
                    for (int k = 1; k < pieces; ++k)
                        if (pa.allocation[k] != pa.allocation[k - 1]) {
                            canon.cuts.push_back(pa.cuts[k - 1]);
                            canon.allocation.push_back(pa.allocation[k]);
                        }
                    if (seen.insert({canon.cuts, canon.allocation}).second)
                        solutions.push_back(canon);
                }
            }
            int i = pieces - 1;
            while (i >= 0 && owner[i] == r - 1) owner[i--] = 0;
            if (i < 0) break;
            owner[i]++;
        }
    };
    std::function<void(int, int)> choose_cuts = [&](int start, int remaining) {
        assign_owners();
        if (remaining == 0) return;
        for (int c = start; c < L; ++c) {
            cut_positions.push_back(c);
            choose_cuts(c + 1, remaining - 1);
            cut_positions.pop_back();
        }
    };
    choose_cuts(1, max_cuts);
    return solutions;
}

bool validate_report(const BeadString& beads, int r, const SplitReport& rep,
                     const ConstraintSpec& constraint, int max_cuts) {
    const Necklace nk = discrete_to_continuous(beads, r);
    rep.pa.validate(r);
    if (fairness_residual(nk, rep.pa) != 0) return false;
    if (rep.pa.num_cuts() > max_cuts) return false;
    for (const auto& x : rep.pa.cuts) {
        const Rational scaled = x * static_cast<int>(beads.length());
        if (denominator(scaled) != 1) return false; // cut not at a cell boundary
    }
    return constraint_holds(rep.pa, r, beads.num_types(), constraint);
}

} // namespace fairdiv

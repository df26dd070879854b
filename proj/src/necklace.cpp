#include "fairdiv/necklace.hpp"
#include "fairdiv/complexes.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace fairdiv {

Measure::Measure(std::vector<Rational> bp, std::vector<Rational> dens)
    : breakpoints(std::move(bp)), densities(std::move(dens)) {
    validate();
}

Measure Measure::uniform() {
    return Measure({Rational(0), Rational(1)}, {Rational(1)});
}

void Measure::validate() const {
    if (breakpoints.size() < 2 || densities.size() + 1 != breakpoints.size())
        throw std::invalid_argument("measure: breakpoints/densities size mismatch");
    if (breakpoints.front() != 0 || breakpoints.back() != 1)
        throw std::invalid_argument("measure: breakpoints must start at 0 and end at 1");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i - 1] < breakpoints[i]))
            throw std::invalid_argument("measure: breakpoints must be strictly increasing");
    for (const auto& d : densities)
        if (d < 0) throw std::invalid_argument("measure: negative density");
    if (total_mass() != 1)
        throw std::invalid_argument("measure: total mass must be exactly 1");
}

Rational Measure::mass(const Rational& a, const Rational& b) const {
    if (a > b) throw std::invalid_argument("measure: interval with a > b");
    Rational total(0);
    for (std::size_t i = 0; i < densities.size(); ++i) {
        const Rational lo = std::max(a, breakpoints[i]);
        const Rational hi = std::min(b, breakpoints[i + 1]);
        if (lo < hi) total += densities[i] * (hi - lo);
    }
    return total;
}

Rational Measure::total_mass() const {
    Rational total(0);
    for (std::size_t i = 0; i < densities.size(); ++i)
        total += densities[i] * (breakpoints[i + 1] - breakpoints[i]);
    return total;
}

BeadString BeadString::from_string(const std::string& s) {
    std::vector<int> b;
    b.reserve(s.size());
    for (char c : s) {
        if (c < 'a' || c > 'z') throw std::invalid_argument("bead string: letters a..z only");
        b.push_back(c - 'a');
    }
    return BeadString(std::move(b));
}

std::string BeadString::to_letters() const {
    std::string s;
    for (int b : beads) s.push_back(static_cast<char>('a' + b));
    return s;
}

int BeadString::num_types() const {
    int t = 0;
    for (int b : beads) t = std::max(t, b + 1);
    return t;
}

std::vector<int> BeadString::multiplicities() const {
    std::vector<int> counts(num_types(), 0);
    for (int b : beads) counts[b]++;
    return counts;
}

void Necklace::validate() const {
    if (thieves < 2) throw std::invalid_argument("necklace: r >= 2 required");
    for (const auto& mu : measures) mu.validate();
}

Rational PartitionAllocation::piece_lo(int k) const {
    return k == 0 ? Rational(0) : cuts[static_cast<std::size_t>(k) - 1];
}

Rational PartitionAllocation::piece_hi(int k) const {
    return k == pieces() - 1 ? Rational(1) : cuts[static_cast<std::size_t>(k)];
}

std::vector<int> PartitionAllocation::degenerate_set() const {
    std::vector<int> b;
    for (int k = 0; k < pieces(); ++k)
        if (degenerate(k)) b.push_back(k);
    return b;
}

std::vector<int> PartitionAllocation::cardinality_profile(int r) const {
    std::vector<int> profile(r, 0);
    for (int k = 0; k < pieces(); ++k)
        if (!degenerate(k)) profile[allocation[static_cast<std::size_t>(k)]]++;
    return profile;
}

void PartitionAllocation::validate(int r) const {
    if (allocation.size() != cuts.size() + 1)
        throw std::invalid_argument("allocation: f must have one more entry than cuts");
    Rational prev(0);
    for (const auto& x : cuts) {
        if (x < 0 || x > 1) throw std::invalid_argument("allocation: cut outside [0,1]");
        if (x < prev) throw std::invalid_argument("allocation: cuts must be non-decreasing");
        prev = x;
    }
    for (int t : allocation)
        if (t < 0 || t >= r) throw std::invalid_argument("allocation: thief label out of range");
}

bool PartitionAllocation::equivalent_to(const PartitionAllocation& other) const {
    if (cuts != other.cuts || allocation.size() != other.allocation.size()) return false;
    for (int k = 0; k < pieces(); ++k)
        if (!degenerate(k) && allocation[k] != other.allocation[k]) return false;
    return true;
}

std::vector<Rational> evaluate_share(const Necklace& nk, const PartitionAllocation& pa,
                                     int thief) {
    pa.validate(nk.r());
    if (thief < 0 || thief >= nk.r()) throw std::invalid_argument("thief index out of range");
    std::vector<Rational> share(nk.measures.size(), Rational(0));
    for (int k = 0; k < pa.pieces(); ++k) {
        if (pa.allocation[k] != thief) continue;
        for (std::size_t i = 0; i < nk.measures.size(); ++i)
            share[i] += nk.measures[i].mass(pa.piece_lo(k), pa.piece_hi(k));
    }
    return share;
}

Rational fairness_residual(const Necklace& nk, const PartitionAllocation& pa) {
    const Rational target = Rational(1, nk.r());
    Rational worst(0);
    for (int t = 0; t < nk.r(); ++t) {
        for (const auto& s : evaluate_share(nk, pa, t)) {
            Rational dev = s - target;
            if (dev < 0) dev = -dev;
            worst = std::max(worst, dev);
        }
    }
    return worst;
}

std::pair<int, int> ks_parameters(int r, int n) {
    if (r < 2 || n < 1) throw std::invalid_argument("ks_parameters: r >= 2, n >= 1");
    const int total = (r - 1) * n + 1;
    return {total / r, total % r};
}

bool is_ks_equicardinal(const PartitionAllocation& pa, int r, int k, int s) {
    const auto profile = pa.cardinality_profile(r);
    int at_top = 0;
    for (int c : profile) {
        if (c > k + 1) return false;
        if (c == k + 1) at_top++;
    }
    return at_top <= s;
}

bool is_g_constraint(const PartitionAllocation& pa, const Graph& g) {
    for (int k = 0; k + 1 < pa.pieces(); ++k) {
        const int a = pa.allocation[k], b = pa.allocation[k + 1];
        if (a != b && !g.has_edge(a, b)) return false;
    }
    return true;
}

Necklace discrete_to_continuous(const BeadString& beads, int r) {
    if (beads.beads.empty()) throw std::invalid_argument("discrete_to_continuous: empty beads");
    const int L = static_cast<int>(beads.length());
    const auto counts = beads.multiplicities();
    Necklace nk;
    nk.thieves = r;
    nk.beads = beads;
    for (int type = 0; type < beads.num_types(); ++type) {
        std::vector<Rational> bp{Rational(0)};
        std::vector<Rational> dens;
        const Rational density = counts[type] > 0
                                     ? Rational(L, counts[type])
                                     : Rational(0);
        for (int cell = 0; cell < L; ++cell) {
            bp.push_back(Rational(cell + 1, L));
            dens.push_back(beads.beads[cell] == type ? density : Rational(0));
        }
        nk.measures.emplace_back(std::move(bp), std::move(dens));
    }
    return nk;
}

namespace {

// Rebuild a partition/allocation from a per-cell owner map.
PartitionAllocation pa_from_cell_owners(const std::vector<int>& owners, int L) {
    PartitionAllocation pa;
    pa.allocation.push_back(owners[0]);
    for (int c = 1; c < L; ++c) {
        if (owners[c] != owners[c - 1]) {
            pa.cuts.push_back(Rational(c, L));
            pa.allocation.push_back(owners[c]);
        }
    }
    return pa;
}

} // namespace

PartitionAllocation round_to_beads(const BeadString& beads, const PartitionAllocation& pa,
                                   int r) {
    const Necklace nk = discrete_to_continuous(beads, r);
    pa.validate(r);
    if (fairness_residual(nk, pa) != 0)
        throw std::invalid_argument("round_to_beads: input splitting is not exactly fair");

    const int L = static_cast<int>(beads.length());
    const auto mult = beads.multiplicities();
    const int types = static_cast<int>(mult.size());
    for (int c : mult)
        if (c % r != 0)
            throw std::invalid_argument("round_to_beads: multiplicities must be divisible by r");

    // Fractional ownership of each cell under pa.
    std::vector<std::map<int, Rational>> cell_frac(L); // cell -> thief -> fraction
    for (int k = 0; k < pa.pieces(); ++k) {
        const Rational lo = pa.piece_lo(k), hi = pa.piece_hi(k);
        if (lo == hi) continue;
        for (int c = 0; c < L; ++c) {
            const Rational clo(c, L), chi(c + 1, L);
            const Rational a = std::max(lo, clo), b = std::min(hi, chi);
            if (a < b) cell_frac[c][pa.allocation[k]] += (b - a) * L;
        }
    }

    // Whole cells keep their owner; split cells are reassigned to a thief with
    // a remaining deficit in that cell's type, preferring fragment owners so
    // the cut count cannot grow.
    std::vector<int> owner(L, -1);
    std::vector<std::vector<int>> deficit(r, std::vector<int>(types, 0));
    for (int t = 0; t < r; ++t)
        for (int type = 0; type < types; ++type) deficit[t][type] = mult[type] / r;
    std::vector<int> split_cells;
    for (int c = 0; c < L; ++c) {
        if (cell_frac[c].size() == 1 && cell_frac[c].begin()->second == 1) {
            owner[c] = cell_frac[c].begin()->first;
            deficit[owner[c]][beads.beads[c]]--;
        } else {
            split_cells.push_back(c);
        }
    }
    for (int c : split_cells) {
        const int type = beads.beads[c];
        int pick = -1;
        for (const auto& [t, frac] : cell_frac[c])
            if (deficit[t][type] > 0) { pick = t; break; }
        if (pick < 0)
            for (int t = 0; t < r && pick < 0; ++t)
                if (deficit[t][type] > 0) pick = t;
        if (pick < 0) throw std::logic_error("round_to_beads: deficit accounting failed");
        owner[c] = pick;
        deficit[pick][type]--;
    }

    PartitionAllocation rounded = pa_from_cell_owners(owner, L);
    if (fairness_residual(nk, rounded) != 0)
        throw std::logic_error("round_to_beads: rounding lost fairness");
    if (rounded.num_cuts() <= pa.num_cuts()) return rounded;

    // Greedy rounding increased the cut count; fall back to exhaustive search
    // over integer-cut splittings within the original cut budget.
    const int budget_cuts = pa.num_cuts();
    std::vector<int> best;
    std::vector<int> cur(L, -1);
    std::vector<std::vector<int>> need(r, std::vector<int>(types, 0));
    for (int t = 0; t < r; ++t)
        for (int type = 0; type < types; ++type) need[t][type] = mult[type] / r;
    std::function<bool(int, int, int)> dfs = [&](int pos, int cuts_used, int prev) -> bool {
        if (pos == L) {
            for (int t = 0; t < r; ++t)
                for (int type = 0; type < types; ++type)
                    if (need[t][type] != 0) return false;
            best = cur;
            return true;
        }
        const int type = beads.beads[pos];
        for (int t = 0; t < r; ++t) {
            if (need[t][type] <= 0) continue;
            const int nc = cuts_used + (prev >= 0 && prev != t ? 1 : 0);
            if (nc > budget_cuts) continue;
            cur[pos] = t;
            need[t][type]--;
            if (dfs(pos + 1, nc, t)) return true;
            need[t][type]++;
        }
        return false;
    };
    if (!dfs(0, 0, -1))
        throw std::logic_error("round_to_beads: no integer-cut fair splitting within budget");
    return pa_from_cell_owners(best, L);
}

bool is_prime_power(int r) {
    if (r < 2) return false;
    for (int p = 2; p * p <= r; ++p) {
        if (r % p == 0) {
            int q = r;
            while (q % p == 0) q /= p;
            return q == 1;
        }
    }
    return true; // prime
}

} // namespace fairdiv

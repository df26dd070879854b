#pragma once

#include "fairdiv/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fairdiv {

// Piecewise-constant probability density on [0,1].
// breakpoints: 0 = b_0 < b_1 < ... < b_k = 1; densities[i] on [b_i, b_{i+1}].
struct Measure {
    std::vector<Rational> breakpoints;
    std::vector<Rational> densities;

    Measure() = default;
    Measure(std::vector<Rational> bp, std::vector<Rational> dens);

    static Measure uniform();

    // Exact mass of [a, b] with 0 <= a <= b <= 1.
    Rational mass(const Rational& a, const Rational& b) const;

    Rational total_mass() const;
    void validate() const;
};

// Finite sequence over a type alphabet; type ids are 0-based.
struct BeadString {
    std::vector<int> beads;

    BeadString() = default;
    explicit BeadString(std::vector<int> b) : beads(std::move(b)) {}
    // Letters a..z map to types 0..25.
    static BeadString from_string(const std::string& s);
    std::string to_letters() const;

    std::size_t length() const { return beads.size(); }
    int num_types() const;
    std::vector<int> multiplicities() const;
};

struct Necklace {
    std::vector<Measure> measures;
    std::optional<BeadString> beads;
    int thieves = 2;

    int r() const { return thieves; }
    int n() const { return static_cast<int>(measures.size()); }
    void validate() const;
};

// Cut vector x_1 <= ... <= x_N plus allocation f : [m] -> [r], m = N + 1.
// Thief labels are 0-based internally.
struct PartitionAllocation {
    std::vector<Rational> cuts;
    std::vector<int> allocation;

    int pieces() const { return static_cast<int>(allocation.size()); }
    int num_cuts() const { return static_cast<int>(cuts.size()); }

    Rational piece_lo(int k) const; // k in [0, m)
    Rational piece_hi(int k) const;
    bool degenerate(int k) const { return piece_lo(k) == piece_hi(k); }

    // Indices of degenerate pieces (B_x).
    std::vector<int> degenerate_set() const;
    // Per-thief count of non-degenerate pieces.
    std::vector<int> cardinality_profile(int r) const;

    void validate(int r) const;

    // Equality up to reallocation of degenerate pieces.
    bool equivalent_to(const PartitionAllocation& other) const;
};

struct Graph; // complexes.hpp

struct SplitReport {
    PartitionAllocation pa;
    Rational fairness_residual;
    std::vector<int> cardinality_profile;
    bool equicardinal_ok = false;
    bool g_constraint_ok = false;
    bool complex_member_ok = false;
    bool theorem_covered = true; // false when r is not a prime power
};

// ---- operations -----------------------------------------------------------

// Exact share vector (one entry per measure) of one thief.
std::vector<Rational> evaluate_share(const Necklace& nk, const PartitionAllocation& pa,
                                     int thief);

// max_{thief, measure} |share - 1/r|; zero iff the splitting is fair.
Rational fairness_residual(const Necklace& nk, const PartitionAllocation& pa);

// (k, s) with kr + s = (r-1)n + 1, 0 <= s < r.
std::pair<int, int> ks_parameters(int r, int n);

// Every thief holds <= k+1 non-degenerate pieces; at most s hold exactly k+1.
bool is_ks_equicardinal(const PartitionAllocation& pa, int r, int k, int s);

// Consecutive pieces (degenerate included) go to equal or adjacent thieves.
bool is_g_constraint(const PartitionAllocation& pa, const Graph& g);

// Embed a bead string as one uniform measure per type on its occupied cells.
Necklace discrete_to_continuous(const BeadString& beads, int r);

// Round an exactly fair continuous splitting of discrete_to_continuous(beads)
// to integer cell boundaries, preserving fairness and not increasing cuts.
PartitionAllocation round_to_beads(const BeadString& beads, const PartitionAllocation& pa,
                                   int r);

bool is_prime_power(int r);

} // namespace fairdiv

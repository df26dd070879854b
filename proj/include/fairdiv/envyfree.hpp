#pragma once

#include "fairdiv/complexes.hpp"
#include "fairdiv/necklace.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fairdiv {

// Piecewise-constant signed measure (preferences only; no positivity).
struct SignedMeasure {
    std::vector<Rational> breakpoints; // 0 = b_0 < ... < b_k = 1
    std::vector<Rational> densities;   // may be negative

    Rational mass(const Rational& a, const Rational& b) const;
    double mass(double a, double b) const;
    void validate() const;
};

struct Interval {
    double lo = 0.0, hi = 0.0;
    double length() const { return hi - lo; }
};

// What the thieves see after a partition/preallocation: the non-degenerate
// intervals in each safe.
struct AdmissibleFamily {
    std::vector<std::vector<Interval>> safes; // size r, intervals ordered left to right
    int r() const { return static_cast<int>(safes.size()); }
};

// One player's preference: a margin per safe whose non-negativity is membership.
struct PreferenceOracle {
    std::string name;
    std::function<std::vector<double>(const AdmissibleFamily&)> margins;
};

struct PreferenceMatrix {
    std::vector<PreferenceOracle> rows; // one per player j
    int r() const { return static_cast<int>(rows.size()); }
};

// A point of the primary configuration space: cuts plus owner per piece.
struct ConfigPoint {
    std::vector<double> cuts; // size m-1, non-decreasing in [0,1]
    std::vector<int> owner;   // size m, values in [0, r)

    int pieces() const { return static_cast<int>(owner.size()); }
    double piece_lo(int k) const { return k == 0 ? 0.0 : cuts[k - 1]; }
    double piece_hi(int k) const {
        return k + 1 == pieces() ? 1.0 : cuts[k];
    }
};

AdmissibleFamily family_of(const ConfigPoint& pt, int r);

struct ScoreMatrix {
    std::vector<std::vector<double>> f; // f[j][i], rows sum to 1
};

struct SolverConfig {
    double epsilon = 1e-6;
    int grid = 64;
    int restarts = 64;
    std::uint64_t seed = 0;
    double delta = 1e-3; // initial enlargement; halved across restart blocks
    double time_limit_sec = 120.0;
};

struct EnvyFreeSolution {
    ConfigPoint point;
    std::vector<int> assignment;  // pi : player j -> safe pi[j]
    std::vector<double> margins;  // raw margin of each player's assigned safe
    double residual = 1.0;
    double delta = 0.0; // final enlargement used
    bool reached = false;
    bool theorem_covered = true; // false when r is not a prime power
};

// ---- built-in preferences --------------------------------------------------

// Prefer safe i iff nu(V_i) >= nu(V_i') for all i'.
PreferenceOracle measure_preference(const SignedMeasure& nu);
// Prefer safes holding at most q non-degenerate pieces.
PreferenceOracle fewest_pieces_preference(int q);
// Prefer safes whose content contains the point t.
PreferenceOracle contains_point_preference(double t);
// Prefer safes holding an interval of length >= L; if prefer_empty, an empty
// safe is preferred whenever no safe qualifies.
PreferenceOracle length_threshold_preference(double L, bool prefer_empty);
// Prefer the safe(s) holding the longest interval.
PreferenceOracle longest_piece_preference();

// ---- test map machinery ----------------------------------------------------

// Scores: per player, a partition of unity subordinate to the delta-enlarged
// preferences (weights max(0, margin + delta), normalized).
ScoreMatrix build_scores(const AdmissibleFamily& fam, const PreferenceMatrix& prefs,
                         double delta);

// Max-norm residual of the paired test map: share deviations from 1/r per
// measure, and deviations of the averaged score vector F from 1/r.
double test_map(const ConfigPoint& pt, const Necklace& nk, const PreferenceMatrix& prefs,
                double delta, ScoreMatrix* scores_out = nullptr);

// Permutation pi with M[j][pi(j)] > tol, via bipartite matching on the
// thresholded support. Throws with a violating Hall set if none exists.
std::vector<int> birkhoff_permutation(const std::vector<std::vector<double>>& M, double tol);

// Sampled checks.
bool check_proper(const PreferenceMatrix& prefs, int r, int m, int samples, std::uint64_t seed);
bool check_equivariant(const PreferenceMatrix& prefs, int r, int m, int samples,
                       std::uint64_t seed);

// ---- solvers ----------------------------------------------------------------

EnvyFreeSolution solve_envy_free(const Necklace& nk, const PreferenceMatrix& prefs,
                                 const SolverConfig& config = {});

EnvyFreeSolution solve_envy_free_equicardinal(const Necklace& nk, const PreferenceMatrix& prefs,
                                              const SolverConfig& config = {});

EnvyFreeSolution solve_envy_free_binary(const Necklace& nk, const PreferenceMatrix& prefs, int d,
                                        const SolverConfig& config = {});

// ---- reduction of Avvakumov-Karasev type preferences ------------------------

// Preference over the canonical pieces of a partition of [0,1] into
// non-degenerate intervals: margins[i] for i < pieces.size() refers to the
// i-th interval; margins[i] for i >= pieces.size() refers to an empty share.
struct CutOracle {
    std::string name;
    int r = 2;
    std::function<std::vector<double>(const std::vector<Interval>& pieces)> margins; // size r
};

// Equal cut multisets after dropping 0 and 1.
bool partition_equivalent(const std::vector<double>& x, const std::vector<double>& x2);

using CutSetOracle = std::function<bool(const std::vector<double>& cuts)>;

struct BalanceCheck {
    bool balanced = true;
    std::vector<double> witness_x, witness_x2; // populated on failure
};

// Randomized check that X is a function of the induced non-degenerate partition.
BalanceCheck is_partition_balanced(const CutSetOracle& X, int r, int samples,
                                   std::uint64_t seed);

// The constructive reduction onto the chessboard Delta_{2r-1,r}: preferred
// non-degenerate pieces map to their safes, a preferred empty share maps to
// every empty safe.
PreferenceMatrix ak_reduce(const std::vector<CutOracle>& prefs, int r);

struct AkSolution {
    std::vector<Interval> pieces;       // non-degenerate partition of [0,1]
    std::vector<int> share_piece;       // player j -> piece index, or -1 for empty share
    std::vector<double> margins;        // raw-oracle margin of each player's share
    double residual = 1.0;
    bool reached = false;
};

AkSolution solve_ak(const std::vector<CutOracle>& prefs, int r, const SolverConfig& config = {});

} // namespace fairdiv

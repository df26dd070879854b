// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "fairdiv/envyfree.hpp"
#include "fairdiv/homology.hpp"
#include "fairdiv/splitter.hpp"

using namespace fairdiv;

namespace {

int failures = 0;

void verdict(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++failures;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double sec() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

int prime_of(int r) {
    for (int p = 2; p <= r; ++p)
        if (r % p == 0) return p;
    return r;
}

// ---- criterion 1: connectivity of the skeleta-family configuration spaces ----

std::vector<SimplicialComplex> symm_gallery;
std::vector<int> symm_gallery_m;

void criterion1() {
    Timer t;
    bool pass = true;
    std::ostringstream detail;
    for (const auto [r, n] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}, {4, 1}}) {
        Timer per;
        const int m = (r - 1) * (n + 1) + 1;
        const auto family = equicardinal_skeleta_family(r, n);
        const auto K = symm_deleted_join(family, m);
        symm_gallery.push_back(K);
        symm_gallery_m.push_back(m);
        const auto cert = connectivity_certificate(K, m - r - 1, prime_of(r));
        if (!cert.pass || per.sec() > 10.0) pass = false;
        detail << "(r=" << r << ",n=" << n << " claim=" << m - r - 1 << " "
               << (cert.pass ? "ok" : "FAIL") << " " << per.sec() << "s) ";
    }
    verdict(1, pass, detail.str() + "total " + std::to_string(t.sec()) + "s");
}

// ---- criterion 2: chessboard checkpoints ------------------------------------

void criterion2() {
    Timer t;
    const auto b32 = betti_profile(chessboard(3, 2), 2);
    const bool ok32 = b32.reduced_betti == std::vector<long long>{0, 1};
    const auto b53 = betti_profile(chessboard(5, 3), 3);
    const bool ok53 = connectivity_certificate(chessboard(5, 3), 0, 3).pass &&
                      b53.reduced_betti.size() > 1 && b53.reduced_betti[1] == 0;
    const bool ok74 = connectivity_certificate(chessboard(7, 4), 2, 2).pass;
    std::ostringstream detail;
    detail << "D(3,2) betti=(0,1):" << (ok32 ? "ok" : "FAIL")
           << " D(5,3) claim0,b1=0:" << (ok53 ? "ok" : "FAIL")
           << " D(7,4) claim2:" << (ok74 ? "ok" : "FAIL") << " " << t.sec() << "s";
    verdict(2, ok32 && ok53 && ok74 && t.sec() < 60.0, detail.str());
}

// ---- criterion 3: G-constraint complexes -------------------------------------

void criterion3() {
    Timer t;
    bool pass = true;
    std::ostringstream detail;
    for (int d = 1; d <= 3; ++d) {
        const Graph g = Graph::cube(d);
        const int max_m = d == 3 ? 4 : 5; // capacity: C^3 at m=5 exceeds the time budget
        for (int m = 2; m <= max_m; ++m) {
            const auto K = g_constraint_complex(g, m);
            const bool facets_ok =
                static_cast<long long>(K.facets.size()) == count_g_walks(g, m);
            const bool conn_ok = connectivity_certificate(K, m - 2, 2).pass;
            if (!facets_ok || !conn_ok) {
                pass = false;
                detail << "(C^" << d << ",m=" << m << " FAIL) ";
            }
        }
    }
    detail << t.sec() << "s";
    verdict(3, pass && t.sec() < 60.0, detail.str());
}

// ---- criterion 4: collective unavoidability ----------------------------------

void criterion4() {
    Timer t;
    bool pass = true;
    int cases = 0;
    std::ostringstream detail;
    for (int r : {2, 3, 4}) {
        for (int n = 1; n <= 3; ++n) {
            const int m = (r - 1) * (n + 1) + 1;
            if (std::pow(r + 1.0, m) > 1e8) continue;
            const auto family = equicardinal_skeleta_family(r, n);
            const bool enumerated = is_collectively_unavoidable(family, m);
            const auto [k, s] = ks_parameters(r, n);
            std::vector<int> caps;
            for (int i = 0; i < r; ++i) caps.push_back(i < s ? k + 1 : k);
            const bool symbolic = skeleta_family_unavoidable_symbolic(caps, m);
            ++cases;
            if (!enumerated || symbolic != enumerated) {
                pass = false;
                detail << "(r=" << r << ",n=" << n << " FAIL) ";
            }
        }
    }
    detail << cases << " cases, " << t.sec() << "s";
    verdict(4, pass && cases >= 8, detail.str());
}

// ---- criterion 5: discrete solver vs oracle ----------------------------------

BeadString random_instance(std::mt19937_64& rng, int r, int max_beads) {
    const int n = 1 + static_cast<int>(rng() % 3);
    std::vector<int> beads;
    for (int type = 0; type < n; ++type) {
        const int max_mult = std::max(1, max_beads / (n * r));
        const int copies = r * (1 + static_cast<int>(rng() % max_mult));
        for (int c = 0; c < copies; ++c) beads.push_back(type);
    }
    std::shuffle(beads.begin(), beads.end(), rng);
    if (beads.size() > static_cast<std::size_t>(max_beads)) beads.resize(max_beads);
    return BeadString(std::move(beads));
}

double binom(int n, int k) {
    double v = 1;
    for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
    return v;
}

bool oracle_feasible_check(const BeadString& beads, int r, int max_cuts,
                           const ConstraintSpec& constraint, bool found) {
    const int L = static_cast<int>(beads.length());
    double capacity = 0;
    for (int k = 0; k <= max_cuts; ++k)
        capacity += binom(L - 1, k) * std::pow(static_cast<double>(r), k + 1);
    if (capacity > 2e6) return true; // oracle too expensive; skip cross-check
    const auto all = brute_force_oracle(beads, r, max_cuts, constraint);
    return found == !all.empty();
}

void criterion5() {
    Timer t;
    std::mt19937_64 rng(12345);
    int total = 0, fair_fail = 0, equi_fail = 0, graph_fail = 0, oracle_fail = 0;

    for (int trial = 0; trial < 320; ++trial) {
        const int r = 2 + static_cast<int>(rng() % 3);
        const auto beads = random_instance(rng, r, 16);
        const int n = beads.num_types();
        const int max_cuts = (r - 1) * n;
        const auto out = solve_fair(beads, r);
        ++total;
        const bool found = out.found() && out.report->fairness_residual == Rational(0) &&
                           out.report->pa.num_cuts() <= max_cuts &&
                           validate_report(beads, r, *out.report, {}, max_cuts);
        if (!found) ++fair_fail;
        if (!oracle_feasible_check(beads, r, max_cuts, {}, out.found())) ++oracle_fail;
    }

    for (int trial = 0; trial < 120; ++trial) {
        const int r = 2 + static_cast<int>(rng() % 3);
        const auto beads = random_instance(rng, r, 16);
        const auto [k, s] = ks_parameters(r, beads.num_types());
        const auto out = solve_equicardinal(beads, r);
        ++total;
        const int max_cuts = (r - 1) * beads.num_types();
        const ConstraintSpec c = EquicardinalConstraint{k, s};
        if (!out.found() || !is_ks_equicardinal(out.report->pa, r, k, s) ||
            !validate_report(beads, r, *out.report, c, max_cuts))
            ++equi_fail;
        if (!oracle_feasible_check(beads, r, max_cuts, c, out.found())) ++oracle_fail;
    }

    const Graph square = Graph::cube(2);
    for (int trial = 0; trial < 80; ++trial) {
        const auto beads = random_instance(rng, 4, 16);
        const auto out = solve_g_constraint(beads, 4, square);
        ++total;
        const int max_cuts = 3 * beads.num_types();
        const ConstraintSpec c = GraphConstraint{square};
        if (!out.found() || !is_g_constraint(out.report->pa, square) ||
            !validate_report(beads, 4, *out.report, c, max_cuts))
            ++graph_fail;
        if (!oracle_feasible_check(beads, 4, max_cuts, c, out.found())) ++oracle_fail;
    }

    std::ostringstream detail;
    detail << total << " instances, fair_fail=" << fair_fail << " equi_fail=" << equi_fail
           << " graph_fail=" << graph_fail << " oracle_mismatch=" << oracle_fail << " "
           << t.sec() << "s";
    verdict(5,
            total >= 500 && fair_fail == 0 && equi_fail == 0 && graph_fail == 0 &&
                oracle_fail == 0 && t.sec() < 300.0,
            detail.str());
}

// ---- criterion 6 and 7: envy-free reduction sanity ----------------------------

Measure random_measure(std::mt19937_64& rng) {
    // four equal segments with random positive rational densities, normalized
    std::vector<Rational> weights;
    Rational total(0);
    for (int i = 0; i < 4; ++i) {
        weights.push_back(Rational(1 + static_cast<int>(rng() % 8)));
        total += weights.back();
    }
    std::vector<Rational> bp{Rational(0)}, dens;
    for (int i = 0; i < 4; ++i) {
        bp.push_back(Rational(i + 1, 4));
        dens.push_back(weights[i] * 4 / total);
    }
    return Measure(bp, dens);
}

void criterion6() {
    Timer t;
    std::mt19937_64 rng(777);
    int runs = 0, reached = 0, share_fail = 0, cut_fail = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int r = 2 + static_cast<int>(rng() % 2);
        const int n = 1 + static_cast<int>(rng() % 2);
        Necklace nk;
        nk.thieves = r;
        for (int i = 0; i < n; ++i) nk.measures.push_back(random_measure(rng));
        const Measure nu = random_measure(rng);
        SignedMeasure pref;
        pref.breakpoints = nu.breakpoints;
        pref.densities = nu.densities;
        PreferenceMatrix prefs;
        prefs.rows.assign(r, measure_preference(pref));

        SolverConfig cfg;
        cfg.seed = trial + 1;
        cfg.restarts = 48;
        cfg.time_limit_sec = 20;
        const auto sol = solve_envy_free(nk, prefs, cfg);
        ++runs;
        if (sol.point.cuts.size() != static_cast<std::size_t>((r - 1) * (n + 1))) ++cut_fail;
        if (!sol.reached) continue;
        ++reached;
        // all n+1 measure shares within epsilon of 1/r
        bool ok = true;
        for (int thief = 0; thief < r; ++thief) {
            double nu_share = 0.0;
            const auto fam = family_of(sol.point, r);
            for (const auto& iv : fam.safes[thief]) nu_share += pref.mass(iv.lo, iv.hi);
            if (std::fabs(nu_share - 1.0 / r) > 1e-6) ok = false;
        }
        const double residual = test_map(sol.point, nk, prefs, sol.delta);
        if (residual > 1e-6) ok = false;
        if (!ok) ++share_fail;
    }
    std::ostringstream detail;
    detail << runs << " runs, reached=" << reached << " share_fail=" << share_fail
           << " cut_fail=" << cut_fail << " " << t.sec() << "s";
    verdict(6,
            runs == 50 && reached >= 48 && share_fail == 0 && cut_fail == 0 && t.sec() < 300.0,
            detail.str());
}

void criterion7() {
    Timer t;
    int runs = 0, reached = 0, violations = 0;
    for (const auto [r, n, q] : std::vector<std::array<int, 3>>{
             {2, 1, 2}, {2, 2, 2}, {3, 1, 2}, {3, 2, 3}}) {
        for (int seed = 1; seed <= 4; ++seed) {
            Necklace nk;
            nk.thieves = r;
            std::mt19937_64 rng(seed * 100 + r * 10 + n);
            for (int i = 0; i < n; ++i) nk.measures.push_back(random_measure(rng));
            PreferenceMatrix prefs;
            prefs.rows.assign(r, fewest_pieces_preference(q));
            SolverConfig cfg;
            cfg.seed = seed;
            cfg.restarts = 48;
            cfg.time_limit_sec = 20;
            const auto sol = solve_envy_free(nk, prefs, cfg);
            ++runs;
            if (!sol.reached) continue;
            ++reached;
            const auto fam = family_of(sol.point, r);
            for (int j = 0; j < r; ++j)
                if (static_cast<int>(fam.safes[sol.assignment[j]].size()) > q) ++violations;
        }
    }
    std::ostringstream detail;
    detail << runs << " runs, reached=" << reached << " piece-count violations=" << violations
           << " " << t.sec() << "s";
    verdict(7, reached > 0 && violations == 0, detail.str());
}

// ---- criterion 8: the AK suite ------------------------------------------------

CutOracle contains_oracle(int r, double t) {
    CutOracle o;
    o.r = r;
    o.name = "contains";
    o.margins = [r, t](const std::vector<Interval>& pieces) {
        std::vector<double> m(r, -1.0);
        for (std::size_t i = 0; i < pieces.size() && i < static_cast<std::size_t>(r); ++i)
            m[i] = std::min(t - pieces[i].lo, pieces[i].hi - t);
        return m;
    };
    return o;
}

CutOracle contains_or_empty_oracle(int r, double t) {
    CutOracle o;
    o.r = r;
    o.name = "contains-or-empty";
    o.margins = [r, t](const std::vector<Interval>& pieces) {
        std::vector<double> m(r, 0.0);
        for (std::size_t i = 0; i < pieces.size() && i < static_cast<std::size_t>(r); ++i)
            m[i] = std::min(t - pieces[i].lo, pieces[i].hi - t);
        return m;
    };
    return o;
}

CutOracle longest_oracle(int r) {
    CutOracle o;
    o.r = r;
    o.name = "longest";
    o.margins = [r](const std::vector<Interval>& pieces) {
        double best = 0.0;
        for (const auto& p : pieces) best = std::max(best, p.length());
        std::vector<double> m(r, -best);
        for (std::size_t i = 0; i < pieces.size() && i < static_cast<std::size_t>(r); ++i)
            m[i] = pieces[i].length() - best;
        return m;
    };
    return o;
}

void criterion8() {
    Timer t;
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> uni(0.15, 0.85);
    int profiles = 0, solved = 0, margin_fail = 0;
    for (int r : {2, 3}) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<CutOracle> oracles;
            const int kind = trial % 3;
            if (kind == 0) {
                // distinct target points, one per player
                std::set<int> grid;
                while (static_cast<int>(grid.size()) < r)
                    grid.insert(1 + static_cast<int>(rng() % 18));
                for (int g : grid) oracles.push_back(contains_oracle(r, g / 20.0));
            } else if (kind == 1) {
                for (int j = 0; j < r; ++j) oracles.push_back(longest_oracle(r));
            } else {
                const double tt = uni(rng);
                for (int j = 0; j < r; ++j) oracles.push_back(contains_or_empty_oracle(r, tt));
            }
            SolverConfig cfg;
            cfg.seed = trial + 1;
            cfg.restarts = 64;
            cfg.time_limit_sec = 20;
            const auto sol = solve_ak(oracles, r, cfg);
            ++profiles;
            if (!sol.reached) continue;
            ++solved;
            for (double margin : sol.margins)
                if (margin < -1e-4) ++margin_fail;
        }
    }

    // well-definedness fuzz of the reduction
    int fuzz_violations = 0;
    const int r = 3;
    const auto prefs = ak_reduce(
        {contains_oracle(r, 0.3), contains_or_empty_oracle(r, 0.6), longest_oracle(r)}, r);
    std::uniform_real_distribution<double> cutpos(0.02, 0.98);
    for (int pair = 0; pair < 1200; ++pair) {
        const int interior = static_cast<int>(rng() % r); // 0..r-1 interior cuts
        std::set<double> zs;
        while (static_cast<int>(zs.size()) < interior) zs.insert(cutpos(rng));
        const std::vector<double> z(zs.begin(), zs.end());
        const int m = 2 * r - 1;
        auto representative = [&]() {
            ConfigPoint pt;
            pt.cuts = z;
            while (static_cast<int>(pt.cuts.size()) < m - 1) {
                const int mode = z.empty() ? static_cast<int>(rng() % 2)
                                           : static_cast<int>(rng() % 3);
                if (mode == 0)
                    pt.cuts.push_back(0.0);
                else if (mode == 1)
                    pt.cuts.push_back(1.0);
                else
                    pt.cuts.push_back(z[rng() % z.size()]);
            }
            std::sort(pt.cuts.begin(), pt.cuts.end());
            // distinct random safes for the non-degenerate pieces
            std::vector<int> safes(r);
            for (int i = 0; i < r; ++i) safes[i] = i;
            std::shuffle(safes.begin(), safes.end(), rng);
            pt.owner.assign(m, 0);
            int next = 0;
            for (int kk = 0; kk < m; ++kk) {
                if (pt.piece_hi(kk) - pt.piece_lo(kk) > 1e-12)
                    pt.owner[kk] = safes[next++];
                else
                    pt.owner[kk] = static_cast<int>(rng() % r);
            }
            return pt;
        };
        const auto a = representative();
        const auto b = representative();
        const auto fa = family_of(a, r);
        const auto fb = family_of(b, r);
        for (const auto& row : prefs.rows) {
            const auto ma = row.margins(fa);
            const auto mb = row.margins(fb);
            std::multiset<long long> pa, pb;
            for (int i = 0; i < r; ++i) {
                if (ma[i] >= 0)
                    pa.insert(fa.safes[i].empty()
                                  ? -1
                                  : static_cast<long long>(fa.safes[i][0].lo * 1e9));
                if (mb[i] >= 0)
                    pb.insert(fb.safes[i].empty()
                                  ? -1
                                  : static_cast<long long>(fb.safes[i][0].lo * 1e9));
            }
            if (pa != pb) ++fuzz_violations;
        }
    }

    std::ostringstream detail;
    detail << profiles << " profiles, solved=" << solved << " margin_fail=" << margin_fail
           << " fuzz_pairs=1200 fuzz_violations=" << fuzz_violations << " " << t.sec() << "s";
    verdict(8, profiles == 20 && solved == 20 && margin_fail == 0 && fuzz_violations == 0,
            detail.str());
}

// ---- criterion 9: structural invariants ---------------------------------------

void criterion9() {
    Timer t;
    bool dim_ok = true, euler_ok = true;
    // Lemma-style dimension identity on every face of every symmetrized join
    for (std::size_t g = 0; g < symm_gallery.size(); ++g) {
        const auto& K = symm_gallery[g];
        const int m = symm_gallery_m[g];
        const int r = K.num_vertices() / m;
        for (const auto& faces : K.all_faces()) {
            for (const auto& face : faces) {
                if (face.empty()) continue;
                const auto labeled = face_to_labeled(face, r, m);
                if (simplex_dimension(labeled) != static_cast<int>(face.size()) - 1 ||
                    simplex_dimension(labeled) !=
                        labeled.m - static_cast<int>(labeled.complement().size()) - 1)
                    dim_ok = false;
            }
        }
    }

    // boundary composition is checked inside betti_profile (throws on failure)
    std::vector<SimplicialComplex> gallery = symm_gallery;
    gallery.push_back(chessboard(4, 3));
    gallery.push_back(g_constraint_complex(Graph::cube(2), 3));
    gallery.push_back(bounded_subsets_complex(5, 3));
    bool dd_ok = true;
    for (const auto& K : gallery) {
        try {
            const auto profile = betti_profile(K, 2);
            if (profile.alternating_sum() != K.reduced_euler()) euler_ok = false;
        } catch (const std::exception&) {
            dd_ok = false;
        }
    }

    std::ostringstream detail;
    detail << "dimension identity:" << (dim_ok ? "ok" : "FAIL")
           << " boundary^2=0:" << (dd_ok ? "ok" : "FAIL")
           << " euler:" << (euler_ok ? "ok" : "FAIL") << " " << t.sec() << "s";
    verdict(9, dim_ok && dd_ok && euler_ok, detail.str());
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}

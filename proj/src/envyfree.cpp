#include "fairdiv/envyfree.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fairdiv {

namespace {

constexpr double kDegenerate = 1e-12;

struct DoubleMeasure {
    std::vector<double> bp, dens;

    double mass(double a, double b) const {
        double total = 0.0;
        for (std::size_t i = 0; i < dens.size(); ++i) {
            const double lo = std::max(a, bp[i]);
            const double hi = std::min(b, bp[i + 1]);
            if (lo < hi) total += dens[i] * (hi - lo);
        }
        return total;
    }
};

DoubleMeasure lower(const Measure& mu) {
    DoubleMeasure d;
    for (const auto& b : mu.breakpoints) d.bp.push_back(to_double(b));
    for (const auto& v : mu.densities) d.dens.push_back(to_double(v));
    return d;
}

DoubleMeasure lower(const SignedMeasure& nu) {
    DoubleMeasure d;
    for (const auto& b : nu.breakpoints) d.bp.push_back(to_double(b));
    for (const auto& v : nu.densities) d.dens.push_back(to_double(v));
    return d;
}

} // namespace

Rational SignedMeasure::mass(const Rational& a, const Rational& b) const {
    Rational total(0);
    for (std::size_t i = 0; i < densities.size(); ++i) {
        const Rational lo = std::max(a, breakpoints[i]);
        const Rational hi = std::min(b, breakpoints[i + 1]);
        if (lo < hi) total += densities[i] * (hi - lo);
    }
    return total;
}

double SignedMeasure::mass(double a, double b) const {
    return lower(*this).mass(a, b);
}

void SignedMeasure::validate() const {
    if (breakpoints.size() < 2 || densities.size() + 1 != breakpoints.size())
        throw std::invalid_argument("signed measure: size mismatch");
    if (breakpoints.front() != 0 || breakpoints.back() != 1)
        throw std::invalid_argument("signed measure: breakpoints must span [0,1]");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i - 1] < breakpoints[i]))
            throw std::invalid_argument("signed measure: breakpoints must increase");
}

AdmissibleFamily family_of(const ConfigPoint& pt, int r) {
    AdmissibleFamily fam;
    fam.safes.resize(r);
    for (int k = 0; k < pt.pieces(); ++k) {
        const double lo = pt.piece_lo(k), hi = pt.piece_hi(k);
        if (hi - lo > kDegenerate) fam.safes[pt.owner[k]].push_back({lo, hi});
    }
    return fam;
}

// ---- built-in preferences ----------------------------------------------------

PreferenceOracle measure_preference(const SignedMeasure& nu) {
    const DoubleMeasure d = lower(nu);
    PreferenceOracle o;
    o.name = "measure";
    o.margins = [d](const AdmissibleFamily& fam) {
        const int r = fam.r();
        std::vector<double> value(r, 0.0);
        for (int i = 0; i < r; ++i)
            for (const auto& iv : fam.safes[i]) value[i] += d.mass(iv.lo, iv.hi);
        std::vector<double> margins(r);
        for (int i = 0; i < r; ++i) {
            double rival = -std::numeric_limits<double>::infinity();
            for (int k = 0; k < r; ++k)
                if (k != i) rival = std::max(rival, value[k]);
            margins[i] = r == 1 ? 0.0 : value[i] - rival;
        }
        return margins;
    };
    return o;
}

PreferenceOracle fewest_pieces_preference(int q) {
    if (q < 1) throw std::invalid_argument("fewest_pieces_preference: q >= 1");
    PreferenceOracle o;
    o.name = "fewest:" + std::to_string(q);
    o.margins = [q](const AdmissibleFamily& fam) {
        std::vector<double> margins;
        for (const auto& safe : fam.safes)
            margins.push_back(static_cast<double>(q) - static_cast<double>(safe.size()));
        return margins;
    };
    return o;
}

PreferenceOracle contains_point_preference(double t) {
    PreferenceOracle o;
    o.name = "contains:" + std::to_string(t);
    o.margins = [t](const AdmissibleFamily& fam) {
        std::vector<double> margins;
        for (const auto& safe : fam.safes) {
            double best = -1.0;
            for (const auto& iv : safe) best = std::max(best, std::min(t - iv.lo, iv.hi - t));
            margins.push_back(best);
        }
        return margins;
    };
    return o;
}

PreferenceOracle length_threshold_preference(double L, bool prefer_empty) {
    PreferenceOracle o;
    o.name = "length:" + std::to_string(L);
    o.margins = [L, prefer_empty](const AdmissibleFamily& fam) {
        double global_best = 0.0;
        for (const auto& safe : fam.safes)
            for (const auto& iv : safe) global_best = std::max(global_best, iv.length());
        std::vector<double> margins;
        for (const auto& safe : fam.safes) {
            if (safe.empty()) {
                margins.push_back(prefer_empty ? L - global_best : -L);
                continue;
            }
            double best = 0.0;
            for (const auto& iv : safe) best = std::max(best, iv.length());
            margins.push_back(best - L);
        }
        return margins;
    };
    return o;
}

PreferenceOracle longest_piece_preference() {
    PreferenceOracle o;
    o.name = "longest";
    o.margins = [](const AdmissibleFamily& fam) {
        const int r = fam.r();
        std::vector<double> len(r, 0.0);
        for (int i = 0; i < r; ++i)
            for (const auto& iv : fam.safes[i]) len[i] = std::max(len[i], iv.length());
        std::vector<double> margins(r);
        for (int i = 0; i < r; ++i) {
            double rival = 0.0;
            for (int k = 0; k < r; ++k)
                if (k != i) rival = std::max(rival, len[k]);
            margins[i] = len[i] - rival;
        }
        return margins;
    };
    return o;
}

// ---- test map ----------------------------------------------------------------

ScoreMatrix build_scores(const AdmissibleFamily& fam, const PreferenceMatrix& prefs,
                         double delta) {
    const int r = prefs.r();
    ScoreMatrix scores;
    scores.f.assign(r, std::vector<double>(r, 0.0));
    for (int j = 0; j < r; ++j) {
        const auto margins = prefs.rows[j].margins(fam);
        double sum = 0.0;
        for (int i = 0; i < r; ++i) {
            scores.f[j][i] = std::max(0.0, margins[i] + delta);
            sum += scores.f[j][i];
        }
        if (sum <= 0.0) {
            // properness violated at this point; fall back to the uniform row
            for (int i = 0; i < r; ++i) scores.f[j][i] = 1.0 / r;
        } else {
            for (int i = 0; i < r; ++i) scores.f[j][i] /= sum;
        }
    }
    return scores;
}

namespace {

struct Evaluator {
    int r = 2;
    std::vector<DoubleMeasure> measures;
    const PreferenceMatrix* prefs = nullptr;
    double delta = 1e-3;

    double share(const ConfigPoint& pt, int thief, int kappa) const {
        double total = 0.0;
        for (int k = 0; k < pt.pieces(); ++k)
            if (pt.owner[k] == thief) total += measures[kappa].mass(pt.piece_lo(k), pt.piece_hi(k));
        return total;
    }

    // Max-norm residual plus a smooth secondary value (sum of squares of the
    // same terms) used to break ties on max-norm plateaus.
    std::pair<double, double> evaluate(const ConfigPoint& pt, ScoreMatrix* out = nullptr) const {
        const double target = 1.0 / r;
        double worst = 0.0, sq = 0.0;
        auto account = [&](double dev) {
            worst = std::max(worst, std::fabs(dev));
            sq += dev * dev;
        };
        for (std::size_t kappa = 0; kappa < measures.size(); ++kappa)
            for (int t = 0; t < r; ++t)
                account(share(pt, t, static_cast<int>(kappa)) - target);
        const AdmissibleFamily fam = family_of(pt, r);
        ScoreMatrix scores;
        scores.f.assign(r, std::vector<double>(r, 0.0));
        for (int j = 0; j < r; ++j) {
            const auto margins = prefs->rows[j].margins(fam);
            const double top = *std::max_element(margins.begin(), margins.end());
            double sum = 0.0;
            for (int i = 0; i < r; ++i) {
                scores.f[j][i] = std::max(0.0, margins[i] + delta);
                sum += scores.f[j][i];
            }
            if (sum <= 0.0) {
                // The partition of unity exists only where every player
                // prefers some safe; a row that prefers nothing contributes
                // its distance to properness instead of a fake balanced row.
                account(std::min(1.0, -top));
                for (int i = 0; i < r; ++i) scores.f[j][i] = 1.0 / r;
            } else {
                for (int i = 0; i < r; ++i) scores.f[j][i] /= sum;
            }
        }
        for (int i = 0; i < r; ++i) {
            double F = 0.0;
            for (int j = 0; j < r; ++j) F += scores.f[j][i];
            account(F / r - target);
        }
        if (out) *out = scores;
        return {worst, sq};
    }

    double residual(const ConfigPoint& pt, ScoreMatrix* out = nullptr) const {
        return evaluate(pt, out).first;
    }

    // The individual terms of the test map as a vector (piecewise affine in
    // the cuts), for least-squares polishing.
    std::vector<double> terms(const ConfigPoint& pt) const {
        const double target = 1.0 / r;
        std::vector<double> v;
        for (std::size_t kappa = 0; kappa < measures.size(); ++kappa)
            for (int t = 0; t < r; ++t)
                v.push_back(share(pt, t, static_cast<int>(kappa)) - target);
        const AdmissibleFamily fam = family_of(pt, r);
        std::vector<double> col(r, 0.0);
        for (int j = 0; j < r; ++j) {
            auto margins = prefs->rows[j].margins(fam);
            double sum = 0.0;
            for (int i = 0; i < r; ++i) sum += std::max(0.0, margins[i] + delta);
            for (int i = 0; i < r; ++i)
                col[i] += sum <= 0.0 ? 1.0 / r : std::max(0.0, margins[i] + delta) / sum;
        }
        for (int i = 0; i < r; ++i) v.push_back(col[i] / r - target);
        return v;
    }
};

Evaluator make_evaluator(const Necklace& nk, const PreferenceMatrix& prefs, double delta) {
    Evaluator ev;
    ev.r = nk.r();
    for (const auto& mu : nk.measures) ev.measures.push_back(lower(mu));
    ev.prefs = &prefs;
    ev.delta = delta;
    return ev;
}

void lm_polish(const Evaluator& ev, ConfigPoint& pt, int iters);

// Exact-candidate coordinate descent over the cut coordinates: candidates are
// the interval endpoints, a small grid (with zoom), and bisection zeros of the
// per-thief share functions, which are monotone in a single cut.
double coordinate_descent(const Evaluator& ev, ConfigPoint& pt, int grid, int max_sweeps) {
    const int N = static_cast<int>(pt.cuts.size());
    std::pair<double, double> best = ev.evaluate(pt);
    if (N == 0) return best.first;
    const double target = 1.0 / ev.r;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool moved = false;
        for (int j = 0; j < N; ++j) {
            const double lo = j > 0 ? pt.cuts[j - 1] : 0.0;
            const double hi = j + 1 < N ? pt.cuts[j + 1] : 1.0;
            if (hi - lo < kDegenerate) continue;
            std::vector<double> candidates{lo, hi, pt.cuts[j]};
            const int G = std::max(4, std::min(grid, 16));
            for (int g = 1; g < G; ++g) candidates.push_back(lo + (hi - lo) * g / G);
            // zeros of the margin gap between the two safes this cut trades
            // mass between: ties of the preference block are where the score
            // rows balance
            const int sa = pt.owner[j], sb = pt.owner[j + 1];
            if (sa != sb) {
                for (int jj = 0; jj < ev.r; ++jj) {
                    auto h = [&](double y) {
                        ConfigPoint q = pt;
                        q.cuts[j] = y;
                        const auto mg = ev.prefs->rows[jj].margins(family_of(q, ev.r));
                        return mg[sa] - mg[sb];
                    };
                    std::vector<double> xs{lo};
                    for (int g = 1; g < G; ++g) xs.push_back(lo + (hi - lo) * g / G);
                    xs.push_back(hi);
                    double prev_x = xs[0], prev_h = h(prev_x);
                    for (std::size_t gi = 1; gi < xs.size(); ++gi) {
                        const double cur_x = xs[gi], cur_h = h(cur_x);
                        if (prev_h == 0.0) candidates.push_back(prev_x);
                        if (prev_h * cur_h < 0) {
                            double a = prev_x, b = cur_x, fa = prev_h;
                            for (int it = 0; it < 60; ++it) {
                                const double mid = 0.5 * (a + b);
                                const double fm = h(mid);
                                if ((fm < 0) == (fa < 0)) {
                                    a = mid;
                                    fa = fm;
                                } else {
                                    b = mid;
                                }
                            }
                            candidates.push_back(0.5 * (a + b));
                        }
                        prev_x = cur_x;
                        prev_h = cur_h;
                    }
                    if (prev_h == 0.0) candidates.push_back(prev_x);
                }
            }
            // zeros of share(owner of piece j / j+1) - 1/r along this coordinate
            for (int t : {pt.owner[j], pt.owner[j + 1]}) {
                for (std::size_t kappa = 0; kappa < ev.measures.size(); ++kappa) {
                    auto h = [&](double y) {
                        ConfigPoint q = pt;
                        q.cuts[j] = y;
                        return ev.share(q, t, static_cast<int>(kappa)) - target;
                    };
                    double a = lo, b = hi, fa = h(a), fb = h(b);
                    if (fa == 0.0) candidates.push_back(a);
                    if (fb == 0.0) candidates.push_back(b);
                    if (fa * fb < 0) {
                        for (int it = 0; it < 60; ++it) {
                            const double mid = 0.5 * (a + b);
                            const double fm = h(mid);
                            if ((fm < 0) == (fa < 0)) {
                                a = mid;
                                fa = fm;
                            } else {
                                b = mid;
                            }
                        }
                        candidates.push_back(0.5 * (a + b));
                    }
                }
            }
            double best_y = pt.cuts[j];
            std::pair<double, double> best_r = best;
            auto consider = [&](double y) {
                ConfigPoint q = pt;
                q.cuts[j] = y;
                const auto res = ev.evaluate(q);
                // descend on the smooth sum of squares (same zero set as the
                // max-norm, but coordinate moves are never blocked by terms
                // that other coordinates still have to fix)
                if (res.second < best_r.second - 1e-18 ||
                    (res.second < best_r.second + 1e-18 && res.first < best_r.first - 1e-15)) {
                    best_r = res;
                    best_y = y;
                }
            };
            for (double y : candidates) consider(y);
            // grid zoom around the best candidate
            double radius = (hi - lo) / G;
            for (int round = 0; round < 3; ++round) {
                const double zlo = std::max(lo, best_y - radius);
                const double zhi = std::min(hi, best_y + radius);
                for (int g = 0; g <= 8; ++g) consider(zlo + (zhi - zlo) * g / 8);
                radius /= 4;
            }
            if (best_y != pt.cuts[j]) {
                pt.cuts[j] = best_y;
                best = best_r;
                moved = true;
            }
        }
        // joint refinement along the valleys single-cut moves cannot follow
        ConfigPoint polished = pt;
        lm_polish(ev, polished, 25);
        const auto pres = ev.evaluate(polished);
        if (pres.second < best.second - 1e-18 ||
            (pres.second < best.second + 1e-18 && pres.first < best.first - 1e-15)) {
            pt = polished;
            best = pres;
            moved = true;
        }
        if (!moved) break;
    }
    return best.first;
}

// Levenberg-Marquardt polish of the cut vector: the test-map terms are
// piecewise affine in the cuts, so the local least-squares model is exact on
// each linearity cell and joint moves follow the valleys that single-cut
// sweeps cannot.
void lm_polish(const Evaluator& ev, ConfigPoint& pt, int iters) {
    const int N = static_cast<int>(pt.cuts.size());
    if (N == 0) return;
    auto project = [](std::vector<double>& cuts) {
        for (double& c : cuts) c = std::min(1.0, std::max(0.0, c));
        std::sort(cuts.begin(), cuts.end());
    };
    auto sq_of = [](const std::vector<double>& t) {
        double s = 0.0;
        for (double x : t) s += x * x;
        return s;
    };
    double lambda = 1e-8;
    for (int it = 0; it < iters; ++it) {
        const auto t0 = ev.terms(pt);
        const int K = static_cast<int>(t0.size());
        const double sq0 = sq_of(t0);
        if (sq0 < 1e-28) break;
        // numerical Jacobian, central where possible
        std::vector<std::vector<double>> J(K, std::vector<double>(N, 0.0));
        const double h = 1e-7;
        for (int j = 0; j < N; ++j) {
            ConfigPoint up = pt, dn = pt;
            up.cuts[j] = std::min(1.0, pt.cuts[j] + h);
            dn.cuts[j] = std::max(0.0, pt.cuts[j] - h);
            const double width = up.cuts[j] - dn.cuts[j];
            if (width <= 0.0) continue;
            const auto tu = ev.terms(up), td = ev.terms(dn);
            for (int k = 0; k < K; ++k) J[k][j] = (tu[k] - td[k]) / width;
        }
        // normal equations with damping
        std::vector<std::vector<double>> A(N, std::vector<double>(N, 0.0));
        std::vector<double> b(N, 0.0);
        for (int a = 0; a < N; ++a) {
            for (int c = 0; c < N; ++c)
                for (int k = 0; k < K; ++k) A[a][c] += J[k][a] * J[k][c];
            for (int k = 0; k < K; ++k) b[a] -= J[k][a] * t0[k];
        }
        bool accepted = false;
        for (int attempt = 0; attempt < 8 && !accepted; ++attempt) {
            auto M = A;
            for (int a = 0; a < N; ++a) M[a][a] += lambda * (1.0 + A[a][a]);
            // Gaussian elimination with partial pivoting
            auto rhs = b;
            std::vector<double> d(N, 0.0);
            bool singular = false;
            for (int col = 0; col < N && !singular; ++col) {
                int piv = col;
                for (int row = col + 1; row < N; ++row)
                    if (std::fabs(M[row][col]) > std::fabs(M[piv][col])) piv = row;
                if (std::fabs(M[piv][col]) < 1e-300) {
                    singular = true;
                    break;
                }
                std::swap(M[piv], M[col]);
                std::swap(rhs[piv], rhs[col]);
                for (int row = col + 1; row < N; ++row) {
                    const double f = M[row][col] / M[col][col];
                    for (int c2 = col; c2 < N; ++c2) M[row][c2] -= f * M[col][c2];
                    rhs[row] -= f * rhs[col];
                }
            }
            if (singular) {
                lambda *= 10;
                continue;
            }
            for (int col = N - 1; col >= 0; --col) {
                double s = rhs[col];
                for (int c2 = col + 1; c2 < N; ++c2) s -= M[col][c2] * d[c2];
                d[col] = s / M[col][col];
            }
            ConfigPoint trial = pt;
            for (int j = 0; j < N; ++j) trial.cuts[j] += d[j];
            project(trial.cuts);
            if (sq_of(ev.terms(trial)) < sq0 * (1.0 - 1e-12)) {
                pt = trial;
                lambda = std::max(1e-12, lambda / 4);
                accepted = true;
            } else {
                lambda *= 10;
            }
        }
        if (!accepted) break;
    }
}

// Downhill-simplex refinement of the cuts on the squared objective. Robust at
// the kinks of the score terms, where the least-squares model degrades.
void simplex_polish(const Evaluator& ev, ConfigPoint& pt, int iters) {
    const int N = static_cast<int>(pt.cuts.size());
    if (N == 0) return;
    auto value = [&](const std::vector<double>& raw) {
        ConfigPoint q = pt;
        q.cuts = raw;
        for (auto& x : q.cuts) x = std::min(1.0, std::max(0.0, x));
        std::sort(q.cuts.begin(), q.cuts.end());
        return ev.evaluate(q).second;
    };
    std::vector<std::vector<double>> simplex{pt.cuts};
    for (int j = 0; j < N; ++j) {
        auto x = pt.cuts;
        x[j] += x[j] + 0.07 <= 1.0 ? 0.07 : -0.07;
        simplex.push_back(x);
    }
    std::vector<double> fv;
    fv.reserve(simplex.size());
    for (const auto& x : simplex) fv.push_back(value(x));
    for (int it = 0; it < iters; ++it) {
        std::vector<int> ord(simplex.size());
        for (std::size_t i = 0; i < ord.size(); ++i) ord[i] = static_cast<int>(i);
        std::sort(ord.begin(), ord.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> f2;
        for (int i : ord) {
            s2.push_back(simplex[i]);
            f2.push_back(fv[i]);
        }
        simplex = s2;
        fv = f2;
        if (fv[0] < 1e-24) break;
        std::vector<double> cen(N, 0.0);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) cen[j] += simplex[i][j] / N;
        auto mix = [&](double t) {
            std::vector<double> x(N);
            for (int j = 0; j < N; ++j) x[j] = cen[j] + t * (simplex[N][j] - cen[j]);
            return x;
        };
        const auto xr = mix(-1.0);
        const double fr = value(xr);
        if (fr < fv[0]) {
            const auto xe = mix(-2.0);
            const double fe = value(xe);
            if (fe < fr) {
                simplex[N] = xe;
                fv[N] = fe;
            } else {
                simplex[N] = xr;
                fv[N] = fr;
            }
        } else if (fr < fv[N - 1]) {
            simplex[N] = xr;
            fv[N] = fr;
        } else {
            const auto xc = mix(0.5);
            const double fc = value(xc);
            if (fc < fv[N]) {
                simplex[N] = xc;
                fv[N] = fc;
            } else {
                for (int i = 1; i <= N; ++i) {
                    for (int j = 0; j < N; ++j)
                        simplex[i][j] = 0.5 * (simplex[i][j] + simplex[0][j]);
                    fv[i] = value(simplex[i]);
                }
            }
        }
    }
    int argmin = 0;
    for (std::size_t i = 1; i < fv.size(); ++i)
        if (fv[i] < fv[argmin]) argmin = static_cast<int>(i);
    if (fv[argmin] < ev.evaluate(pt).second) {
        pt.cuts = simplex[argmin];
        for (auto& x : pt.cuts) x = std::min(1.0, std::max(0.0, x));
        std::sort(pt.cuts.begin(), pt.cuts.end());
    }
}

using OwnerSampler = std::function<std::vector<int>(std::mt19937_64&)>;

EnvyFreeSolution solve_core(const Necklace& nk, const PreferenceMatrix& prefs,
                            const SolverConfig& cfg, int m,
                            const std::vector<std::vector<int>>& structured_seeds,
                            const OwnerSampler& sample) {
    nk.validate();
    const int r = nk.r();
    if (prefs.r() != r) throw std::invalid_argument("solve: preference matrix must have r rows");
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(cfg.time_limit_sec));
    std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);

    EnvyFreeSolution best;
    best.theorem_covered = is_prime_power(r);
    // Enlargement anneals from a scale that smooths the score rows down to the
    // configured target width; only points validated at raw-oracle margins
    // >= -(cfg.delta) count as reached.
    const double margin_tol = cfg.delta + 1e-9;
    ConfigPoint chain; // incumbent carried across the annealing schedule
    for (int restart = 0; restart < cfg.restarts; ++restart) {
        const double delta = std::max(
            cfg.delta, 0.5 * std::pow(0.5, 9.0 * restart / std::max(1, cfg.restarts - 1)));
        const Evaluator ev = make_evaluator(nk, prefs, delta);

        ConfigPoint pt;
        if (restart < static_cast<int>(structured_seeds.size()))
            pt.owner = structured_seeds[restart];
        else
            pt.owner = sample(rng);
        if (static_cast<int>(pt.owner.size()) != m)
            throw std::logic_error("solve: owner seed has wrong length");
        pt.cuts.resize(m - 1);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        if (restart % 2 == 0)
            for (int j = 0; j < m - 1; ++j) pt.cuts[j] = static_cast<double>(j + 1) / m;
        else {
            for (auto& c : pt.cuts) c = uni(rng);
            std::sort(pt.cuts.begin(), pt.cuts.end());
        }

        // descend from the fresh seed, and continue the annealing chain: the
        // incumbent is re-polished at the current (smaller) enlargement so
        // progress made at a coarse delta is not lost to the sharper
        // landscape of later restarts
        std::vector<ConfigPoint> starts{pt};
        const int extra_starts = 2 + (m > 5 ? 4 : 0);
        for (int extra = 0; extra < extra_starts; ++extra) {
            ConfigPoint alt = pt;
            for (auto& c : alt.cuts) c = uni(rng);
            std::sort(alt.cuts.begin(), alt.cuts.end());
            starts.push_back(alt);
        }
        if (!chain.owner.empty()) starts.push_back(chain);
        double chain_sq = std::numeric_limits<double>::infinity();
        for (ConfigPoint start : starts) {
            coordinate_descent(ev, start, cfg.grid, 40);
            simplex_polish(ev, start, 300 + 150 * static_cast<int>(start.cuts.size()));
            lm_polish(ev, start, 25);
            // hop out of shallow basins: resample one cut, keep improvements
            for (int hop = 0; hop < (start.cuts.size() > 4 ? 8 : 4) && ev.evaluate(start).second > 1e-16; ++hop) {
                ConfigPoint moved = start;
                moved.cuts[rng() % moved.cuts.size()] = uni(rng);
                std::sort(moved.cuts.begin(), moved.cuts.end());
                coordinate_descent(ev, moved, cfg.grid, 20);
                simplex_polish(ev, moved, 200 + 100 * static_cast<int>(moved.cuts.size()));
                lm_polish(ev, moved, 25);
                if (ev.evaluate(moved).second < ev.evaluate(start).second) start = moved;
            }
            const auto pair = ev.evaluate(start);
            const double res = pair.first;
            const double sq = pair.second;
            if (sq < chain_sq) {
                chain_sq = sq;
                chain = start;
            }

            // assignment from the scores, membership re-validated from the
            // raw oracles rather than the search's cached weights
            std::vector<int> assignment;
            std::vector<double> margins;
            bool ok = res <= cfg.epsilon;
            ScoreMatrix scores;
            ev.residual(start, &scores);
            try {
                assignment = birkhoff_permutation(scores.f, 1e-12);
                const auto fam = family_of(start, r);
                margins.assign(r, -1.0);
                for (int j = 0; j < r; ++j) {
                    margins[j] = prefs.rows[j].margins(fam)[assignment[j]];
                    if (margins[j] < -margin_tol) ok = false;
                }
            } catch (const std::exception&) {
                ok = false;
            }

            const bool better =
                (ok && !best.reached) || (ok == best.reached && res < best.residual);
            if (better) {
                best.residual = res;
                best.point = start;
                best.delta = delta;
                best.reached = ok;
                best.assignment = assignment;
                best.margins = margins;
            }
        }
        if (best.reached) break;
        if (std::chrono::steady_clock::now() > deadline) break;
    }
    return best;
}

std::vector<int> round_robin_seed(int r, int m, int phase) {
    std::vector<int> owner(m);
    const int period = std::max(1, 2 * r - 2); // reflection: 0..r-1..1, no repeats
    for (int k = 0; k < m; ++k) {
        const int idx = (k + phase) % period;
        owner[k] = idx < r ? idx : 2 * r - 2 - idx;
    }
    return owner;
}

} // namespace

double test_map(const ConfigPoint& pt, const Necklace& nk, const PreferenceMatrix& prefs,
                double delta, ScoreMatrix* scores_out) {
    return make_evaluator(nk, prefs, delta).residual(pt, scores_out);
}

std::vector<int> birkhoff_permutation(const std::vector<std::vector<double>>& M, double tol) {
    const int r = static_cast<int>(M.size());
    for (int j = 0; j < r; ++j) {
        if (static_cast<int>(M[j].size()) != r)
            throw std::invalid_argument("birkhoff: matrix not square");
        double row = 0.0, col = 0.0;
        for (int i = 0; i < r; ++i) {
            if (M[j][i] < -tol) throw std::invalid_argument("birkhoff: negative entry");
            row += M[j][i];
            col += M[i][j];
        }
        if (std::fabs(row - 1.0) > std::max(tol, 1e-6) || std::fabs(col - 1.0) > std::max(tol, 1e-6))
            throw std::invalid_argument("birkhoff: not doubly stochastic within tolerance");
    }
    std::vector<int> match_col(r, -1); // column -> row
    std::function<bool(int, std::vector<bool>&)> augment = [&](int j, std::vector<bool>& seen) {
        for (int i = 0; i < r; ++i) {
            if (seen[i] || M[j][i] <= tol) continue;
            seen[i] = true;
            if (match_col[i] < 0 || augment(match_col[i], seen)) {
                match_col[i] = j;
                return true;
            }
        }
        return false;
    };
    for (int j = 0; j < r; ++j) {
        std::vector<bool> seen(r, false);
        if (!augment(j, seen)) {
            std::ostringstream msg;
            msg << "birkhoff: no matching at tol " << tol << "; blocked rows reach columns {";
            for (int i = 0; i < r; ++i)
                if (seen[i]) msg << " " << i;
            msg << " } only";
            throw std::runtime_error(msg.str());
        }
    }
    std::vector<int> pi(r, -1);
    for (int i = 0; i < r; ++i) pi[match_col[i]] = i;
    return pi;
}

bool check_proper(const PreferenceMatrix& prefs, int r, int m, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, r - 1);
    for (int s = 0; s < samples; ++s) {
        ConfigPoint pt;
        pt.cuts.resize(m - 1);
        for (auto& c : pt.cuts) c = uni(rng);
        std::sort(pt.cuts.begin(), pt.cuts.end());
        pt.owner.resize(m);
        for (auto& o : pt.owner) o = pick(rng);
        const auto fam = family_of(pt, r);
        for (const auto& row : prefs.rows) {
            const auto margins = row.margins(fam);
            if (*std::max_element(margins.begin(), margins.end()) < 0) return false;
        }
    }
    return true;
}

bool check_equivariant(const PreferenceMatrix& prefs, int r, int m, int samples,
                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, r - 1);
    std::vector<int> sigma(r);
    for (int s = 0; s < samples; ++s) {
        ConfigPoint pt;
        pt.cuts.resize(m - 1);
        for (auto& c : pt.cuts) c = uni(rng);
        std::sort(pt.cuts.begin(), pt.cuts.end());
        pt.owner.resize(m);
        for (auto& o : pt.owner) o = pick(rng);
        std::iota(sigma.begin(), sigma.end(), 0);
        std::shuffle(sigma.begin(), sigma.end(), rng);

        const auto fam = family_of(pt, r);
        AdmissibleFamily permuted;
        permuted.safes.resize(r);
        for (int i = 0; i < r; ++i) permuted.safes[sigma[i]] = fam.safes[i];
        for (const auto& row : prefs.rows) {
            const auto a = row.margins(fam);
            const auto b = row.margins(permuted);
            for (int i = 0; i < r; ++i)
                if (std::fabs(a[i] - b[sigma[i]]) > 1e-9) return false;
        }
    }
    return true;
}

EnvyFreeSolution solve_envy_free(const Necklace& nk, const PreferenceMatrix& prefs,
                                 const SolverConfig& cfg) {
    const int r = nk.r();
    const int m = (r - 1) * (nk.n() + 1) + 1;
    std::vector<std::vector<int>> seeds;
    for (int phase = 0; phase < 4; ++phase) seeds.push_back(round_robin_seed(r, m, phase));
    OwnerSampler sample = [r, m](std::mt19937_64& rng) {
        std::uniform_int_distribution<int> pick(0, r - 1);
        std::vector<int> owner(m);
        if (rng() % 2 == 0) {
            // relabeled reflection walk: keeps every thief's pieces contiguous
            // in the walk order, where balanced splits tend to live
            owner = round_robin_seed(r, m, static_cast<int>(rng() % (2 * r)));
            std::vector<int> relabel(r);
            for (int t = 0; t < r; ++t) relabel[t] = t;
            std::shuffle(relabel.begin(), relabel.end(), rng);
            for (auto& o : owner) o = relabel[o];
        } else {
            for (auto& o : owner) o = pick(rng);
        }
        return owner;
    };
    return solve_core(nk, prefs, cfg, m, seeds, sample);
}

EnvyFreeSolution solve_envy_free_equicardinal(const Necklace& nk, const PreferenceMatrix& prefs,
                                              const SolverConfig& cfg) {
    const int r = nk.r();
    const int m = (r - 1) * (nk.n() + 1) + 1;
    const int k = std::max(1, m / r);
    const int s = m - r * k;
    if (s < 0 || s >= r) throw std::invalid_argument("equicardinal: m = rk+s needs k >= 1");
    // Owner sequences whose non-degenerate piece counts realize the top faces
    // of the restricted configuration space: s thieves with k+1 pieces, the
    // rest with k.
    OwnerSampler sample = [r, m, k, s](std::mt19937_64& rng) {
        std::vector<int> pool;
        std::vector<int> thieves(r);
        std::iota(thieves.begin(), thieves.end(), 0);
        std::shuffle(thieves.begin(), thieves.end(), rng);
        for (int idx = 0; idx < r; ++idx) {
            const int copies = idx < s ? k + 1 : k;
            for (int c = 0; c < copies; ++c) pool.push_back(thieves[idx]);
        }
        std::shuffle(pool.begin(), pool.end(), rng);
        (void)m;
        return pool;
    };
    std::mt19937_64 seed_rng(cfg.seed + 1);
    std::vector<std::vector<int>> seeds;
    for (int i = 0; i < 4; ++i) seeds.push_back(sample(seed_rng));
    return solve_core(nk, prefs, cfg, m, seeds, sample);
}

EnvyFreeSolution solve_envy_free_binary(const Necklace& nk, const PreferenceMatrix& prefs, int d,
                                        const SolverConfig& cfg) {
    const int r = nk.r();
    if (r != (1 << d)) throw std::invalid_argument("binary: r must equal 2^d");
    const int m = (r - 1) * (nk.n() + 1) + 1;
    const Graph cube = Graph::cube(d);
    // stay-or-step walks on the d-cube
    OwnerSampler sample = [r, m, d, &cube](std::mt19937_64& rng) {
        std::uniform_int_distribution<int> start(0, r - 1);
        std::uniform_int_distribution<int> step(0, d); // 0 = stay, else flip a bit
        std::vector<int> owner(m);
        owner[0] = start(rng);
        for (int kk = 1; kk < m; ++kk) {
            const int move = step(rng);
            owner[kk] = move == 0 ? owner[kk - 1] : owner[kk - 1] ^ (1 << (move - 1));
        }
        return owner;
    };
    // Gray-code sweep visits every vertex; useful deterministic seed.
    std::vector<int> gray(m);
    for (int kk = 0; kk < m; ++kk) {
        const int g = kk % (2 * r);
        const int idx = g < r ? g : 2 * r - 1 - g;
        gray[kk] = idx ^ (idx >> 1);
    }
    std::vector<std::vector<int>> seeds{gray};
    auto sol = solve_core(nk, prefs, cfg, m, seeds, sample);
    // sanity: every seed is a walk, so the result must satisfy the constraint
    PartitionAllocation pa;
    pa.cuts.assign(sol.point.cuts.size(), Rational(0));
    pa.allocation = sol.point.owner;
    if (!is_g_constraint(pa, cube)) sol.reached = false;
    return sol;
}

// ---- AK reduction -------------------------------------------------------------

bool partition_equivalent(const std::vector<double>& x, const std::vector<double>& x2) {
    auto interior = [](const std::vector<double>& v) {
        std::set<double> s;
        for (double c : v)
            if (c > 0.0 && c < 1.0) s.insert(c);
        return s;
    };
    return interior(x) == interior(x2);
}

namespace {

// Non-degenerate pieces of the partition induced by a sorted cut vector.
std::vector<Interval> pieces_of_cuts(const std::vector<double>& cuts) {
    std::vector<double> pts{0.0};
    for (double c : cuts) pts.push_back(std::min(1.0, std::max(0.0, c)));
    pts.push_back(1.0);
    std::sort(pts.begin(), pts.end());
    std::vector<Interval> pieces;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i + 1] - pts[i] > kDegenerate) pieces.push_back({pts[i], pts[i + 1]});
    return pieces;
}

} // namespace

BalanceCheck is_partition_balanced(const CutSetOracle& X, int r, int samples,
                                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_int_distribution<int> nint(0, r - 1);
    auto representative = [&](const std::vector<double>& interior) {
        std::vector<double> x = interior;
        while (static_cast<int>(x.size()) < r - 1) {
            const int mode = interior.empty() ? nint(rng) % 2 : nint(rng) % 3;
            if (mode == 0)
                x.push_back(0.0);
            else if (mode == 1)
                x.push_back(1.0);
            else
                x.push_back(interior[nint(rng) % interior.size()]);
        }
        std::sort(x.begin(), x.end());
        return x;
    };
    for (int s = 0; s < samples; ++s) {
        const int cuts = nint(rng); // 0..r-1 interior cuts
        std::set<double> zs;
        while (static_cast<int>(zs.size()) < cuts) zs.insert(uni(rng));
        const std::vector<double> interior(zs.begin(), zs.end());
        const auto a = representative(interior);
        const auto b = representative(interior);
        if (X(a) != X(b)) return {false, a, b};
    }
    return {};
}

PreferenceMatrix ak_reduce(const std::vector<CutOracle>& prefs, int r) {
    if (static_cast<int>(prefs.size()) != r)
        throw std::invalid_argument("ak_reduce: need one oracle per player");
    PreferenceMatrix matrix;
    for (const auto& oracle : prefs) {
        PreferenceOracle row;
        row.name = "ak:" + oracle.name;
        row.margins = [oracle, r](const AdmissibleFamily& fam) {
            // canonical pieces: all intervals across the safes, left to right
            std::vector<Interval> pieces;
            for (const auto& safe : fam.safes) pieces.insert(pieces.end(), safe.begin(), safe.end());
            std::sort(pieces.begin(), pieces.end(),
                      [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
            const auto raw = oracle.margins(pieces);
            if (static_cast<int>(raw.size()) != r)
                throw std::runtime_error("ak_reduce: oracle returned wrong arity");
            const int sigma = static_cast<int>(pieces.size());
            double empty_margin = -1.0;
            for (int i = sigma; i < r; ++i) empty_margin = std::max(empty_margin, raw[i]);

            std::vector<double> margins(fam.r(), -1.0);
            for (int i = 0; i < fam.r(); ++i) {
                if (fam.safes[i].empty()) {
                    margins[i] = empty_margin;
                    continue;
                }
                double best = -std::numeric_limits<double>::infinity();
                for (const auto& iv : fam.safes[i]) {
                    // index of iv among the canonical pieces
                    for (int kdx = 0; kdx < sigma; ++kdx)
                        if (std::fabs(pieces[kdx].lo - iv.lo) < kDegenerate &&
                            std::fabs(pieces[kdx].hi - iv.hi) < kDegenerate) {
                            best = std::max(best, raw[kdx]);
                            break;
                        }
                }
                margins[i] = best;
            }
            return margins;
        };
        matrix.rows.push_back(std::move(row));
    }
    return matrix;
}

AkSolution solve_ak(const std::vector<CutOracle>& prefs, int r, const SolverConfig& config) {
    Necklace nk;
    nk.thieves = r; // no measures: pure preference problem
    const PreferenceMatrix reduced = ak_reduce(prefs, r);
    // membership in the original preferences is exact, so anneal the
    // enlargement well below the default search width
    SolverConfig cfg = config;
    cfg.delta = std::min(config.delta, 1e-5);
    auto sol = solve_envy_free_equicardinal(nk, reduced, cfg);

    AkSolution out;
    out.residual = sol.residual;
    out.reached = sol.reached;
    out.pieces = pieces_of_cuts(sol.point.cuts);
    out.share_piece.assign(r, -1);
    out.margins.assign(r, -1.0);
    if (sol.assignment.empty()) return out;

    const auto fam = family_of(sol.point, r);
    for (int j = 0; j < r; ++j) {
        const int safe = sol.assignment[j];
        if (!fam.safes[safe].empty()) {
            const Interval iv = fam.safes[safe].front();
            for (std::size_t kdx = 0; kdx < out.pieces.size(); ++kdx)
                if (std::fabs(out.pieces[kdx].lo - iv.lo) < kDegenerate)
                    out.share_piece[j] = static_cast<int>(kdx);
        }
    }
    // margins of the assigned shares, from the raw oracles
    for (int j = 0; j < r; ++j) {
        const auto raw = prefs[j].margins(out.pieces);
        if (out.share_piece[j] >= 0) {
            out.margins[j] = raw[out.share_piece[j]];
        } else {
            double best = -1.0;
            for (int i = static_cast<int>(out.pieces.size()); i < r; ++i)
                best = std::max(best, raw[i]);
            out.margins[j] = best;
        }
    }
    return out;
}

} // namespace fairdiv

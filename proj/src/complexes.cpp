#include "fairdiv/complexes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace fairdiv {

namespace {

constexpr std::size_t kFaceCapacity = 2'000'000;
constexpr double kEnumerationCapacity = 1e8;

void subsets_of_size(const Face& facet, int k, std::set<Face>& out) {
    Face cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (static_cast<int>(cur.size()) == k) {
            out.insert(cur);
            return;
        }
        for (std::size_t i = start; i < facet.size(); ++i) {
            if (facet.size() - i < k - cur.size()) break;
            cur.push_back(facet[i]);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

} // namespace

int SimplicialComplex::dim() const {
    int d = -1;
    for (const auto& f : facets) d = std::max(d, static_cast<int>(f.size()) - 1);
    return d;
}

bool SimplicialComplex::contains(const Face& face) const {
    for (const auto& facet : facets)
        if (std::includes(facet.begin(), facet.end(), face.begin(), face.end())) return true;
    return false;
}

std::vector<Face> SimplicialComplex::faces_of_dim(int d) const {
    std::set<Face> out;
    for (const auto& facet : facets)
        if (static_cast<int>(facet.size()) >= d + 1) subsets_of_size(facet, d + 1, out);
    if (out.size() > kFaceCapacity) throw std::runtime_error("complex exceeds face capacity 2e6");
    return {out.begin(), out.end()};
}

std::vector<std::vector<Face>> SimplicialComplex::all_faces() const {
    std::vector<std::vector<Face>> by_dim;
    by_dim.push_back({Face{}}); // the empty face
    std::size_t total = 1;
    for (int d = 0; d <= dim(); ++d) {
        by_dim.push_back(faces_of_dim(d));
        total += by_dim.back().size();
        if (total > kFaceCapacity) throw std::runtime_error("complex exceeds face capacity 2e6");
    }
    return by_dim;
}

std::size_t SimplicialComplex::face_count() const {
    std::size_t total = 0;
    for (int d = 0; d <= dim(); ++d) total += faces_of_dim(d).size();
    return total;
}

long long SimplicialComplex::reduced_euler() const {
    long long chi = -1; // empty face
    for (int d = 0; d <= dim(); ++d) {
        const long long count = static_cast<long long>(faces_of_dim(d).size());
        chi += (d % 2 == 0) ? count : -count;
    }
    return chi;
}

bool SimplicialComplex::is_path_connected() const {
    std::set<int> used;
    for (const auto& f : facets) used.insert(f.begin(), f.end());
    if (used.size() <= 1) return true;
    std::vector<int> parent(num_vertices());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (const auto& f : facets)
        for (std::size_t i = 1; i < f.size(); ++i) parent[find(f[i])] = find(f[0]);
    const int root = find(*used.begin());
    return std::all_of(used.begin(), used.end(), [&](int v) { return find(v) == root; });
}

void SimplicialComplex::sort_canonical() {
    std::sort(facets.begin(), facets.end(), [](const Face& a, const Face& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
}

std::string SimplicialComplex::to_text() const {
    SimplicialComplex copy = *this;
    copy.sort_canonical();
    std::ostringstream out;
    for (const auto& f : copy.facets) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (i) out << ' ';
            out << vertex_labels[f[i]];
        }
        out << '\n';
    }
    return out.str();
}

std::vector<std::string> ground_labels(int m) {
    std::vector<std::string> labels;
    for (int j = 0; j < m; ++j) labels.push_back(std::to_string(j + 1));
    return labels;
}

std::vector<std::string> join_labels(int r, int m) {
    std::vector<std::string> labels;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < m; ++j)
            labels.push_back(std::to_string(i + 1) + ":" + std::to_string(j + 1));
    return labels;
}

std::vector<int> LabeledSimplex::complement() const {
    std::vector<bool> used(m, false);
    for (const auto& part : parts)
        for (int j : part) used[j] = true;
    std::vector<int> b;
    for (int j = 0; j < m; ++j)
        if (!used[j]) b.push_back(j);
    return b;
}

int LabeledSimplex::dimension() const {
    int total = 0;
    for (const auto& part : parts) total += static_cast<int>(part.size());
    return total - 1;
}

void LabeledSimplex::validate() const {
    std::vector<int> seen(m, 0);
    int total = 0;
    for (const auto& part : parts)
        for (int j : part) {
            if (j < 0 || j >= m) throw std::invalid_argument("labeled simplex: element out of range");
            if (seen[j]++) throw std::invalid_argument("labeled simplex: parts not disjoint");
            total++;
        }
    if (total == 0) throw std::invalid_argument("labeled simplex: some A_i must be nonempty");
}

void Graph::add_edge(int a, int b) {
    if (a == b) throw std::invalid_argument("graph: loops not allowed");
    if (a < 0 || b < 0 || a >= num_vertices || b >= num_vertices)
        throw std::invalid_argument("graph: vertex out of range");
    edges.insert({std::min(a, b), std::max(a, b)});
}

bool Graph::has_edge(int a, int b) const {
    return edges.count({std::min(a, b), std::max(a, b)}) > 0;
}

std::vector<std::vector<int>> Graph::distances() const {
    std::vector<std::vector<int>> adj(num_vertices);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<std::vector<int>> dist(num_vertices, std::vector<int>(num_vertices, -1));
    for (int s = 0; s < num_vertices; ++s) {
        std::queue<int> q;
        q.push(s);
        dist[s][s] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[v])
                if (dist[s][w] < 0) {
                    dist[s][w] = dist[s][v] + 1;
                    q.push(w);
                }
        }
    }
    return dist;
}

bool Graph::connected() const {
    if (num_vertices == 0) return false;
    const auto dist = distances();
    return std::all_of(dist[0].begin(), dist[0].end(), [](int d) { return d >= 0; });
}

Graph Graph::complete(int r) {
    Graph g{r, {}};
    for (int a = 0; a < r; ++a)
        for (int b = a + 1; b < r; ++b) g.add_edge(a, b);
    return g;
}

Graph Graph::cube(int d) {
    Graph g{1 << d, {}};
    for (int v = 0; v < (1 << d); ++v)
        for (int bit = 0; bit < d; ++bit)
            if (!(v & (1 << bit))) g.add_edge(v, v | (1 << bit));
    return g;
}

void Poset::validate() const {
    const int n = size();
    for (int a = 0; a < n; ++a) {
        if (!leq[a][a]) throw std::logic_error("poset: not reflexive");
        for (int b = 0; b < n; ++b) {
            if (a != b && leq[a][b] && leq[b][a]) throw std::logic_error("poset: not antisymmetric");
            for (int c = 0; c < n; ++c)
                if (leq[a][b] && leq[b][c] && !leq[a][c])
                    throw std::logic_error("poset: not transitive");
        }
    }
}

SimplicialComplex bounded_subsets_complex(int m, int c) {
    if (c < 0 || c > m) throw std::invalid_argument("bounded_subsets_complex: 0 <= c <= m");
    SimplicialComplex K;
    K.vertex_labels = ground_labels(m);
    if (c == 0) return K; // only the empty face
    Face cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == c) {
            K.facets.push_back(cur);
            return;
        }
        for (int j = start; j < m; ++j) {
            cur.push_back(j);
            rec(j + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return K;
}

namespace {

// Fast membership oracle: all face bitmasks of a complex over [m] (m <= 62).
std::unordered_set<std::uint64_t> face_masks(const SimplicialComplex& K, int m) {
    if (m > 62) throw std::runtime_error("ground set too large for bitmask enumeration");
    std::unordered_set<std::uint64_t> masks;
    masks.insert(0);
    for (const auto& facet : K.facets) {
        const int sz = static_cast<int>(facet.size());
        for (std::uint64_t sub = 1; sub < (1ull << sz); ++sub) {
            std::uint64_t mask = 0;
            for (int b = 0; b < sz; ++b)
                if (sub & (1ull << b)) mask |= 1ull << facet[b];
            masks.insert(mask);
            if (masks.size() > kFaceCapacity)
                throw std::runtime_error("complex exceeds face capacity 2e6");
        }
    }
    return masks;
}

bool perm_matches(const std::vector<std::uint64_t>& part_masks,
                  const std::vector<std::unordered_set<std::uint64_t>>& family_masks) {
    const int r = static_cast<int>(part_masks.size());
    // Bipartite matching: part i can sit in slot k iff A_i is a face of K_k.
    std::vector<int> slot_of(r, -1);
    std::function<bool(int, std::vector<bool>&)> augment = [&](int i, std::vector<bool>& seen) {
        for (int k = 0; k < r; ++k) {
            if (seen[k] || !family_masks[k].count(part_masks[i])) continue;
            seen[k] = true;
            if (slot_of[k] < 0 || augment(slot_of[k], seen)) {
                slot_of[k] = i;
                return true;
            }
        }
        return false;
    };
    for (int i = 0; i < r; ++i) {
        std::vector<bool> seen(r, false);
        if (!augment(i, seen)) return false;
    }
    return true;
}

// Shared engine for the two joins: enumerate disjoint tuples by assigning each
// ground element to a block or leaving it unused, pruning by the membership rule.
SimplicialComplex join_enumerate(const std::vector<SimplicialComplex>& family, int m,
                                 bool symmetrized) {
    const int r = static_cast<int>(family.size());
    if (r < 1) throw std::invalid_argument("join: empty family");
    if (std::pow(r + 1.0, m) > kEnumerationCapacity)
        throw std::runtime_error("join: enumeration capacity (r+1)^m <= 1e8 exceeded");
    std::vector<std::unordered_set<std::uint64_t>> masks;
    for (const auto& K : family) masks.push_back(face_masks(K, m));

    std::set<Face> faces;
    std::vector<std::uint64_t> parts(r, 0);
    std::function<void(int)> rec = [&](int j) {
        if (j == m) {
            Face face;
            for (int i = 0; i < r; ++i)
                for (int e = 0; e < m; ++e)
                    if (parts[i] & (1ull << e)) face.push_back(i * m + e);
            faces.insert(face);
            if (faces.size() > kFaceCapacity)
                throw std::runtime_error("join exceeds face capacity 2e6");
            return;
        }
        rec(j + 1); // unused
        for (int i = 0; i < r; ++i) {
            parts[i] |= 1ull << j;
            const bool ok = symmetrized ? perm_matches(parts, masks)
                                        : masks[i].count(parts[i]) > 0;
            if (ok) rec(j + 1);
            parts[i] &= ~(1ull << j);
        }
    };
    rec(0);

    SimplicialComplex out;
    out.vertex_labels = join_labels(r, m);
    for (const auto& face : faces) {
        bool maximal = true;
        for (int i = 0; i < r * m && maximal; ++i) {
            if (std::binary_search(face.begin(), face.end(), i)) continue;
            Face ext = face;
            ext.insert(std::upper_bound(ext.begin(), ext.end(), i), i);
            if (faces.count(ext)) maximal = false;
        }
        if (maximal && !face.empty()) out.facets.push_back(face);
    }
    out.sort_canonical();
    return out;
}

} // namespace

SimplicialComplex deleted_join(const std::vector<SimplicialComplex>& family, int m) {
    return join_enumerate(family, m, /*symmetrized=*/false);
}

SimplicialComplex symm_deleted_join(const std::vector<SimplicialComplex>& family, int m) {
    return join_enumerate(family, m, /*symmetrized=*/true);
}

SimplicialComplex chessboard(int m, int r) {
    if (m < 1 || r < 1) throw std::invalid_argument("chessboard: m, r >= 1");
    SimplicialComplex K;
    K.vertex_labels = join_labels(r, m);
    const int size = std::min(m, r);
    // Facets: placements of `size` non-attacking rooks.
    std::vector<int> cols; // chosen columns (blocks)
    std::vector<int> rows;
    std::vector<bool> row_used(m, false);
    std::function<void(int)> rec = [&](int col) {
        if (static_cast<int>(cols.size()) == size) {
            Face face;
            for (std::size_t t = 0; t < cols.size(); ++t) face.push_back(cols[t] * m + rows[t]);
            std::sort(face.begin(), face.end());
            K.facets.push_back(face);
            return;
        }
        if (col == r) return;
        const int remaining_cols = r - col;
        const int needed = size - static_cast<int>(cols.size());
        if (remaining_cols > needed) rec(col + 1); // skip this column
        for (int row = 0; row < m; ++row) {
            if (row_used[row]) continue;
            row_used[row] = true;
            cols.push_back(col);
            rows.push_back(row);
            rec(col + 1);
            cols.pop_back();
            rows.pop_back();
            row_used[row] = false;
        }
    };
    rec(0);
    K.sort_canonical();
    return K;
}

std::vector<SimplicialComplex> equicardinal_skeleta_family(int r, int n) {
    const auto [k, s] = [&] {
        const int total = (r - 1) * n + 1;
        return std::pair<int, int>{total / r, total % r};
    }();
    const int m = (r - 1) * (n + 1) + 1;
    std::vector<SimplicialComplex> family;
    for (int i = 0; i < r; ++i)
        family.push_back(bounded_subsets_complex(m, i < s ? k + 1 : k));
    return family;
}

namespace {

bool exists_violating_tuple(const std::vector<std::unordered_set<std::uint64_t>>& masks, int m) {
    const int r = static_cast<int>(masks.size());
    if (std::pow(r + 1.0, m) > kEnumerationCapacity)
        throw std::runtime_error("unavoidability: enumeration capacity (r+1)^m <= 1e8 exceeded");
    std::vector<std::uint64_t> parts(r, 0);
    // in_complex[i]: whether A_i is (still) a face of K_i; monotone under growth.
    std::vector<bool> in_complex(r, true);
    std::function<bool(int)> rec = [&](int j) {
        if (j == m) return std::none_of(in_complex.begin(), in_complex.end(),
                                        [](bool b) { return b; });
        if (rec(j + 1)) return true; // element unused
        for (int i = 0; i < r; ++i) {
            parts[i] |= 1ull << j;
            const bool was = in_complex[i];
            if (was) in_complex[i] = masks[i].count(parts[i]) > 0;
            const bool hit = rec(j + 1);
            in_complex[i] = was;
            parts[i] &= ~(1ull << j);
            if (hit) return true;
        }
        return false;
    };
    return rec(0);
}

} // namespace

bool is_r_unavoidable(const SimplicialComplex& K, int m, int r) {
    std::vector<std::unordered_set<std::uint64_t>> masks(r, face_masks(K, m));
    return !exists_violating_tuple(masks, m);
}

bool is_collectively_unavoidable(const std::vector<SimplicialComplex>& family, int m) {
    std::vector<std::unordered_set<std::uint64_t>> masks;
    for (const auto& K : family) masks.push_back(face_masks(K, m));
    return !exists_violating_tuple(masks, m);
}

bool skeleta_family_unavoidable_symbolic(const std::vector<int>& caps, int m) {
    long long total = 0;
    for (int cap : caps) total += cap + 1;
    return total > m;
}

bool is_balanced(const SimplicialComplex& K, int m, int c) {
    for (const auto& facet : K.facets)
        if (static_cast<int>(facet.size()) > c + 1) return false;
    const auto lower = bounded_subsets_complex(m, c);
    for (const auto& facet : lower.facets)
        if (!K.contains(facet)) return false;
    return true;
}

int simplex_dimension(const LabeledSimplex& s) {
    s.validate();
    const int dim = s.dimension();
    const int via_complement = s.m - static_cast<int>(s.complement().size()) - 1;
    if (dim != via_complement) throw std::logic_error("dimension identity violated");
    return dim;
}

Graph prism(const Graph& g) {
    Graph out{2 * g.num_vertices, {}};
    for (auto [a, b] : g.edges) {
        out.add_edge(a, b);
        out.add_edge(a + g.num_vertices, b + g.num_vertices);
    }
    for (int v = 0; v < g.num_vertices; ++v) out.add_edge(v, v + g.num_vertices);
    return out;
}

Poset g_constraint_poset(const Graph& g, int m) {
    if (!g.connected())
        throw std::invalid_argument("g_constraint_poset: graph must be connected");
    const auto dist = g.distances();
    const int r = g.num_vertices;
    Poset p;
    p.leq.assign(r * m, std::vector<bool>(r * m, false));
    for (int x = 0; x < r; ++x)
        for (int i = 0; i < m; ++i) {
            p.labels.push_back(std::to_string(x + 1) + ":" + std::to_string(i + 1));
            for (int y = 0; y < r; ++y)
                for (int j = 0; j < m; ++j)
                    if (i <= j && dist[x][y] <= j - i) p.leq[x * m + i][y * m + j] = true;
        }
    p.validate();
    return p;
}

SimplicialComplex order_complex(const Poset& p) {
    const int n = p.size();
    std::set<Face> chains;
    Face cur;
    std::function<void(int)> rec = [&](int start) {
        if (!cur.empty()) {
            chains.insert(cur);
            if (chains.size() > kFaceCapacity)
                throw std::runtime_error("order complex exceeds face capacity 2e6");
        }
        for (int e = start; e < n; ++e) {
            bool comparable = true;
            for (int c : cur)
                if (!p.leq[c][e] && !p.leq[e][c]) {
                    comparable = false;
                    break;
                }
            if (!comparable) continue;
            cur.push_back(e);
            rec(e + 1);
            cur.pop_back();
        }
    };
    rec(0);

    SimplicialComplex K;
    K.vertex_labels = p.labels;
    for (const auto& chain : chains) {
        bool maximal = true;
        for (int e = 0; e < n && maximal; ++e) {
            if (std::binary_search(chain.begin(), chain.end(), e)) continue;
            Face ext = chain;
            ext.insert(std::upper_bound(ext.begin(), ext.end(), e), e);
            if (chains.count(ext)) maximal = false;
        }
        if (maximal) K.facets.push_back(chain);
    }
    K.sort_canonical();
    return K;
}

SimplicialComplex g_constraint_complex(const Graph& g, int m) {
    // Poset vertex (x, i) has id x*m + i, matching the join labeling (block, piece).
    return order_complex(g_constraint_poset(g, m));
}

long long count_g_walks(const Graph& g, int m) {
    const int r = g.num_vertices;
    std::vector<long long> count(r, 1);
    for (int step = 1; step < m; ++step) {
        std::vector<long long> next(r, 0);
        for (int v = 0; v < r; ++v) {
            next[v] += count[v];
            for (int w = 0; w < r; ++w)
                if (g.has_edge(v, w)) next[v] += count[w];
        }
        count = next;
    }
    return std::accumulate(count.begin(), count.end(), 0ll);
}

LabeledSimplex face_to_labeled(const Face& face, int r, int m) {
    LabeledSimplex s;
    s.m = m;
    s.parts.assign(r, {});
    for (int v : face) s.parts[v / m].push_back(v % m);
    return s;
}

SymmFamilyOracle::SymmFamilyOracle(const std::vector<SimplicialComplex>& family, int m) {
    for (const auto& K : family) {
        const auto masks = face_masks(K, m);
        masks_.emplace_back(masks.begin(), masks.end());
    }
}

bool SymmFamilyOracle::admits(const std::vector<std::uint64_t>& part_masks) const {
    const int r = static_cast<int>(masks_.size());
    std::vector<int> slot_of(r, -1);
    std::function<bool(int, std::vector<bool>&)> augment = [&](int i, std::vector<bool>& seen) {
        for (int k = 0; k < r; ++k) {
            if (seen[k] || !masks_[k].count(part_masks[i])) continue;
            seen[k] = true;
            if (slot_of[k] < 0 || augment(slot_of[k], seen)) {
                slot_of[k] = i;
                return true;
            }
        }
        return false;
    };
    for (int i = 0; i < r; ++i) {
        std::vector<bool> seen(r, false);
        if (!augment(i, seen)) return false;
    }
    return true;
}

bool tuple_in_symm_family(const std::vector<std::vector<int>>& parts,
                          const std::vector<SimplicialComplex>& family) {
    int m = 0;
    for (const auto& K : family) m = std::max(m, K.num_vertices());
    std::vector<std::unordered_set<std::uint64_t>> masks;
    for (const auto& K : family) masks.push_back(face_masks(K, m));
    std::vector<std::uint64_t> part_masks;
    for (const auto& part : parts) {
        std::uint64_t mask = 0;
        for (int j : part) mask |= 1ull << j;
        part_masks.push_back(mask);
    }
    return perm_matches(part_masks, masks);
}

} // namespace fairdiv

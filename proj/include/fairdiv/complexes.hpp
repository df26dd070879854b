#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace fairdiv {

using Face = std::vector<int>; // sorted vertex ids

// Finite abstract simplicial complex, stored as a facet list. Vertices carry
// string labels for the exchange format; ids are dense 0-based.
struct SimplicialComplex {
    std::vector<std::string> vertex_labels;
    std::vector<Face> facets; // each sorted; maximal faces only

    int num_vertices() const { return static_cast<int>(vertex_labels.size()); }
    int dim() const; // -1 for the void/empty complex
    bool contains(const Face& face) const;

    // All faces of dimension d (cardinality d+1), sorted deterministically.
    std::vector<Face> faces_of_dim(int d) const;
    // Faces grouped by dimension, index d+1 holds dimension d (index 0: empty face count).
    std::vector<std::vector<Face>> all_faces() const;
    std::size_t face_count() const;

    // Reduced Euler characteristic from face counts.
    long long reduced_euler() const;

    bool is_path_connected() const;

    void sort_canonical(); // deterministic facet order
    std::string to_text() const; // one facet per line, labels space-separated
};

// The m-element ground set [m] as labels "1".."m".
std::vector<std::string> ground_labels(int m);
// Labels "<block+1>:<elem+1>" for joins over [r] x [m].
std::vector<std::string> join_labels(int r, int m);

// A face of a deleted join, viewed as (A_1,...,A_r; B) over [m].
struct LabeledSimplex {
    std::vector<std::vector<int>> parts; // r disjoint sorted subsets of [m] (0-based)
    int m = 0;

    std::vector<int> complement() const; // B
    int dimension() const;               // |union A_i| - 1
    void validate() const;
};

struct Graph {
    int num_vertices = 0;
    std::set<std::pair<int, int>> edges; // normalized (a < b)

    void add_edge(int a, int b);
    bool has_edge(int a, int b) const;
    bool connected() const;
    // BFS distance matrix; -1 for unreachable.
    std::vector<std::vector<int>> distances() const;

    static Graph complete(int r);
    static Graph cube(int d); // C^d on 2^d vertices
    static Graph single_vertex() { return Graph{1, {}}; }
};

struct Poset {
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> leq; // leq[a][b] : a <= b

    int size() const { return static_cast<int>(labels.size()); }
    void validate() const; // reflexive, antisymmetric, transitive
};

// ---- constructors ----------------------------------------------------------

// ([m] choose <= c): all subsets of cardinality <= c.
SimplicialComplex bounded_subsets_complex(int m, int c);

// K_1 *_D ... *_D K_r over the shared ground set [m]; vertices (i, j).
SimplicialComplex deleted_join(const std::vector<SimplicialComplex>& family, int m);

// Union over permutations pi of K_{pi(1)} *_D ... *_D K_{pi(r)}.
SimplicialComplex symm_deleted_join(const std::vector<SimplicialComplex>& family, int m);

// Non-attacking rook placements on [m] x [r].
SimplicialComplex chessboard(int m, int r);

// The (k,s)-skeleta family of the almost-equicardinal theorem:
// s copies of ([m] choose <= k+1) followed by r-s copies of ([m] choose <= k).
std::vector<SimplicialComplex> equicardinal_skeleta_family(int r, int n);

bool is_r_unavoidable(const SimplicialComplex& K, int m, int r);
bool is_collectively_unavoidable(const std::vector<SimplicialComplex>& family, int m);

// Exact pigeonhole criterion for pure skeleta families given per-complex
// cardinality caps: unavoidable iff sum(cap_i + 1) > m.
bool skeleta_family_unavoidable_symbolic(const std::vector<int>& caps, int m);

// ([m] choose <= c) subseteq K subseteq ([m] choose <= c+1).
bool is_balanced(const SimplicialComplex& K, int m, int c);

int simplex_dimension(const LabeledSimplex& s);

Graph prism(const Graph& g);

// Pi_G^m on V x [m]: (x,i) <= (y,j) iff i <= j and dist(x,y) <= j - i.
Poset g_constraint_poset(const Graph& g, int m);

// Complex of chains of P.
SimplicialComplex order_complex(const Poset& p);

// K_G^m = Delta(Pi_G^m), vertices labeled like join_labels(r, m).
SimplicialComplex g_constraint_complex(const Graph& g, int m);

// Number of stay-or-step walks of length m on G (independent facet oracle).
long long count_g_walks(const Graph& g, int m);

// View a deleted-join face (vertex ids over [r] x [m]) as (A_1..A_r; B).
LabeledSimplex face_to_labeled(const Face& face, int r, int m);

// Membership of an (A_1..A_r) tuple in the symmetrized deleted join of family:
// exists a permutation pi with A_i in K_{pi(i)} for all i.
bool tuple_in_symm_family(const std::vector<std::vector<int>>& parts,
                          const std::vector<SimplicialComplex>& family);

// Precomputed membership oracle for repeated tuple queries (solver inner loop).
class SymmFamilyOracle {
  public:
    SymmFamilyOracle(const std::vector<SimplicialComplex>& family, int m);
    bool admits(const std::vector<std::uint64_t>& part_masks) const;

  private:
    std::vector<std::set<std::uint64_t>> masks_;
};

} // namespace fairdiv

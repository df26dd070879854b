#pragma once

#include "fairdiv/complexes.hpp"

#include <string>
#include <vector>

namespace fairdiv {

// Simplicial boundary matrix over F_p, sparse columns. Rows are (dim-1)-faces,
// columns are dim-faces, both in the deterministic order of faces_of_dim.
struct BoundaryMatrix {
    int dim = 0;
    int p = 2;
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<std::pair<std::size_t, int>>> columns; // (row, coeff mod p)

    std::size_t rank() const; // Gaussian elimination, deterministic pivoting
};

struct BettiProfile {
    int p = 2;
    std::vector<long long> reduced_betti; // beta~_0 .. beta~_top
    int connectivity = -1;                // largest c with beta~_i = 0 for i <= c

    long long alternating_sum() const;
};

struct ConnectivityReport {
    bool pass = false;
    int claimed = 0;
    bool path_connected = false;
    BettiProfile profile;
    std::string to_text() const;
};

// dim 0 gives the augmentation map (single all-ones row).
BoundaryMatrix boundary_matrix(const SimplicialComplex& K, int dim, int p);

BettiProfile betti_profile(const SimplicialComplex& K, int p);

// Pass iff beta~_i = 0 for all i <= claimed, and K is path-connected whenever
// claimed >= 0 (graph search, independent of the rank computation).
ConnectivityReport connectivity_certificate(const SimplicialComplex& K, int claimed, int p);

} // namespace fairdiv

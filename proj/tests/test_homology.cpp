#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fairdiv/complexes.hpp"
#include "fairdiv/homology.hpp"

#include <random>

using namespace fairdiv;

namespace {

SimplicialComplex triangle_boundary() {
    SimplicialComplex K;
    K.vertex_labels = ground_labels(3);
    K.facets = {{0, 1}, {0, 2}, {1, 2}};
    return K;
}

SimplicialComplex cone_over(const SimplicialComplex& K) {
    SimplicialComplex C = K;
    const int apex = C.num_vertices();
    C.vertex_labels.push_back("apex");
    if (C.facets.empty()) {
        C.facets.push_back({apex});
    } else {
        for (auto& f : C.facets) f.push_back(apex);
    }
    C.sort_canonical();
    return C;
}

std::vector<SimplicialComplex> gallery() {
    const auto full2 = bounded_subsets_complex(2, 2);
    return {
        triangle_boundary(),
        chessboard(3, 2),
        chessboard(4, 2),
        chessboard(4, 3),
        deleted_join({full2, full2}, 2),
        deleted_join({full2, full2, full2}, 2),
        g_constraint_complex(Graph::cube(1), 3),
        g_constraint_complex(Graph::cube(2), 2),
        bounded_subsets_complex(4, 2),
    };
}

} // namespace

TEST_CASE("boundary_matrix shapes and ranks") {
    const auto tri = triangle_boundary();
    const auto d1 = boundary_matrix(tri, 1, 2);
    CHECK(d1.rows == 3);
    CHECK(d1.cols == 3);
    CHECK(d1.rank() == 2);

    const auto d0 = boundary_matrix(tri, 0, 2);
    CHECK(d0.rows == 1);
    CHECK(d0.cols == 3);
    CHECK(d0.rank() == 1);

    CHECK(boundary_matrix(chessboard(3, 2), 1, 3).rank() == 5);
}

TEST_CASE("betti profiles of small complexes") {
    CHECK(betti_profile(triangle_boundary(), 2).reduced_betti == std::vector<long long>{0, 1});

    const auto full2 = bounded_subsets_complex(2, 2);
    CHECK(betti_profile(deleted_join({full2, full2}, 2), 2).reduced_betti ==
          std::vector<long long>{0, 1});
    CHECK(betti_profile(deleted_join({full2, full2, full2}, 2), 2).reduced_betti ==
          std::vector<long long>{0, 4});

    const auto full3 = bounded_subsets_complex(3, 3);
    CHECK(betti_profile(deleted_join({full3, full3}, 3), 2).reduced_betti ==
          std::vector<long long>{0, 0, 1});
}

TEST_CASE("chessboard betti checkpoints") {
    CHECK(betti_profile(chessboard(3, 2), 2).reduced_betti == std::vector<long long>{0, 1});
    CHECK(betti_profile(chessboard(4, 2), 2).reduced_betti == std::vector<long long>{0, 5});
    CHECK(betti_profile(chessboard(5, 3), 3).reduced_betti ==
          std::vector<long long>{0, 0, 14});
}

TEST_CASE("g-constraint complex betti checkpoints") {
    CHECK(betti_profile(g_constraint_complex(Graph::cube(1), 3), 2).reduced_betti ==
          std::vector<long long>{0, 0, 1});
    CHECK(betti_profile(g_constraint_complex(Graph::cube(2), 3), 2).reduced_betti ==
          std::vector<long long>{0, 0, 7});
}

TEST_CASE("connectivity_certificate") {
    const auto hexagon = chessboard(3, 2);
    CHECK(connectivity_certificate(hexagon, 0, 2).pass);
    CHECK_FALSE(connectivity_certificate(hexagon, 1, 2).pass);

    const auto full = bounded_subsets_complex(4, 4);
    for (int claim = -1; claim <= full.dim(); ++claim)
        CHECK(connectivity_certificate(full, claim, 2).pass);
}

TEST_CASE("cones have vanishing reduced homology, fuzzed") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        SimplicialComplex K;
        const int nv = 3 + static_cast<int>(rng() % 3);
        K.vertex_labels = ground_labels(nv);
        const int nf = 2 + static_cast<int>(rng() % 4);
        for (int i = 0; i < nf; ++i) {
            Face f;
            for (int v = 0; v < nv; ++v)
                if (rng() % 2) f.push_back(v);
            if (!f.empty()) K.facets.push_back(f);
        }
        if (K.facets.empty()) K.facets.push_back({0});
        K.sort_canonical();
        const auto profile = betti_profile(cone_over(K), 2);
        for (long long b : profile.reduced_betti) CHECK(b == 0);
    }
}

TEST_CASE("alternating betti sum equals reduced euler characteristic") {
    for (const auto& K : gallery()) {
        const auto profile = betti_profile(K, 2);
        CHECK(profile.alternating_sum() == K.reduced_euler());
    }
}

TEST_CASE("profiles agree across p in {2,3,5} on torsion-free gallery complexes") {
    for (const auto& K : gallery()) {
        const auto p2 = betti_profile(K, 2).reduced_betti;
        CHECK(betti_profile(K, 3).reduced_betti == p2);
        CHECK(betti_profile(K, 5).reduced_betti == p2);
    }
}

TEST_CASE("certificate text is stable and informative") {
    const auto rep = connectivity_certificate(chessboard(3, 2), 0, 2);
    CHECK(rep.to_text() ==
          "pass claim=0 path_connected=yes p=2 betti=[0,1] connectivity=0");
}

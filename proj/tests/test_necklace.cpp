#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fairdiv/complexes.hpp"
#include "fairdiv/necklace.hpp"

#include <random>

using namespace fairdiv;

namespace {

PartitionAllocation make_pa(std::vector<Rational> cuts, std::vector<int> alloc) {
    PartitionAllocation pa;
    pa.cuts = std::move(cuts);
    pa.allocation = std::move(alloc);
    return pa;
}

Rational rat(long long p, long long q) { return Rational(p, q); }

} // namespace

TEST_CASE("rational serialization round-trips") {
    for (const std::string s : {"0", "1", "-3", "1/4", "-7/12", "123456789/987654320"}) {
        CHECK(to_string(parse_rational(s)) == s);
    }
    CHECK(to_string(parse_rational("2/4")) == "1/2"); // normalized on parse
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("evaluate_share basics") {
    Necklace nk;
    nk.thieves = 2;
    nk.measures.push_back(Measure::uniform());

    SUBCASE("uniform halved") {
        const auto pa = make_pa({rat(1, 2)}, {0, 1});
        CHECK(evaluate_share(nk, pa, 0) == std::vector<Rational>{rat(1, 2)});
        CHECK(evaluate_share(nk, pa, 1) == std::vector<Rational>{rat(1, 2)});
    }
    SUBCASE("empty share is the zero vector") {
        const auto pa = make_pa({rat(1, 2)}, {0, 0});
        CHECK(evaluate_share(nk, pa, 1) == std::vector<Rational>{Rational(0)});
    }
    SUBCASE("density 2 on the left half") {
        Necklace skew;
        skew.thieves = 2;
        skew.measures.push_back(Measure({Rational(0), rat(1, 2), Rational(1)},
                                        {Rational(2), Rational(0)}));
        const auto pa = make_pa({rat(1, 4)}, {0, 1});
        CHECK(evaluate_share(skew, pa, 0) == std::vector<Rational>{rat(1, 2)});
    }
}

TEST_CASE("fairness_residual") {
    Necklace nk;
    nk.thieves = 2;
    nk.measures.push_back(Measure::uniform());
    CHECK(fairness_residual(nk, make_pa({rat(1, 2)}, {0, 1})) == Rational(0));
    CHECK(fairness_residual(nk, make_pa({rat(1, 2)}, {0, 0})) == rat(1, 2));

    Necklace three;
    three.thieves = 3;
    three.measures.push_back(Measure::uniform());
    CHECK(fairness_residual(three, make_pa({rat(1, 3), rat(2, 3)}, {0, 1, 2})) == Rational(0));
}

TEST_CASE("total mass conservation, fuzzed") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> nthieves(2, 5), npieces(1, 8), owner(0, 4);
    for (int trial = 0; trial < 50; ++trial) {
        const int r = nthieves(rng);
        const int m = npieces(rng);
        Necklace nk;
        nk.thieves = r;
        nk.measures.push_back(Measure::uniform());
        nk.measures.push_back(Measure({Rational(0), rat(1, 3), Rational(1)},
                                      {Rational(2), rat(1, 2)}));
        PartitionAllocation pa;
        std::vector<int> nums;
        for (int i = 0; i + 1 < m; ++i) nums.push_back(std::uniform_int_distribution<int>(0, 16)(rng));
        std::sort(nums.begin(), nums.end());
        for (int v : nums) pa.cuts.push_back(Rational(v, 16));
        for (int i = 0; i < m; ++i) pa.allocation.push_back(owner(rng) % r);

        std::vector<Rational> total(nk.measures.size(), Rational(0));
        for (int t = 0; t < r; ++t) {
            const auto share = evaluate_share(nk, pa, t);
            for (std::size_t j = 0; j < total.size(); ++j) total[j] += share[j];
        }
        for (std::size_t j = 0; j < total.size(); ++j)
            CHECK(total[j] == nk.measures[j].total_mass());
    }
}

TEST_CASE("fairness_residual is permutation covariant") {
    Necklace nk;
    nk.thieves = 3;
    nk.measures.push_back(Measure::uniform());
    const auto pa = make_pa({rat(1, 5), rat(2, 5)}, {0, 1, 2});
    auto relabeled = pa;
    for (int& o : relabeled.allocation) o = (o + 1) % 3;
    CHECK(fairness_residual(nk, pa) == fairness_residual(nk, relabeled));
}

TEST_CASE("ks_parameters") {
    CHECK(ks_parameters(4, 2) == std::pair<int, int>{1, 3});
    CHECK(ks_parameters(2, 3) == std::pair<int, int>{2, 0});
    CHECK(ks_parameters(3, 2) == std::pair<int, int>{1, 2});
    for (int r = 2; r <= 20; ++r)
        for (int n = 1; n <= 20; ++n) {
            const auto [k, s] = ks_parameters(r, n);
            CHECK(k * r + s == (r - 1) * n + 1);
            CHECK(s >= 0);
            CHECK(s < r);
        }
}

TEST_CASE("is_ks_equicardinal on explicit profiles") {
    // profile (2,2), r=2
    CHECK(is_ks_equicardinal(
        make_pa({rat(1, 4), rat(1, 2), rat(3, 4)}, {0, 1, 0, 1}), 2, 2, 0));
    // profile (2,2,2,1), r=4
    std::vector<Rational> six;
    for (int i = 1; i <= 6; ++i) six.push_back(Rational(i, 7));
    CHECK(is_ks_equicardinal(make_pa(six, {0, 1, 2, 3, 0, 1, 2}), 4, 1, 3));
    // profile (3,1), r=2
    CHECK_FALSE(is_ks_equicardinal(
        make_pa({rat(1, 4), rat(1, 2), rat(3, 4)}, {0, 1, 0, 0}), 2, 1, 1));
}

TEST_CASE("degenerate pieces are ignored by profiles") {
    const auto pa = make_pa({rat(1, 2), rat(1, 2)}, {0, 1, 0});
    CHECK(pa.degenerate_set() == std::vector<int>{1});
    CHECK(pa.cardinality_profile(2) == std::vector<int>{2, 0});
}

TEST_CASE("is_g_constraint") {
    CHECK(is_g_constraint(make_pa({rat(1, 4), rat(3, 4)}, {0, 1, 0}), Graph::complete(2)));

    Graph square;
    square.num_vertices = 4;
    square.add_edge(0, 1);
    square.add_edge(1, 2);
    square.add_edge(2, 3);
    square.add_edge(3, 0);
    CHECK_FALSE(is_g_constraint(make_pa({rat(1, 2)}, {0, 2}), square));
    std::vector<Rational> six;
    for (int i = 1; i <= 6; ++i) six.push_back(Rational(i, 7));
    CHECK(is_g_constraint(make_pa(six, {0, 1, 2, 3, 2, 1, 0}), square));
}

TEST_CASE("graph constraints on complete graphs always hold") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const int r = std::uniform_int_distribution<int>(2, 5)(rng);
        const int m = std::uniform_int_distribution<int>(1, 7)(rng);
        PartitionAllocation pa;
        for (int i = 1; i < m; ++i) pa.cuts.push_back(Rational(i, m));
        for (int i = 0; i < m; ++i)
            pa.allocation.push_back(std::uniform_int_distribution<int>(0, r - 1)(rng));
        CHECK(is_g_constraint(pa, Graph::complete(r)));
    }
}

TEST_CASE("discrete_to_continuous") {
    SUBCASE("ab") {
        const auto nk = discrete_to_continuous(BeadString::from_string("ab"), 2);
        REQUIRE(nk.n() == 2);
        CHECK(nk.measures[0].mass(Rational(0), rat(1, 2)) == Rational(1));
        CHECK(nk.measures[0].mass(rat(1, 2), Rational(1)) == Rational(0));
        CHECK(nk.measures[1].mass(rat(1, 2), Rational(1)) == Rational(1));
    }
    SUBCASE("aa") {
        const auto nk = discrete_to_continuous(BeadString::from_string("aa"), 2);
        REQUIRE(nk.n() == 1);
        for (int i = 0; i < 4; ++i)
            CHECK(nk.measures[0].mass(Rational(i, 4), Rational(i + 1, 4)) == rat(1, 4));
    }
    SUBCASE("abab puts half the a-mass on each a-cell") {
        const auto nk = discrete_to_continuous(BeadString::from_string("abab"), 2);
        CHECK(nk.measures[0].mass(Rational(0), rat(1, 4)) == rat(1, 2));
        CHECK(nk.measures[0].mass(rat(1, 2), rat(3, 4)) == rat(1, 2));
        CHECK(nk.measures[0].mass(rat(1, 4), rat(1, 2)) == Rational(0));
    }
}

TEST_CASE("round_to_beads") {
    SUBCASE("integer cuts are unchanged") {
        const auto beads = BeadString::from_string("aabb");
        const auto pa = make_pa({rat(1, 4), rat(3, 4)}, {0, 1, 0});
        const auto rounded = round_to_beads(beads, pa, 2);
        CHECK(rounded.cuts == pa.cuts);
        CHECK(rounded.allocation == pa.allocation);
    }
    SUBCASE("non-integer cuts slide to boundaries, fairness preserved") {
        const auto beads = BeadString::from_string("aaaa");
        const auto nk = discrete_to_continuous(beads, 2);
        const auto pa = make_pa({rat(1, 8), rat(5, 8)}, {0, 1, 0});
        REQUIRE(fairness_residual(nk, pa) == Rational(0));
        const auto rounded = round_to_beads(beads, pa, 2);
        CHECK(fairness_residual(nk, rounded) == Rational(0));
        CHECK(rounded.num_cuts() <= pa.num_cuts());
        for (const auto& c : rounded.cuts) CHECK(denominator(Rational(c * 4)) == 1);
    }
    SUBCASE("fair cut strictly inside a cell") {
        const auto beads = BeadString::from_string("aabb");
        const auto nk = discrete_to_continuous(beads, 2);
        // both cuts non-integer: thief 0 holds [0,1/8] u [3/8,3/4]
        const auto pa = make_pa({rat(1, 8), rat(3, 8), rat(3, 4)}, {0, 1, 0, 1});
        REQUIRE(fairness_residual(nk, pa) == Rational(0));
        const auto rounded = round_to_beads(beads, pa, 2);
        CHECK(fairness_residual(nk, rounded) == Rational(0));
        CHECK(rounded.num_cuts() <= 3);
        for (const auto& c : rounded.cuts) CHECK(denominator(Rational(c * 4)) == 1);
    }
}

TEST_CASE("is_prime_power") {
    for (int good : {2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 32, 81})
        CHECK(is_prime_power(good));
    for (int bad : {6, 10, 12, 14, 15, 18, 20, 21, 100})
        CHECK_FALSE(is_prime_power(bad));
}

TEST_CASE("allocation equivalence ignores degenerate pieces") {
    const auto a = make_pa({rat(1, 2), rat(1, 2)}, {0, 1, 1});
    const auto b = make_pa({rat(1, 2), rat(1, 2)}, {0, 0, 1});
    CHECK(a.equivalent_to(b));
    const auto c = make_pa({rat(1, 2), rat(1, 2)}, {1, 0, 0});
    CHECK_FALSE(a.equivalent_to(c));
}

from fractions import Fraction

import pytest

import fairdiv as fd


def test_solve_fair_classic():
    out = fd.solve_fair("aabb", 2)
    assert out is not None
    assert out["fairness_residual"] == "0"
    assert [Fraction(c) for c in out["cuts"]] == [Fraction(1, 4), Fraction(3, 4)]
    assert len(out["allocation"]) == len(out["cuts"]) + 1


def test_solve_fair_rejects_odd_multiplicities():
    with pytest.raises(ValueError):
        fd.solve_fair("aab", 2)


def test_equicardinal_profile():
    out = fd.solve_equicardinal("aabbcc", 2)
    assert out is not None
    k, s = fd.ks_parameters(2, 3)
    assert (k, s) == (2, 0)
    assert sorted(out["cardinality_profile"]) == [2, 2]


def test_g_constraint_on_square():
    out = fd.solve_g_constraint("aaaabbbb", 4, "cube:2")
    assert out is not None
    assert out["g_constraint_ok"]


def test_brute_force_matches_solver():
    allout = fd.brute_force("aabb", 2, 2)
    assert len(allout) == 2
    for pa in allout:
        assert [Fraction(c) for c in pa["cuts"]] == [Fraction(1, 4), Fraction(3, 4)]


def test_chessboard_betti():
    K = fd.chessboard(3, 2)
    assert K.dim() == 1
    assert fd.betti(K, 2) == [0, 1]  # a hexagon: one loop


def test_connectivity_certificate():
    K = fd.chessboard(5, 3)
    rep = fd.connectivity(K, 0, 2)
    assert rep["pass"]
    assert rep["path_connected"]


def test_unavoidable():
    caps = fd.bounded_subsets(7, 1)
    assert fd.is_collectively_unavoidable([caps, caps, caps, caps], 7)


def test_envy_free_uniform_measure():
    sol = fd.solve_envy_free(
        2,
        [(["0", "1"], ["1"])],
        [("contains_point", 0.5), ("longest",)],
        restarts=16,
        seed=7,
    )
    assert sol["reached"]
    assert sol["residual"] <= 1e-6
    assert sorted(sol["assignment"]) == [0, 1]


def test_envy_free_measure_preferences():
    bp = ["0", "1/2", "1"]
    dens = ["3/2", "1/2"]
    sol = fd.solve_envy_free(
        2,
        [(["0", "1"], ["1"])],
        [("measure", bp, dens), ("measure", bp, dens)],
        restarts=32,
        seed=3,
    )
    assert sol["reached"]
    assert all(m >= -1e-3 for m in sol["margins"])


def test_solve_ak_with_python_oracles():
    def wants_030(pieces):
        m = [-1.0, -1.0]
        for i, (lo, hi) in enumerate(pieces[:2]):
            m[i] = min(0.3 - lo, hi - 0.3)
        return m

    def wants_longest(pieces):
        best = max((hi - lo) for lo, hi in pieces)
        m = [-best, -best]
        for i, (lo, hi) in enumerate(pieces[:2]):
            m[i] = (hi - lo) - best
        return m

    sol = fd.solve_ak([wants_030, wants_longest], 2, restarts=16, seed=5)
    assert sol["reached"]
    assert all(m >= -1e-3 for m in sol["margins"])


def test_bad_rational_raises():
    with pytest.raises(Exception):
        fd.solve_envy_free(2, [(["0", "oops"], ["1"])], [("longest",), ("longest",)])

"""Fair necklace splitting and envy-free division.

Exact solvers for splitting bead strings and interval measures among r
thieves, the simplicial complexes that certify when such splittings exist,
and numerical solvers for envy-free division under preference oracles.
"""

try:
    from ._fairdiv import (
        SimplicialComplex,
        betti,
        bounded_subsets,
        brute_force,
        chessboard,
        connectivity,
        count_g_walks,
        deleted_join,
        g_constraint_complex,
        is_collectively_unavoidable,
        is_prime_power,
        is_r_unavoidable,
        ks_parameters,
        solve_ak,
        solve_envy_free,
        solve_equicardinal,
        solve_fair,
        solve_g_constraint,
        symm_deleted_join,
    )
except ImportError:  # development tree: extension sits in the build directory
    from _fairdiv import (
        SimplicialComplex,
        betti,
        bounded_subsets,
        brute_force,
        chessboard,
        connectivity,
        count_g_walks,
        deleted_join,
        g_constraint_complex,
        is_collectively_unavoidable,
        is_prime_power,
        is_r_unavoidable,
        ks_parameters,
        solve_ak,
        solve_envy_free,
        solve_equicardinal,
        solve_fair,
        solve_g_constraint,
        symm_deleted_join,
    )

__all__ = [
    "SimplicialComplex",
    "betti",
    "bounded_subsets",
    "brute_force",
    "chessboard",
    "connectivity",
    "count_g_walks",
    "deleted_join",
    "g_constraint_complex",
    "is_collectively_unavoidable",
    "is_prime_power",
    "is_r_unavoidable",
    "ks_parameters",
    "solve_ak",
    "solve_envy_free",
    "solve_equicardinal",
    "solve_fair",
    "solve_g_constraint",
    "symm_deleted_join",
]

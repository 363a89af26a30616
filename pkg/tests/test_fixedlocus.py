"""Tests for the fixed-locus table and the exponent-walk engine."""

import pytest

from k3lattices.fixedlocus import (
    FixedLocusProfile,
    count_check,
    fixed_locus_table,
    fixed_pair_search,
    lefschetz_check,
    linear_chain_edges,
    table_rows,
    walk_chain,
)
from k3lattices.fixtures import WALK_EDGES, WALK_FIXED, reference_walk

# the known placement of the thirteen isolated points on the reference
# configuration, grouped by local exponent pair, listed by carrier curves
PLACEMENT_26 = (("G1", "G2"), ("G5", "G6"), ("S", "T1"),
                ("T4", "T5"), ("T7", "T8"), ("T9",))
PLACEMENT_35 = (("G2", "G3"), ("G4", "G5"), ("T1", "T2"),
                ("T3", "T4"), ("T8",))
PLACEMENT_44 = (("G3", "G4"), ("T2", "T3"))


# --- classification table --------------------------------------------------

def test_table_point_counts():
    expected = {
        "U + K7": (2, 1, 0),
        "U(7) + K7": (2, 1, 0),
        "U + E8": (4, 3, 1),
        "U(7) + E8": (4, 3, 1),
        "U + E8 + A6": (6, 5, 2),
    }
    assert set(table_rows()) == set(expected)
    for name, counts in expected.items():
        profile = fixed_locus_table(name)
        assert (profile.n26, profile.n35, profile.n44) == counts


def test_table_totals():
    totals = [fixed_locus_table(name).points for name in table_rows()]
    assert totals == [3, 3, 8, 8, 13]


def test_table_matches_rank_formulas():
    for name in table_rows():
        p = fixed_locus_table(name)
        r = p.rank
        assert p.n26 == (r + 2) // 3 and (r + 2) % 3 == 0
        assert p.n35 == (r - 1) // 3 and (r - 1) % 3 == 0
        assert p.n44 == (r - 4) // 6 and (r - 4) % 6 == 0


def test_table_unknown_row():
    with pytest.raises(ValueError):
        fixed_locus_table("U + A6")


# --- Lefschetz consistency --------------------------------------------------

def test_lefschetz_all_rows():
    for name in table_rows():
        profile = fixed_locus_table(name)
        assert lefschetz_check(profile, 22 - profile.rank)


def test_lefschetz_rejects_corrupted_profile():
    bad = FixedLocusProfile("corrupted", 10, 5, 3, 1, (0,))
    assert not lefschetz_check(bad, 12)


def test_lefschetz_needs_six_block_rank():
    profile = fixed_locus_table("U + E8")
    with pytest.raises(ValueError):
        lefschetz_check(profile, 13)


# --- the reference walk ------------------------------------------------------

def test_reference_walk_is_consistent():
    walk = reference_walk()
    assert walk.consistent
    assert walk.conflicts == ()
    assert walk.fixed_curves == ("G7", "T6")
    assert walk.counts() == (6, 5, 2, 2)


def test_reference_walk_placement():
    walk = reference_walk()
    assert walk.isolated("P26") == PLACEMENT_26
    assert walk.isolated("P35") == PLACEMENT_35
    assert walk.isolated("P44") == PLACEMENT_44


def test_reference_walk_exponent_arithmetic():
    for point in reference_walk().points:
        a, b = point.exponents
        assert (a + b) % 7 == 1
        if point.kind != "curve":
            assert point.exponents in ((2, 6), (3, 5), (4, 4))


def test_reference_walk_matches_table_row():
    walk = reference_walk()
    assert count_check(walk, fixed_locus_table("U + E8 + A6"))
    assert not count_check(walk, fixed_locus_table("U + E8"))


def test_walk_rebuilt_from_raw_edges():
    walk = walk_chain(WALK_EDGES, WALK_FIXED)
    assert walk.consistent
    assert walk.counts() == (6, 5, 2, 2)


# --- small synthetic configurations -----------------------------------------

def test_single_fixed_curve_with_one_neighbor():
    walk = walk_chain([("A", "B")], ["A"])
    assert walk.consistent
    assert walk.counts() == (1, 0, 0, 1)
    isolated = walk.isolated("P26")
    assert isolated == (("B",),)
    curve_points = [p for p in walk.points if p.kind == "curve"]
    assert [(p.curves, p.exponents) for p in curve_points] \
        == [(("A", "B"), (0, 1))]


def test_adjacent_fixed_curves_conflict():
    walk = walk_chain([("A", "B")], ["A", "B"])
    assert not walk.consistent


def test_unseeded_component_is_flagged():
    walk = walk_chain(linear_chain_edges(3), [])
    assert not walk.consistent
    assert any("no exponent reaches" in c for c in walk.conflicts)


def test_overcrowded_free_curve_is_flagged():
    walk = walk_chain([("X", "A"), ("X", "B"), ("X", "C")], ["A", "B", "C"])
    assert not walk.consistent
    assert any("carries 3" in c for c in walk.conflicts)


def test_self_intersection_rejected():
    with pytest.raises(ValueError):
        walk_chain([("A", "A")], ["A"])


def test_empty_configuration():
    walk = walk_chain([], [])
    assert walk.consistent
    assert walk.counts() == (0, 0, 0, 0)
    assert not count_check(walk, fixed_locus_table("U + E8 + A6"))


# --- exhaustive chain placement ----------------------------------------------

def test_linear_chain_edges():
    assert linear_chain_edges(4) == (("C1", "C2"), ("C2", "C3"), ("C3", "C4"))


def test_fixed_pair_search_on_fifteen_chain():
    valid = fixed_pair_search(15)
    assert valid == [(3, 10), (4, 11), (5, 12), (6, 13)]
    assert all(q - p == 7 for p, q in valid)


def test_fixed_pair_separation_six_fails():
    edges = linear_chain_edges(15)
    walk = walk_chain(edges, ("C3", "C9"))
    assert not walk.consistent
    assert not count_check(walk, fixed_locus_table("U + E8 + A6"))


def test_fixed_pair_search_smaller_chains():
    # on an 8-chain the separation-7 placement needs both ends free of
    # overhang, which forces the pair onto the boundary positions
    assert fixed_pair_search(8) == [(1, 8)]
    assert fixed_pair_search(2) == []

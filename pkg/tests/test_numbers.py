"""Enumeration, closed forms, constructions, optimal/adversarial searches."""

import pytest

from rubbling import (
    Distribution,
    FamilySpec,
    NoFormulaError,
    PEBBLING,
    Quantity,
    RUBBLING,
    adversarial_number,
    build_family,
    characterize_path_solvable,
    closed_form,
    composition_count,
    compute_number,
    construction,
    enumerate_distributions,
    family_group,
    find_solvable,
    find_unsolvable,
    optimal_number,
    permute_counts,
    solvable,
)


# ---------------------------------------------------------------- quantity

def test_quantity_validation():
    assert Quantity("pebbling", 2).mode == PEBBLING
    assert Quantity("opt-rubbling").mode == RUBBLING
    assert Quantity("rubbling").adversarial
    assert not Quantity("opt-pebbling").adversarial
    with pytest.raises(ValueError):
        Quantity("opt-pebbling", 2)  # optimal quantities are t=1 only
    with pytest.raises(ValueError):
        Quantity("grubbling")
    with pytest.raises(ValueError):
        Quantity("pebbling", 0)


# -------------------------------------------------------------- enumeration

def test_composition_count_matches_enumeration():
    assert composition_count(3, 2) == 6
    assert composition_count(4, 0) == 1
    got = sum(1 for _ in enumerate_distributions(4, 3))
    assert got == composition_count(4, 3) == 20


def test_enumerate_with_symmetry_path3():
    reps = [d.counts for d in
            enumerate_distributions(3, 2, family_group(FamilySpec("path", 3)))]
    assert reps == [(0, 0, 2), (0, 1, 1), (0, 2, 0), (1, 0, 1)]


def test_enumerate_with_symmetry_cycle4():
    reps = [d.counts for d in
            enumerate_distributions(4, 2, family_group(FamilySpec("cycle", 4)))]
    assert reps == [(0, 0, 0, 2), (0, 0, 1, 1), (0, 1, 0, 1)]


def test_canonical_representatives_cover_all_orbits():
    group = family_group(FamilySpec("cycle", 4))
    reps = [d.counts for d in enumerate_distributions(4, 3, group)]
    # every distribution of size 3 must be reachable from exactly one rep
    seen = {}
    for rep in reps:
        for perm in group:
            image = permute_counts(rep, perm)
            assert seen.setdefault(image, rep) == rep
    assert len(seen) == composition_count(4, 3)
    # and each representative is the lexicographic minimum of its orbit
    for rep in reps:
        assert rep == min(permute_counts(rep, p) for p in group)


# -------------------------------------------------------------- closed forms

@pytest.mark.parametrize("n,value", [(3, 2), (4, 4), (5, 5), (6, 8), (7, 9), (8, 16)])
def test_closed_form_cycle_rubbling(n, value):
    assert closed_form(FamilySpec("cycle", n), Quantity("rubbling")) == value


@pytest.mark.parametrize("n,t,value", [
    (3, 1, 3), (4, 1, 4), (5, 1, 5), (6, 1, 8), (7, 1, 11),
    (3, 2, 5), (4, 2, 8), (5, 2, 9), (6, 2, 16),
])
def test_closed_form_cycle_pebbling(n, t, value):
    assert closed_form(FamilySpec("cycle", n), Quantity("pebbling", t)) == value


def test_closed_form_opt_tables():
    paths_f = [closed_form(FamilySpec("path", n), Quantity("opt-pebbling"))
               for n in range(1, 11)]
    assert paths_f == [1, 2, 2, 3, 4, 4, 5, 6, 6, 7]
    paths_r = [closed_form(FamilySpec("path", n), Quantity("opt-rubbling"))
               for n in range(1, 11)]
    assert paths_r == [1, 2, 2, 3, 3, 4, 4, 5, 5, 6]
    cycles_f = [closed_form(FamilySpec("cycle", n), Quantity("opt-pebbling"))
                for n in range(3, 11)]
    assert cycles_f == [2, 3, 4, 4, 5, 6, 6, 7]
    cycles_r = [closed_form(FamilySpec("cycle", n), Quantity("opt-rubbling"))
                for n in range(3, 11)]
    assert cycles_r == [2, 2, 3, 3, 4, 4, 5, 5]
    ladders = [closed_form(FamilySpec("ladder", n), Quantity("opt-rubbling"))
               for n in range(1, 7)]
    assert ladders == [2, 2, 3, 4, 4, 5]
    hs = [closed_form(FamilySpec("h", n), Quantity("opt-rubbling"))
          for n in range(2, 6)]
    assert hs == [3, 3, 4, 5]
    prisms = [closed_form(FamilySpec("prism", n), Quantity("opt-rubbling"))
              for n in range(3, 7)]
    assert prisms == [3, 3, 4, 4]
    mobius = [closed_form(FamilySpec("mobius", n), Quantity("opt-rubbling"))
              for n in range(3, 7)]
    assert mobius == [3, 3, 4, 4]


def test_closed_form_unknown_raises():
    with pytest.raises(NoFormulaError):
        closed_form(FamilySpec("path", 5), Quantity("pebbling"))
    with pytest.raises(NoFormulaError):
        closed_form(FamilySpec("ladder", 3), Quantity("rubbling"))
    with pytest.raises(NoFormulaError):
        closed_form(FamilySpec("h", 1), Quantity("opt-rubbling"))


# ------------------------------------------------------------- construction

def test_construction_path5():
    assert construction(FamilySpec("path", 5)).counts == (1, 0, 1, 0, 1)


def test_construction_ladders():
    g2 = build_family(FamilySpec("ladder", 2))
    assert construction(FamilySpec("ladder", 2)) == \
        Distribution.from_labels(g2, {"v1x": 1, "v2y": 1})
    g3 = build_family(FamilySpec("ladder", 3))
    assert construction(FamilySpec("ladder", 3)) == \
        Distribution.from_labels(g3, {"v1x": 1, "v3y": 2})


def test_construction_sizes_match_closed_form():
    specs = [FamilySpec("path", n) for n in range(1, 11)]
    specs += [FamilySpec("cycle", n) for n in range(3, 11)]
    specs += [FamilySpec("ladder", n) for n in range(1, 9)]
    specs += [FamilySpec("h", n) for n in range(2, 9)]
    specs += [FamilySpec("prism", n) for n in range(3, 9)]
    specs += [FamilySpec("mobius", n) for n in range(3, 9)]
    for spec in specs:
        want = closed_form(spec, Quantity("opt-rubbling"))
        assert construction(spec).size == want, spec


def test_construction_solvable_spot_checks():
    for spec in (FamilySpec("path", 7), FamilySpec("cycle", 6),
                 FamilySpec("ladder", 4), FamilySpec("h", 4),
                 FamilySpec("prism", 5), FamilySpec("mobius", 4)):
        g = build_family(spec)
        assert solvable(g, construction(spec), RUBBLING), spec


# ---------------------------------------------------------------- lem. path

def test_characterize_path_unique_for_k1():
    assert [d.counts for d in characterize_path_solvable(1)] == [(0, 2, 0)]


def test_characterize_rejects_bad_k():
    with pytest.raises(ValueError):
        characterize_path_solvable(0)


# ----------------------------------------------------------------- searches

def test_find_unsolvable_returns_lex_first_witness():
    g = build_family(FamilySpec("cycle", 4))
    d, root = find_unsolvable(g, 3)
    assert d.counts == (0, 0, 0, 3)
    assert root == 1  # smallest index that cannot be reached


def test_find_unsolvable_none_when_everything_solvable():
    g = build_family(FamilySpec("cycle", 4))
    assert find_unsolvable(g, 4) is None


def test_find_solvable_lex_first():
    g = build_family(FamilySpec("cycle", 5))
    d = find_solvable(g, 3)
    assert d.counts == (0, 0, 1, 0, 2)


def test_adversarial_number_small():
    g3 = build_family(FamilySpec("cycle", 3))
    group = family_group(FamilySpec("cycle", 3))
    res = adversarial_number(g3, RUBBLING, 1, group)
    assert res.value == 2
    assert res.witness.size == 1
    res = adversarial_number(g3, PEBBLING, 1, group)
    assert res.value == 3
    res = adversarial_number(g3, PEBBLING, 2, group)
    assert res.value == 5
    assert res.witness.size == 4
    assert res.witness_root is not None


def test_optimal_number_small():
    g = build_family(FamilySpec("path", 4))
    res = optimal_number(g, RUBBLING, family_group(FamilySpec("path", 4)))
    assert res.value == 3
    assert res.witness.size == 3
    assert solvable(g, res.witness, RUBBLING)


def test_compute_number_dispatch():
    g = build_family(FamilySpec("cycle", 5))
    group = family_group(FamilySpec("cycle", 5))
    assert compute_number(g, Quantity("rubbling"), group).value == 5
    assert compute_number(g, Quantity("opt-pebbling"), group).value == 4


def test_trivial_group_gives_same_numbers():
    g = build_family(FamilySpec("cycle", 5))
    group = family_group(FamilySpec("cycle", 5))
    assert adversarial_number(g, RUBBLING, 1, ()).value == \
        adversarial_number(g, RUBBLING, 1, group).value
    assert optimal_number(g, RUBBLING, ()).value == \
        optimal_number(g, RUBBLING, group).value


def test_workers_do_not_change_results():
    spec = FamilySpec("cycle", 5)
    g = build_family(spec)
    group = family_group(spec)
    one = adversarial_number(g, RUBBLING, 1, group, workers=1)
    two = adversarial_number(g, RUBBLING, 1, group, workers=2)
    assert (one.value, one.witness.counts, one.witness_root) == \
        (two.value, two.witness.counts, two.witness_root)
    o1 = optimal_number(g, RUBBLING, group, workers=1)
    o2 = optimal_number(g, RUBBLING, group, workers=3)
    assert (o1.value, o1.witness.counts) == (o2.value, o2.witness.counts)


def test_adversarial_witness_is_tight():
    # the witness one below the value must be unsolvable at its root,
    # and every distribution at the value itself must be solvable
    spec = FamilySpec("cycle", 4)
    g = build_family(spec)
    res = adversarial_number(g, RUBBLING, 1, family_group(spec))
    assert res.value == 4
    assert res.witness.size == 3
    assert not solvable(g, res.witness, RUBBLING)
    assert find_unsolvable(g, 4) is None

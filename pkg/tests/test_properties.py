"""Property-based tests for move invariants, enumeration, and the solver."""

from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from rubbling import (
    Distribution,
    FamilySpec,
    PEBBLING,
    Query,
    RUBBLING,
    apply_move,
    build_family,
    family_group,
    legal_moves,
    permute_counts,
    reachable,
    smooth_fully,
    verify_certificate,
    weight,
)

PROPERTY_SETTINGS = settings(
    max_examples=120,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)

_SPECS = (
    FamilySpec("path", 4),
    FamilySpec("path", 6),
    FamilySpec("cycle", 3),
    FamilySpec("cycle", 5),
    FamilySpec("cycle", 6),
    FamilySpec("ladder", 3),
    FamilySpec("prism", 3),
    FamilySpec("mobius", 4),
    FamilySpec("h", 3),
)
_GRAPHS = {spec: build_family(spec) for spec in _SPECS}


@st.composite
def graph_and_counts(draw, max_total: int = 8):
    spec = draw(st.sampled_from(_SPECS))
    g = _GRAPHS[spec]
    total = draw(st.integers(min_value=0, max_value=max_total))
    counts = [0] * g.n
    for _ in range(total):
        counts[draw(st.integers(min_value=0, max_value=g.n - 1))] += 1
    return spec, g, tuple(counts)


@PROPERTY_SETTINGS
@given(graph_and_counts(), st.randoms(use_true_random=False))
def test_legal_moves_apply_and_shrink(pair, rng):
    _, g, counts = pair
    d = Distribution(counts)
    moves = legal_moves(g, d, RUBBLING)
    if not moves:
        return
    m = moves[rng.randrange(len(moves))]
    d2 = apply_move(g, d, m)
    assert d2.size == d.size - 1
    assert all(c >= 0 for c in d2.counts)


@PROPERTY_SETTINGS
@given(graph_and_counts(), st.randoms(use_true_random=False))
def test_weight_never_increases(pair, rng):
    _, g, counts = pair
    d = Distribution(counts)
    moves = legal_moves(g, d, RUBBLING)
    if not moves:
        return
    m = moves[rng.randrange(len(moves))]
    d2 = apply_move(g, d, m)
    root = rng.randrange(g.n)
    assert weight(g, d2, root) <= weight(g, d, root)


@PROPERTY_SETTINGS
@given(graph_and_counts())
def test_weight_additive_over_vertices(pair):
    _, g, counts = pair
    d = Distribution(counts)
    total = Fraction(0)
    for v, c in enumerate(counts):
        single = [0] * g.n
        single[v] = c
        total += weight(g, Distribution(tuple(single)), 0)
    assert weight(g, d, 0) == total


@PROPERTY_SETTINGS
@given(graph_and_counts(max_total=6), st.integers(min_value=0, max_value=20),
       st.randoms(use_true_random=False))
def test_reachability_monotone_in_pebbles(pair, extra_seed, rng):
    _, g, counts = pair
    root = rng.randrange(g.n)
    mode = rng.choice((PEBBLING, RUBBLING))
    before = reachable(Query(g, Distribution(counts), root, 1, mode)).decision
    grown = list(counts)
    grown[extra_seed % g.n] += 1 + extra_seed % 3
    after = reachable(Query(g, Distribution(tuple(grown)), root, 1, mode)).decision
    assert after or not before


@PROPERTY_SETTINGS
@given(graph_and_counts(max_total=6), st.randoms(use_true_random=False))
def test_positive_decisions_carry_replayable_certificates(pair, rng):
    _, g, counts = pair
    root = rng.randrange(g.n)
    t = rng.choice((1, 2))
    mode = rng.choice((PEBBLING, RUBBLING))
    res = reachable(Query(g, Distribution(counts), root, t, mode))
    if res.decision:
        rep = verify_certificate(g, res.certificate, mode)
        assert rep.valid
        assert rep.final[root] >= t


@PROPERTY_SETTINGS
@given(graph_and_counts(max_total=6), st.randoms(use_true_random=False))
def test_pebbling_decisions_are_a_subset_of_rubbling(pair, rng):
    _, g, counts = pair
    root = rng.randrange(g.n)
    if reachable(Query(g, Distribution(counts), root, 1, PEBBLING)).decision:
        assert reachable(Query(g, Distribution(counts), root, 1, RUBBLING)).decision


@PROPERTY_SETTINGS
@given(graph_and_counts())
def test_smooth_fully_fixpoint_and_size(pair):
    spec, g, counts = pair
    if spec.family == "cycle":
        # on cycles the orbit may never smooth (every vertex has degree 2),
        # in which case the iteration cap is the contract
        try:
            d = smooth_fully(g, Distribution(counts))
        except RuntimeError:
            return
    else:
        d = smooth_fully(g, Distribution(counts))
    assert d.size == sum(counts)
    for v in range(g.n):
        if g.degree(v) == 2:
            assert d[v] <= 2


@PROPERTY_SETTINGS
@given(graph_and_counts(max_total=5))
def test_symmetry_images_have_equal_reachability(pair):
    spec, g, counts = pair
    group = family_group(spec)
    if len(group) < 2:
        return
    perm = group[1]
    moved = permute_counts(counts, perm)
    for root in range(g.n):
        a = reachable(Query(g, Distribution(counts), root, 1, RUBBLING)).decision
        b = reachable(Query(g, Distribution(moved), perm[root], 1, RUBBLING)).decision
        assert a == b

"""Re-derivation suites: recompute every number from scratch and compare.

Each suite returns CheckRow records; nothing here consults a formula to
*produce* a search result -- formulas and searches are computed on separate
paths and compared at the end, so a disagreement in either direction fails.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .graphs import (
    FamilySpec,
    Graph,
    QuotientMap,
    build_family,
    distance_classes,
    quotient,
)
from .numbers import (
    Quantity,
    adversarial_number,
    closed_form,
    compute_number,
    construction,
    family_group,
    characterize_path_solvable,
    optimal_number,
)
from .pebbles import (
    Distribution,
    PEBBLING,
    RUBBLING,
    legal_moves,
    apply_move,
    quotient_distribution,
    smoothing_move,
    verify_certificate,
    weight,
)
from .solver import Query, RootSearch, acyclic_reachable, reachable, solvable, thread_restricted_equivalence

SUITES = ("formulas", "lempath", "reduction", "constructions", "properties")

_SEED = 874131


@dataclass
class CheckRow:
    suite: str
    name: str
    ok: bool
    expected: object = None
    actual: object = None
    detail: str = ""
    elapsed_ms: int = 0


def _timed(suite, name, expected, fn) -> CheckRow:
    t0 = time.perf_counter()
    actual, detail = fn()
    ms = int((time.perf_counter() - t0) * 1000)
    return CheckRow(suite, name, actual == expected, expected, actual, detail, ms)


# ---------------------------------------------------------------- formulas

def _formula_instances(extended: bool):
    """(spec, quantity) pairs whose computed value must match the closed form."""
    out = []
    top = 8 if extended else 7
    for n in range(3, top + 1):
        out.append((FamilySpec("cycle", n), Quantity("rubbling")))
    for t in (1, 2):
        for n in range(3, 7):
            out.append((FamilySpec("cycle", n), Quantity("pebbling", t)))
    for n in range(1, 11):
        out.append((FamilySpec("path", n), Quantity("opt-pebbling")))
        out.append((FamilySpec("path", n), Quantity("opt-rubbling")))
    for n in range(3, 11):
        out.append((FamilySpec("cycle", n), Quantity("opt-pebbling")))
        out.append((FamilySpec("cycle", n), Quantity("opt-rubbling")))
    for n in range(1, 7):
        out.append((FamilySpec("ladder", n), Quantity("opt-rubbling")))
    for n in range(2, 6):
        out.append((FamilySpec("h", n), Quantity("opt-rubbling")))
    for n in range(3, 7):
        out.append((FamilySpec("prism", n), Quantity("opt-rubbling")))
        out.append((FamilySpec("mobius", n), Quantity("opt-rubbling")))
    return out


def suite_formulas(extended: bool = False, workers: int = 1, progress=None):
    rows = []
    for spec, q in _formula_instances(extended):
        g = build_family(spec)
        group = family_group(spec)
        expected = closed_form(spec, q)

        def compute(spec=spec, q=q, g=g, group=group):
            res = compute_number(g, q, group, workers, progress)
            ok_witness = _witness_checks(g, q, res)
            return res.value, ok_witness

        name = f"{spec} {q.kind}" + (f" t={q.t}" if q.t != 1 else "")
        row = _timed("formulas", name, expected, compute)
        if row.ok and row.detail:
            row.ok = False  # witness validation failed
        rows.append(row)
    # the Moebius values are defined by agreement with the prisms; check the
    # two *computed* values against each other as well
    for n in range(3, 7):
        gm = build_family(FamilySpec("mobius", n))
        gp = build_family(FamilySpec("prism", n))
        vm = optimal_number(gm, RUBBLING, family_group(FamilySpec("mobius", n)), workers).value
        vp = optimal_number(gp, RUBBLING, family_group(FamilySpec("prism", n)), workers).value
        rows.append(CheckRow("formulas", f"mobius:{n} equals prism:{n} (opt-rubbling)",
                             vm == vp, vp, vm))
    return rows


def _witness_checks(g: Graph, q: Quantity, res) -> str:
    """Validate the witness that comes with a NumberResult; '' if fine."""
    d = res.witness
    if q.adversarial:
        if d.size != res.value - 1:
            return f"witness size {d.size} != value-1 {res.value - 1}"
        rs = RootSearch(g, res.witness_root, q.mode)
        if rs.search(d.counts, q.t) is not None:
            return "claimed unsolvable witness is solvable"
    else:
        if d.size != res.value:
            return f"witness size {d.size} != value {res.value}"
        for root in range(g.n):
            raw = RootSearch(g, root, q.mode).search(d.counts)
            if raw is None:
                return f"claimed solvable witness fails root {root}"
    return ""


# ----------------------------------------------------------------- lempath

def suite_lempath(ks=(1, 2, 3)):
    """On the 3k-vertex path, exactly one size-2k distribution is solvable
    under pebbling-only moves: doubles on v_2, v_5, v_8, ..."""
    rows = []
    for k in ks:
        n = 3 * k
        expected = [tuple(2 if i % 3 == 1 else 0 for i in range(n))]

        def compute(k=k):
            sols = [d.counts for d in characterize_path_solvable(k)]
            return sols, f"{len(sols)} solvable of size {2 * k} on path:{n}"

        rows.append(_timed("lempath", f"path:{n} size-{2 * k} pebbling-solvable set",
                           expected, compute))
    return rows


# --------------------------------------------------------------- reduction

def suite_reduction(workers: int = 1):
    """The odd-cycle rubbling number equals the 2-fold pebbling number of the
    cycle two shorter -- both sides recomputed by search."""
    rows = []
    for n in (2, 3):
        odd = FamilySpec("cycle", 2 * n + 1)
        small = FamilySpec("cycle", 2 * n - 1)

        def compute(odd=odd, small=small):
            lhs = adversarial_number(build_family(odd), RUBBLING, 1,
                                     family_group(odd), workers).value
            rhs = adversarial_number(build_family(small), PEBBLING, 2,
                                     family_group(small), workers).value
            return lhs, f"rubbling {odd} = {lhs}, 2-fold pebbling {small} = {rhs}"

        rhs_val = adversarial_number(build_family(small), PEBBLING, 2,
                                     family_group(small), workers).value
        rows.append(_timed("reduction", f"rubbling {odd} == 2-fold pebbling {small}",
                           rhs_val, compute))
    return rows


# ----------------------------------------------------------- constructions

def _construction_instances():
    out = []
    for n in range(1, 11):
        out.append(FamilySpec("path", n))
    for n in range(3, 11):
        out.append(FamilySpec("cycle", n))
    for n in range(1, 7):
        out.append(FamilySpec("ladder", n))
    for n in range(2, 6):
        out.append(FamilySpec("h", n))
    for n in range(3, 7):
        out.append(FamilySpec("prism", n))
        out.append(FamilySpec("mobius", n))
    return out


def suite_constructions():
    """Every tabulated optimal-rubbling construction has the closed-form size
    and is confirmed solvable by the solver."""
    rows = []
    for spec in _construction_instances():
        g = build_family(spec)
        want = closed_form(spec, Quantity("opt-rubbling"))

        def compute(spec=spec, g=g, want=want):
            d = construction(spec)
            if d.size != want:
                return f"size {d.size}", f"expected size {want}"
            if not solvable(g, d, RUBBLING):
                return "unsolvable", f"construction {d.counts} fails some root"
            return "ok", f"size {d.size}, solvable"

        rows.append(_timed("constructions", f"{spec} construction", "ok", compute))
    return rows


# -------------------------------------------------------------- properties

def _property_instances(max_param: int = 6):
    specs = []
    for n in range(1, max_param + 1):
        specs.append(FamilySpec("path", n))
        specs.append(FamilySpec("ladder", n))
        specs.append(FamilySpec("h", n))
    for n in range(3, max_param + 1):
        specs.append(FamilySpec("cycle", n))
        specs.append(FamilySpec("prism", n))
        specs.append(FamilySpec("mobius", n))
    return [(s, build_family(s)) for s in specs]


def _small_instances(max_vertices: int = 8):
    specs = []
    for n in range(1, 9):
        specs.append(FamilySpec("path", n))
    for n in range(3, 9):
        specs.append(FamilySpec("cycle", n))
    for n in range(1, 5):
        specs.append(FamilySpec("ladder", n))
    for n in (3, 4):
        specs.append(FamilySpec("prism", n))
        specs.append(FamilySpec("mobius", n))
    for n in (1, 2, 3):
        specs.append(FamilySpec("h", n))
    out = []
    for s in specs:
        g = build_family(s)
        if g.n <= max_vertices:
            out.append((s, g))
    return out


def _random_distribution(rng, n, size):
    counts = [0] * n
    for _ in range(size):
        counts[rng.randrange(n)] += 1
    return Distribution(tuple(counts))


def check_weight_monotone(trials: int = 10000) -> CheckRow:
    """Random legal moves never increase the weight against any root."""
    t0 = time.perf_counter()
    rng = random.Random(_SEED)
    instances = _property_instances()
    kernels = {}
    done = 0
    bad = ""
    while done < trials and not bad:
        spec, g = instances[rng.randrange(len(instances))]
        d = _random_distribution(rng, g.n, rng.randint(2, 10))
        for _step in range(8):
            moves = legal_moves(g, d, RUBBLING)
            if not moves:
                break
            m = moves[rng.randrange(len(moves))]
            d2 = apply_move(g, d, m)
            ks = kernels.setdefault(spec, [RootSearch(g, r, RUBBLING) for r in range(g.n)])
            for r in range(g.n):
                if ks[r].weight_scaled(d2.counts) > ks[r].weight_scaled(d.counts):
                    bad = f"{spec}: move {m} raised weight at root {r} from {d.counts}"
                    break
            r = rng.randrange(g.n)
            if weight(g, d2, r) > weight(g, d, r):
                bad = f"{spec}: exact weight at root {r} rose across {m}"
            done += 1
            if done >= trials or bad:
                break
            d = d2
    ms = int((time.perf_counter() - t0) * 1000)
    return CheckRow("properties", "weight non-increase under random legal moves",
                    not bad, 0, 0 if not bad else 1,
                    bad or f"{done} moves checked", ms)


def check_reachability_monotone(trials: int = 400) -> CheckRow:
    """Adding pebbles never turns a reachable query unreachable; positive
    decisions must come with a certificate that replays."""
    t0 = time.perf_counter()
    rng = random.Random(_SEED + 1)
    instances = _property_instances()
    bad = ""
    for _ in range(trials):
        spec, g = instances[rng.randrange(len(instances))]
        d = _random_distribution(rng, g.n, rng.randint(0, 6))
        root = rng.randrange(g.n)
        t = rng.choice((1, 2))
        mode = rng.choice((PEBBLING, RUBBLING))
        res = reachable(Query(g, d, root, t, mode))
        if res.decision:
            rep = verify_certificate(g, res.certificate, mode)
            if not rep.valid:
                bad = f"{spec}: certificate invalid: {rep.message}"
                break
        counts = list(d.counts)
        for _ in range(rng.randint(1, 3)):
            counts[rng.randrange(g.n)] += 1
        res2 = reachable(Query(g, Distribution(tuple(counts)), root, t, mode))
        if res.decision and not res2.decision:
            bad = f"{spec}: adding pebbles lost reachability at root {root}"
            break
        if mode == PEBBLING and res.decision:
            if not reachable(Query(g, d, root, t, RUBBLING)).decision:
                bad = f"{spec}: pebbling-reachable but not rubbling-reachable"
                break
    ms = int((time.perf_counter() - t0) * 1000)
    return CheckRow("properties", "reachability monotone under pebble additions",
                    not bad, "", bad, bad or f"{trials} trials", ms)


def _distributions_with_pile(n: int, v: int, lo: int, hi: int, total_cap: int):
    """All count vectors with counts[v] in lo..hi and total <= total_cap."""
    from .numbers import _compositions
    rest_idx = [u for u in range(n) if u != v]
    for pile in range(lo, hi + 1):
        for rest_total in range(0, total_cap - pile + 1):
            for rest in _compositions(n - 1, rest_total):
                counts = [0] * n
                counts[v] = pile
                for j, u in enumerate(rest_idx):
                    counts[u] = rest[j]
                yield tuple(counts)


def check_smoothing_preserves(max_size: int = 6) -> CheckRow:
    """Exhaustive at small scale: a smoothing move never destroys
    t-reachability (t in {1,2}), in either move system."""
    t0 = time.perf_counter()
    bad = ""
    checked = 0
    for spec, g in _small_instances(8):
        deg2 = [v for v in range(g.n) if g.degree(v) == 2]
        if not deg2:
            continue
        kernels = {m: [RootSearch(g, r, m) for r in range(g.n)]
                   for m in (PEBBLING, RUBBLING)}
        for v in deg2:
            for counts in _distributions_with_pile(g.n, v, 3, max_size, max_size):
                d2 = smoothing_move(g, Distribution(counts), v)
                for mode in (PEBBLING, RUBBLING):
                    ks = kernels[mode]
                    for u in range(g.n):
                        if u == v:
                            continue
                        for t in (1, 2):
                            if ks[u].search(counts, t) is not None:
                                checked += 1
                                if ks[u].search(d2.counts, t) is None:
                                    bad = (f"{spec}: smoothing at {v} broke "
                                           f"{t}-reachability of {u} from {counts} ({mode})")
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    ms = int((time.perf_counter() - t0) * 1000)
    return CheckRow("properties", "smoothing preserves t-reachability",
                    not bad, "", bad, bad or f"{checked} reachable cases preserved", ms)


def _collapse_cases():
    """(graph, quotient map) pairs whose collapses are checked."""
    cases = []
    for n in (2, 3, 4):
        g = build_family(FamilySpec("ladder", n))
        cases.append((f"ladder:{n} distance classes", g, distance_classes(g, 0)))
    for n in (3, 4):
        g = build_family(FamilySpec("prism", n))
        cases.append((f"prism:{n} column pairs", g,
                      QuotientMap(tuple((i, n + i) for i in range(n)))))
    g = build_family(FamilySpec("cycle", 5))
    cases.append(("cycle:5 three-block collapse", g, QuotientMap(((4, 0, 1), (2,), (3,)))))
    rng = random.Random(_SEED + 2)
    for spec in (FamilySpec("path", 4), FamilySpec("cycle", 6), FamilySpec("mobius", 3)):
        g = build_family(spec)
        for _ in range(3):
            k = rng.randint(2, g.n - 1)
            blocks = [[] for _ in range(k)]
            for v in range(g.n):
                blocks[rng.randrange(k)].append(v)
            blocks = [b for b in blocks if b]
            cases.append((f"{spec} random {len(blocks)}-block collapse", g,
                          QuotientMap(tuple(tuple(b) for b in blocks))))
    return cases


def check_collapsing(max_size: int = 4, samples: int = 150) -> CheckRow:
    """Collapsing a partition preserves per-root reachability (both modes):
    if u is reachable in G then phi(u) is reachable in the quotient."""
    t0 = time.perf_counter()
    from .numbers import _compositions
    rng = random.Random(_SEED + 3)
    bad = ""
    checked = 0
    for name, g, qmap in _collapse_cases():
        h = quotient(g, qmap)
        phi = [qmap.phi(v) for v in range(g.n)]
        gks = {m: [RootSearch(g, r, m) for r in range(g.n)] for m in (PEBBLING, RUBBLING)}
        hks = {m: [RootSearch(h, r, m) for r in range(h.n)] for m in (PEBBLING, RUBBLING)}
        pool = [c for m in range(max_size + 1) for c in _compositions(g.n, m)]
        extra = []
        for _ in range(samples // 10):
            extra.append(_random_distribution(rng, g.n, rng.randint(5, 7)).counts)
        for counts in pool + extra:
            dq = quotient_distribution(Distribution(counts), qmap)
            for mode in (PEBBLING, RUBBLING):
                for u in range(g.n):
                    if gks[mode][u].search(counts) is not None:
                        checked += 1
                        if hks[mode][phi[u]].search(dq.counts) is None:
                            bad = (f"{name}: {counts} reaches {u} in G but quotient "
                                   f"misses block {phi[u]} ({mode})")
                            break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    ms = int((time.perf_counter() - t0) * 1000)
    return CheckRow("properties", "collapsing preserves reachability",
                    not bad, "", bad, bad or f"{checked} reachable cases preserved", ms)


def check_nocycle_agreement() -> CheckRow:
    """Restricting to acyclic move sequences never changes the decision."""
    t0 = time.perf_counter()
    from .numbers import _compositions
    bad = ""
    checked = 0
    matrix = [(FamilySpec("path", 3), 4), (FamilySpec("path", 4), 4),
              (FamilySpec("cycle", 3), 4), (FamilySpec("cycle", 4), 4),
              (FamilySpec("cycle", 5), 3), (FamilySpec("h", 2), 3)]
    for spec, max_size in matrix:
        g = build_family(spec)
        for m in range(0, max_size + 1):
            for counts in _compositions(g.n, m):
                d = Distribution(counts)
                for mode in (PEBBLING, RUBBLING):
                    for root in range(g.n):
                        for t in (1, 2):
                            q = Query(g, d, root, t, mode)
                            a = reachable(q).decision
                            b = acyclic_reachable(q)
                            checked += 1
                            if a != b:
                                bad = (f"{spec}: {counts} root {root} t={t} {mode}: "
                                       f"full search {a}, acyclic search {b}")
                                return CheckRow("properties", "acyclic restriction agrees",
                                                False, "", bad, bad,
                                                int((time.perf_counter() - t0) * 1000))
    ms = int((time.perf_counter() - t0) * 1000)
    return CheckRow("properties", "acyclic restriction agrees",
                    True, "", "", f"{checked} decisions agree", ms)


def check_thread_equivalence() -> CheckRow:
    """Banning strict moves onto a degree-2 path never changes off-thread
    1-reachability; exhaustive at small sizes."""
    t0 = time.perf_counter()
    from .numbers import _compositions
    bad = ""
    checked = 0
    cases = [
        (FamilySpec("cycle", 5), frozenset((1,)), 5),
        (FamilySpec("cycle", 5), frozenset((1, 2)), 5),
        (FamilySpec("cycle", 7), frozenset((1, 2, 3)), 4),
        (FamilySpec("path", 6), frozenset((2, 3)), 5),
    ]
    for spec, thread, max_size in cases:
        g = build_family(spec)
        for m in range(0, max_size + 1):
            for counts in _compositions(g.n, m):
                d = Distribution(counts)
                for x in range(g.n):
                    if x in thread:
                        continue
                    restricted = thread_restricted_equivalence(g, thread, d, x)
                    full = reachable(Query(g, d, x, 1, RUBBLING)).decision
                    checked += 1
                    if restricted != full:
                        bad = (f"{spec} thread {sorted(thread)}: {counts} at {x}: "
                               f"restricted {restricted} != full {full}")
                        return CheckRow("properties", "thread restriction equivalent",
                                        False, "", bad, bad,
                                        int((time.perf_counter() - t0) * 1000))
    ms = int((time.perf_counter() - t0) * 1000)
    return CheckRow("properties", "thread restriction equivalent",
                    True, "", "", f"{checked} decisions agree", ms)


def check_bounds_sandwich(workers: int = 1) -> CheckRow:
    """2^diameter <= rubbling number <= pebbling number, recomputed by scan."""
    t0 = time.perf_counter()
    bad = ""
    details = []
    specs = [FamilySpec("cycle", n) for n in range(3, 7)]
    specs += [FamilySpec("path", n) for n in range(2, 6)]
    for spec in specs:
        g = build_family(spec)
        group = family_group(spec)
        rho = adversarial_number(g, RUBBLING, 1, group, workers).value
        f = adversarial_number(g, PEBBLING, 1, group, workers).value
        lo = 1 << g.diameter()
        details.append(f"{spec}: {lo} <= {rho} <= {f}")
        if not lo <= rho <= f:
            bad = f"{spec}: sandwich violated: 2^diam={lo}, rubbling={rho}, pebbling={f}"
            break
    ms = int((time.perf_counter() - t0) * 1000)
    return CheckRow("properties", "bound sandwich 2^diam <= rubbling <= pebbling",
                    not bad, "", bad, bad or "; ".join(details), ms)


def check_smooth_path_unreachable() -> CheckRow:
    """On paths, a smooth distribution with at most 2 on each endpoint cannot
    move 2 pebbles onto an empty endpoint with pebbling moves (exhaustive)."""
    t0 = time.perf_counter()
    from itertools import product
    bad = ""
    checked = 0
    for n in range(2, 9):
        g = build_family(FamilySpec("path", n))
        ends = [RootSearch(g, 0, PEBBLING), RootSearch(g, n - 1, PEBBLING)]
        for counts in product((0, 1, 2), repeat=n):
            for e, rs in zip((0, n - 1), ends):
                if counts[e] == 0:
                    checked += 1
                    if rs.search(counts, 2) is not None:
                        bad = f"path:{n}: {counts} moves 2 pebbles onto empty endpoint {e}"
                        break
            if bad:
                break
        if bad:
            break
    ms = int((time.perf_counter() - t0) * 1000)
    return CheckRow("properties", "smooth path: empty endpoint not 2-reachable",
                    not bad, "", bad, bad or f"{checked} cases unreachable", ms)


def suite_properties(workers: int = 1):
    return [
        check_weight_monotone(),
        check_reachability_monotone(),
        check_smoothing_preserves(),
        check_collapsing(),
        check_nocycle_agreement(),
        check_thread_equivalence(),
        check_bounds_sandwich(workers),
        check_smooth_path_unreachable(),
    ]


def run_suites(names=SUITES, extended: bool = False, workers: int = 1, progress=None):
    rows = []
    for name in names:
        if name == "formulas":
            rows.extend(suite_formulas(extended, workers, progress))
        elif name == "lempath":
            rows.extend(suite_lempath())
        elif name == "reduction":
            rows.extend(suite_reduction(workers))
        elif name == "constructions":
            rows.extend(suite_constructions())
        elif name == "properties":
            rows.extend(suite_properties(workers))
        else:
            raise ValueError(f"unknown suite {name!r}; expected one of {SUITES}")
    return rows

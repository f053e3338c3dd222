"""Pebbling and rubbling numbers by symmetry-reduced exhaustive search.

Four quantities are computed from scratch (no formula is consulted):

* "pebbling" / "rubbling": the adversarial t-fold numbers -- the least m such
  that *every* size-m distribution can put t pebbles on *every* root;
* "opt-pebbling" / "opt-rubbling": the optimal numbers -- the least size of a
  single distribution from which every root is 1-reachable.

Known closed forms for the supported families are available separately via
closed_form(), and explicit optimal-rubbling constructions via
construction(); the verification suites cross-check all three.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from multiprocessing import get_context

from .graphs import FamilySpec, Graph, automorphism_generators, build_family, expand_group
from .pebbles import Distribution, PEBBLING, RUBBLING, MODES
from .solver import RootSearch

QUANTITIES = ("pebbling", "rubbling", "opt-pebbling", "opt-rubbling")


class NoFormulaError(LookupError):
    """Raised when no closed form is on record for a (family, quantity) pair."""


@dataclass(frozen=True)
class Quantity:
    """What to compute: kind plus pebble target t (adversarial kinds only)."""

    kind: str
    t: int = 1

    def __post_init__(self):
        if self.kind not in QUANTITIES:
            raise ValueError(f"unknown quantity {self.kind!r}; expected one of {QUANTITIES}")
        if not isinstance(self.t, int) or self.t < 1:
            raise ValueError(f"t must be a positive integer, got {self.t!r}")
        if self.kind.startswith("opt-") and self.t != 1:
            raise ValueError("optimal quantities are defined for t=1 only")

    @property
    def mode(self) -> str:
        return RUBBLING if self.kind.endswith("rubbling") else PEBBLING

    @property
    def adversarial(self) -> bool:
        return not self.kind.startswith("opt-")


@dataclass(frozen=True)
class NumberResult:
    """A computed number plus its defining witness.

    For optimal kinds the witness is a smallest solvable distribution; for
    adversarial kinds it is an unsolvable distribution of size value-1
    together with the root it fails for.
    """

    value: int
    witness: Distribution
    witness_root: int | None = None


def _compositions(n: int, m: int):
    """All ways to place m pebbles on n vertices, in lexicographic order."""
    if n == 1:
        yield (m,)
        return
    total = m + n - 1
    for bars in combinations(range(total), n - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total - prev - 1)
        yield tuple(out)


def composition_count(n: int, m: int) -> int:
    return math.comb(m + n - 1, n - 1)


def _inverse_perms(n: int, perms):
    """Inverses of all non-identity group elements, for fast orbit expansion."""
    ident = tuple(range(n))
    out = []
    for p in perms:
        if tuple(p) == ident:
            continue
        inv = [0] * n
        for i, pi in enumerate(p):
            inv[pi] = i
        out.append(tuple(inv))
    return tuple(out)


def _is_canonical(counts, inv_perms) -> bool:
    get = counts.__getitem__
    for pinv in inv_perms:
        if tuple(map(get, pinv)) < counts:
            return False
    return True


def family_group(spec: FamilySpec):
    """The full symmetry group generated by the family's tabulated generators."""
    g = build_family(spec)
    return expand_group(g.n, automorphism_generators(spec))


def enumerate_distributions(n: int, m: int, group=None):
    """Yield one size-m distribution per orbit of the group (identity-first
    canonical representatives, lexicographically smallest in each orbit).

    With no group (or the trivial group) this is all C(m+n-1, n-1) placements.
    The group must be closed under composition -- pass expand_group output or
    family_group(spec), not a bare generator list.
    """
    if m < 0:
        raise ValueError(f"size must be nonnegative, got {m}")
    inv = _inverse_perms(n, group) if group else ()
    for comp in _compositions(n, m):
        if not inv or _is_canonical(comp, inv):
            yield Distribution(comp)


def _root_order(g: Graph):
    """Far-out roots first: they are the likeliest to fail, which lets
    unsolvable distributions be recognized after one cheap check."""
    dist = g.distances()
    return sorted(range(g.n), key=lambda v: (-max(dist[v]), v))


def _unsolvable_root(kernels, counts, t: int, check_order, index_order) -> int | None:
    """Smallest-index root not t-reachable from counts, or None if all are.

    check_order is scanned first as a fast filter; the definitive answer is
    then re-derived in index order so witnesses are deterministic.
    """
    for r in check_order:
        if kernels[r].search(counts, t) is None:
            for r2 in index_order:
                if kernels[r2].search(counts, t) is None:
                    return r2
            raise AssertionError("root failed and then passed")
    return None


def _scan(g: Graph, m: int, t: int, mode: str, group, want: str,
          stride: int = 1, offset: int = 0, progress=None):
    """Scan orbit representatives of size-m distributions in lex order.

    want="unsolvable": return (index, counts, failing_root) of the first
    representative with an unreachable root, else None.
    want="solvable": return (index, counts, None) of the first representative
    from which every root is t-reachable, else None.
    """
    n = g.n
    inv = _inverse_perms(n, group) if group else ()
    kernels = [RootSearch(g, r, mode) for r in range(n)]
    check_order = _root_order(g)
    index_order = list(range(n))
    looking_for_bad = want == "unsolvable"
    step = 0
    for i, comp in enumerate(_compositions(n, m)):
        if stride > 1 and i % stride != offset:
            continue
        if progress is not None:
            step += 1
            if step % 20000 == 0:
                progress(step)
        if inv and not _is_canonical(comp, inv):
            continue
        bad = _unsolvable_root(kernels, comp, t, check_order, index_order)
        if looking_for_bad and bad is not None:
            return i, comp, bad
        if not looking_for_bad and bad is None:
            return i, comp, None
    return None


def _scan_task(args):
    g, m, t, mode, group, want, stride, offset = args
    return _scan(g, m, t, mode, group, want, stride, offset)


def _scan_parallel(g: Graph, m: int, t: int, mode: str, group, want: str,
                   workers: int, progress=None):
    if workers <= 1:
        return _scan(g, m, t, mode, group, want, progress=progress)
    tasks = [(g, m, t, mode, group, want, workers, w) for w in range(workers)]
    with get_context("fork").Pool(workers) as pool:
        hits = [h for h in pool.map(_scan_task, tasks) if h is not None]
    if not hits:
        return None
    return min(hits)  # smallest enumeration index == sequential answer


def find_unsolvable(g: Graph, m: int, t: int = 1, mode: str = RUBBLING,
                    group=None, workers: int = 1, progress=None):
    """First (lex order) size-m orbit representative that fails some root,
    as (Distribution, root); None if every size-m distribution is solvable."""
    hit = _scan_parallel(g, m, t, mode, group, "unsolvable", workers, progress)
    if hit is None:
        return None
    _, counts, root = hit
    return Distribution(counts), root


def find_solvable(g: Graph, m: int, mode: str = RUBBLING, group=None,
                  workers: int = 1, progress=None, t: int = 1):
    """First (lex order) size-m orbit representative solvable for every root."""
    hit = _scan_parallel(g, m, t, mode, group, "solvable", workers, progress)
    if hit is None:
        return None
    return Distribution(hit[1])


def optimal_number(g: Graph, mode: str = RUBBLING, group=None,
                   workers: int = 1, progress=None) -> NumberResult:
    """Least size of a distribution from which every root is 1-reachable."""
    for m in range(1, g.n + 1):
        witness = find_solvable(g, m, mode, group, workers, progress)
        if witness is not None:
            return NumberResult(m, witness)
    # one pebble everywhere is always solvable, so this cannot be reached
    raise AssertionError("no solvable distribution up to size n")


def adversarial_number(g: Graph, mode: str = RUBBLING, t: int = 1, group=None,
                       workers: int = 1, progress=None) -> NumberResult:
    """Least m such that every size-m distribution puts t pebbles on every root.

    Scans m upward from the weight lower bound t * 2^diameter; thanks to
    downward monotonicity of counterexamples, the first clean m is the answer.
    The returned witness is the counterexample found at value-1 (its existence
    at the starting point is itself a checked invariant).
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if not isinstance(t, int) or t < 1:
        raise ValueError(f"t must be a positive integer, got {t!r}")
    diam = g.diameter()
    m0 = max(t << diam, 1)
    witness = find_unsolvable(g, m0 - 1, t, mode, group, workers, progress)
    if witness is None:
        raise AssertionError(
            f"weight lower bound violated: all size-{m0 - 1} distributions solvable"
        )
    cap = g.n * (t * (1 << diam) - 1) + 1  # pigeonhole: some pile reaches t*2^diam
    m = m0
    while m <= cap:
        cx = find_unsolvable(g, m, t, mode, group, workers, progress)
        if cx is None:
            return NumberResult(m, witness[0], witness[1])
        witness = cx
        m += 1
    raise AssertionError(f"scan exceeded the pigeonhole bound {cap}")


def compute_number(g: Graph, q: Quantity, group=None, workers: int = 1,
                   progress=None) -> NumberResult:
    """Dispatch on quantity kind."""
    if q.adversarial:
        return adversarial_number(g, q.mode, q.t, group, workers, progress)
    return optimal_number(g, q.mode, group, workers, progress)


def closed_form(spec: FamilySpec, q: Quantity) -> int:
    """Known closed forms for the supported families.

    Raises NoFormulaError for any (family, quantity, t) combination that has
    no closed form on record; callers must then fall back to search.
    """
    fam, n = spec.family, spec.n
    kind, t = q.kind, q.t
    if kind == "pebbling":
        if fam == "cycle":
            k, r = divmod(n, 2)
            if r == 0:
                return t << k
            return 2 * ((1 << (k + 1)) // 3) + (t - 1) * (1 << k) + 1
    elif kind == "rubbling":
        if fam == "cycle" and t == 1:
            k, r = divmod(n, 2)
            if r == 0:
                return 1 << k
            return (7 * (1 << (k - 1)) - 2) // 3 + 1
    elif kind == "opt-pebbling":
        if fam in ("path", "cycle"):
            return (2 * n + 2) // 3
    elif kind == "opt-rubbling":
        if fam == "path":
            return (n + 2) // 2
        if fam == "cycle":
            return (n + 1) // 2
        if fam == "ladder":
            return (2 * n + 4) // 3
        if fam in ("prism", "mobius"):
            return 3 if n == 3 else (2 * n + 2) // 3
        if fam == "h" and n >= 2:
            return closed_form(FamilySpec("ladder", n - 1), q) + 1
    raise NoFormulaError(f"no closed form on record for {spec} / {kind} (t={t})")


def _ladder_pattern(n: int):
    """The optimal-rubbling placement on a 2xn ladder (size = ceil(2(n+1)/3)).

    Columns i ≡ 1 (mod 3) get an x pebble, columns i ≡ 2 (mod 3) a y pebble,
    and the last y vertex gets a double -- with two residue-specific fixups
    that keep the size exactly on the closed form.
    """
    r = n % 3
    counts = [0] * (2 * n)
    for i in range(1, n + 1):
        if i % 3 == 1 and not (r == 1 and i == n):
            counts[i - 1] = 1
        elif i % 3 == 2 and not (r == 0 and i == n - 1):
            counts[n + i - 1] = 1
    if r != 2:
        counts[2 * n - 1] = 2
    return counts


def construction(spec: FamilySpec) -> Distribution:
    """Explicit optimal-rubbling distribution for a family instance.

    Sizes always match closed_form(spec, opt-rubbling); the verification
    suite additionally has the solver confirm solvability of every instance
    it covers.
    """
    fam, n = spec.family, spec.n
    if fam == "path":
        counts = [1 if i % 2 == 0 else 0 for i in range(n)]
        counts[n - 1] = 1
        return Distribution(tuple(counts))
    if fam == "cycle":
        return Distribution(tuple(1 if i % 2 == 0 else 0 for i in range(n)))
    if fam == "ladder":
        return Distribution(tuple(_ladder_pattern(n)))
    if fam == "h":
        if n < 2:
            raise NoFormulaError("no construction on record for h:1")
        counts = _ladder_pattern(n) + [0]
        if n % 3 == 2:
            # ladder pattern ends in a single y pebble here, so the pendant
            # column needs its own; otherwise the double on v_ny covers it
            counts[2 * n] = 1
        return Distribution(tuple(counts))
    if fam in ("prism", "mobius"):
        if n == 3:
            # smallest case is exceptional (value 3, no embedded pattern fits);
            # fixed witnesses, solver-verified in the suites
            return Distribution((1, 0, 0, 0, 1, 1))
        if fam == "mobius" and n == 4:
            # the ladder embedding leaves v4x short here (the twist puts both
            # piles two steps away); three staggered singles work instead
            return Distribution((1, 0, 1, 0, 0, 1, 0, 0))
        lad = _ladder_pattern(n - 1)
        counts = [0] * (2 * n)
        for i in range(1, n):
            counts[i - 1] = lad[i - 1]
            counts[n + i - 1] = lad[(n - 1) + i - 1]
        return Distribution(tuple(counts))
    raise NoFormulaError(f"no construction on record for {spec}")


def characterize_path_solvable(k: int):
    """All size-2k distributions on the 3k-vertex path solvable under
    pebbling-only moves, in lexicographic order (no symmetry reduction)."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    g = build_family(FamilySpec("path", 3 * k))
    kernels = [RootSearch(g, r, PEBBLING) for r in range(g.n)]
    order = _root_order(g)
    index_order = list(range(g.n))
    out = []
    for comp in _compositions(g.n, 2 * k):
        if _unsolvable_root(kernels, comp, 1, order, index_order) is None:
            out.append(Distribution(comp))
    return out

"""Pebble distributions, moves, and certificates.

Two move systems are supported.  A pebbling move removes two pebbles from a
vertex and places one on a chosen neighbor.  A strict rubbling move removes
one pebble from each of two *distinct* vertices and places one on a common
neighbor (a single vertex holding two pebbles does not qualify as both
sources).  "pebbling" mode allows only the first kind; "rubbling" mode allows
both.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph, QuotientMap

PEBBLING = "pebbling"
RUBBLING = "rubbling"
MODES = (PEBBLING, RUBBLING)

MOVE_PEBBLING = "pebbling"
MOVE_STRICT = "strict"


@dataclass(frozen=True)
class Distribution:
    """Per-vertex pebble counts; size is the cached total."""

    counts: tuple

    def __post_init__(self):
        counts = tuple(self.counts)
        for c in counts:
            if not isinstance(c, int) or c < 0:
                raise ValueError(f"counts must be nonnegative integers, got {c!r}")
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "size", sum(counts))

    @classmethod
    def from_labels(cls, g: Graph, mapping) -> "Distribution":
        """Build a distribution from {vertex label: count}, zero elsewhere."""
        counts = [0] * g.n
        for label, c in mapping.items():
            counts[g.index_of(label)] = c
        return cls(tuple(counts))

    def __getitem__(self, v: int) -> int:
        return self.counts[v]

    def __len__(self) -> int:
        return len(self.counts)


@dataclass(frozen=True)
class Move:
    """One move: sources is (v,) for pebbling, (v, w) with v != w for strict."""

    kind: str
    sources: tuple
    target: int

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(self.sources))
        if self.kind == MOVE_PEBBLING:
            if len(self.sources) != 1:
                raise ValueError("pebbling move takes exactly one source vertex")
        elif self.kind == MOVE_STRICT:
            if len(self.sources) != 2 or self.sources[0] == self.sources[1]:
                raise ValueError("strict move takes two distinct source vertices")
        else:
            raise ValueError(f"unknown move kind {self.kind!r}")

    def arcs(self):
        """The directed source->target arcs this move contributes."""
        if self.kind == MOVE_PEBBLING:
            v = self.sources[0]
            return ((v, self.target), (v, self.target))
        return ((self.sources[0], self.target), (self.sources[1], self.target))


@dataclass(frozen=True)
class Certificate:
    """A replayable witness that t pebbles reach root from initial."""

    initial: Distribution
    root: int
    t: int
    moves: tuple

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(self.moves))

    def to_json(self) -> str:
        obj = {
            "initial": list(self.initial.counts),
            "root": self.root,
            "t": self.t,
            "moves": [
                {"kind": m.kind, "sources": list(m.sources), "target": m.target}
                for m in self.moves
            ],
        }
        return json.dumps(obj, indent=2) + "\n"

    @staticmethod
    def from_json(text: str) -> "Certificate":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValueError(f"bad certificate JSON: {e}") from None
        try:
            initial = Distribution(tuple(obj["initial"]))
            root = obj["root"]
            t = obj["t"]
            moves = tuple(
                Move(m["kind"], tuple(m["sources"]), m["target"]) for m in obj["moves"]
            )
        except (KeyError, TypeError) as e:
            raise ValueError(f"bad certificate structure: {e!r}") from None
        if not isinstance(root, int) or not isinstance(t, int) or t < 1:
            raise ValueError("certificate root must be an int and t a positive int")
        return Certificate(initial, root, t, moves)


def _check_move(g: Graph, counts, move: Move) -> str | None:
    """Return None if the move is legal at counts, else a reason."""
    if not 0 <= move.target < g.n:
        return f"target {move.target} out of range"
    for s in move.sources:
        if not 0 <= s < g.n:
            return f"source {s} out of range"
    if move.kind == MOVE_PEBBLING:
        v = move.sources[0]
        if not g.has_edge(v, move.target):
            return f"source {v} is not adjacent to target {move.target}"
        if counts[v] < 2:
            return f"pebbling move needs 2 pebbles on {v}, found {counts[v]}"
    else:
        v, w = move.sources
        for s in (v, w):
            if not g.has_edge(s, move.target):
                return f"source {s} is not adjacent to target {move.target}"
            if counts[s] < 1:
                return f"strict move needs a pebble on {s}, found {counts[s]}"
    return None


def legal_moves(g: Graph, d: Distribution, mode: str = RUBBLING,
                forbidden_strict_targets=frozenset()):
    """All moves legal at d, deterministically ordered.

    forbidden_strict_targets bars vertices from being the *target* of a strict
    move (pebbling moves onto them stay legal).
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    counts = d.counts
    out = []
    for v in range(g.n):
        if counts[v] >= 2:
            for u in g.neighbors(v):
                out.append(Move(MOVE_PEBBLING, (v,), u))
    if mode == RUBBLING:
        for u in range(g.n):
            if u in forbidden_strict_targets:
                continue
            nbrs = g.neighbors(u)
            for i in range(len(nbrs)):
                if counts[nbrs[i]] < 1:
                    continue
                for j in range(i + 1, len(nbrs)):
                    if counts[nbrs[j]] >= 1:
                        out.append(Move(MOVE_STRICT, (nbrs[i], nbrs[j]), u))
    out.sort(key=lambda m: (m.target, m.kind != MOVE_PEBBLING, m.sources))
    return out


def apply_move(g: Graph, d: Distribution, move: Move) -> Distribution:
    """Apply one move; raises ValueError naming the violated precondition."""
    reason = _check_move(g, d.counts, move)
    if reason is not None:
        raise ValueError(f"illegal move {move}: {reason}")
    counts = list(d.counts)
    for s in move.sources:
        counts[s] -= 1
    if move.kind == MOVE_PEBBLING:
        counts[move.sources[0]] -= 1
    counts[move.target] += 1
    return Distribution(tuple(counts))


def smoothing_move(g: Graph, d: Distribution, v: int) -> Distribution:
    """Remove two pebbles from a degree-2 vertex holding >= 3 and give one to
    each neighbor.  Size-preserving."""
    if g.degree(v) != 2:
        raise ValueError(f"smoothing needs deg({v}) == 2, found {g.degree(v)}")
    if d.counts[v] < 3:
        raise ValueError(f"smoothing needs at least 3 pebbles on {v}, found {d.counts[v]}")
    counts = list(d.counts)
    counts[v] -= 2
    for u in g.neighbors(v):
        counts[u] += 1
    return Distribution(tuple(counts))


def is_smooth(g: Graph, d: Distribution) -> bool:
    """No degree-2 vertex holds 3 or more pebbles."""
    return all(d.counts[v] <= 2 or g.degree(v) != 2 for v in range(g.n))


def smooth_fully(g: Graph, d: Distribution) -> Distribution:
    """Apply smoothing moves (lowest eligible vertex first) until none applies.

    Smoothing has no termination proof in general -- on cycles with more than
    2n pebbles it provably cannot reach a smooth state -- so the iteration
    count is capped at size * n^2 and exceeding it raises RuntimeError.
    """
    cap = d.size * g.n * g.n
    counts = list(d.counts)
    deg2 = [v for v in range(g.n) if g.degree(v) == 2]
    for _ in range(cap + 1):
        for v in deg2:
            if counts[v] >= 3:
                counts[v] -= 2
                for u in g.neighbors(v):
                    counts[u] += 1
                break
        else:
            return Distribution(tuple(counts))
    raise RuntimeError(
        f"smoothing exceeded {cap} iterations; no smooth state is reachable "
        f"(size {d.size} on {g.n} vertices)"
    )


def quotient_distribution(d: Distribution, qmap: QuotientMap) -> Distribution:
    """Sum counts over each block; total size is preserved."""
    qmap.validate(len(d.counts))
    return Distribution(tuple(sum(d.counts[v] for v in b) for b in qmap.blocks))


def weight(g: Graph, d: Distribution, root: int) -> Fraction:
    """Exact dyadic weight of d against root: sum of counts[v] / 2^dist(v, root)."""
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} out of range")
    dist = g.dist_from(root)
    return sum(
        (Fraction(c, 1 << dist[v]) for v, c in enumerate(d.counts) if c),
        Fraction(0),
    )


@dataclass(frozen=True)
class TransitionDigraph:
    """Directed multigraph of source->target arcs contributed by a move list."""

    arcs: tuple

    @staticmethod
    def from_moves(moves) -> "TransitionDigraph":
        arcs = []
        for m in moves:
            arcs.extend(m.arcs())
        return TransitionDigraph(tuple(arcs))

    def is_acyclic(self) -> bool:
        adj = {}
        for a, b in self.arcs:
            adj.setdefault(a, set()).add(b)
        state = {}  # 1 = on stack, 2 = done
        for start in adj:
            if state.get(start):
                continue
            stack = [(start, iter(adj.get(start, ())))]
            state[start] = 1
            while stack:
                v, it = stack[-1]
                advanced = False
                for w in it:
                    if state.get(w) == 1:
                        return False
                    if not state.get(w):
                        state[w] = 1
                        stack.append((w, iter(adj.get(w, ()))))
                        advanced = True
                        break
                if not advanced:
                    state[v] = 2
                    stack.pop()
        return True


@dataclass(frozen=True)
class CertReport:
    valid: bool
    acyclic: bool
    first_illegal: int | None = None
    message: str = ""
    final: Distribution | None = None


def verify_certificate(g: Graph, cert: Certificate, mode: str = RUBBLING) -> CertReport:
    """Replay a certificate and report validity and transition-digraph acyclicity.

    Valid means: every move is legal under the given mode when played in order,
    and the final state has at least t pebbles on the root.  Acyclicity is a
    property of the move multiset and is reported independently of validity.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    acyclic = TransitionDigraph.from_moves(cert.moves).is_acyclic()
    if len(cert.initial.counts) != g.n:
        return CertReport(False, acyclic,
                          message=f"initial distribution has {len(cert.initial.counts)} "
                                  f"entries for a {g.n}-vertex graph")
    if not 0 <= cert.root < g.n:
        return CertReport(False, acyclic, message=f"root {cert.root} out of range")
    counts = list(cert.initial.counts)
    for i, m in enumerate(cert.moves):
        if mode == PEBBLING and m.kind == MOVE_STRICT:
            return CertReport(False, acyclic, first_illegal=i,
                              message=f"move {i} is a strict move under pebbling-only mode")
        reason = _check_move(g, counts, m)
        if reason is not None:
            return CertReport(False, acyclic, first_illegal=i,
                              message=f"move {i} illegal: {reason}")
        for s in m.sources:
            counts[s] -= 1
        if m.kind == MOVE_PEBBLING:
            counts[m.sources[0]] -= 1
        counts[m.target] += 1
    final = Distribution(tuple(counts))
    if counts[cert.root] < cert.t:
        return CertReport(False, acyclic, final=final,
                          message=f"final state has {counts[cert.root]} pebbles on the "
                                  f"root, needs {cert.t}")
    return CertReport(True, acyclic, final=final)


def parse_distribution_text(text: str, n: int | None = None) -> Distribution:
    """Parse one line of whitespace-separated nonnegative integers."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise ValueError(f"expected one line of counts, got {len(lines)} lines")
    try:
        counts = tuple(int(tok) for tok in lines[0].split())
    except ValueError:
        raise ValueError(f"distribution line has a non-integer token: {lines[0]!r}") from None
    d = Distribution(counts)
    if n is not None and len(counts) != n:
        raise ValueError(f"expected {n} counts, got {len(counts)}")
    return d


def format_distribution_text(d: Distribution) -> str:
    return " ".join(str(c) for c in d.counts) + "\n"

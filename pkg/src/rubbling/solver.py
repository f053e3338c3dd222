"""Exact reachability decisions by exhaustive search with certificates.

The kernel is a depth-first search over pebble states.  Soundness aids:

* states that have been exhaustively explored without success are memoized
  (each move strictly decreases the pebble count, so the state graph is
  acyclic and "explored once" is final);
* a state whose weight against the root drops below t can never succeed,
  so such branches are pruned (weights are kept as exact scaled integers);
* a "funnel" quick-accept consolidates every pile toward the root along a
  fixed shortest-path tree -- if that alone delivers t pebbles the state is
  accepted and the funnel moves become part of the certificate.

Both aids can be disabled, which must not change any decision; the test
suite checks that agreement exhaustively at small scale.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from itertools import combinations

from .graphs import Graph
from .pebbles import (
    MODES,
    MOVE_PEBBLING,
    MOVE_STRICT,
    PEBBLING,
    RUBBLING,
    Certificate,
    Distribution,
    Move,
    legal_moves,
)


@dataclass(frozen=True)
class Query:
    """One reachability question: can t pebbles be placed on root?"""

    graph: Graph
    dist: Distribution
    root: int
    t: int = 1
    mode: str = RUBBLING
    forbidden_strict_targets: frozenset = frozenset()

    def __post_init__(self):
        g = self.graph
        if not 0 <= self.root < g.n:
            raise ValueError(f"root {self.root} out of range")
        if not isinstance(self.t, int) or self.t < 1:
            raise ValueError(f"t must be a positive integer, got {self.t!r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if len(self.dist.counts) != g.n:
            raise ValueError(
                f"distribution has {len(self.dist.counts)} entries for a {g.n}-vertex graph"
            )
        object.__setattr__(self, "forbidden_strict_targets",
                           frozenset(self.forbidden_strict_targets))
        for v in self.forbidden_strict_targets:
            if not 0 <= v < g.n:
                raise ValueError(f"forbidden target {v} out of range")


@dataclass(frozen=True)
class Reachability:
    decision: bool
    certificate: Certificate | None


class RootSearch:
    """Reusable search context for one (graph, root, mode, forbidden) tuple.

    Building the movement tables once and reusing them across many
    distributions is what makes the enumeration scans affordable.
    """

    def __init__(self, g: Graph, root: int, mode: str = RUBBLING,
                 forbidden_strict_targets=frozenset()):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        if not 0 <= root < g.n:
            raise ValueError(f"root {root} out of range")
        self.graph = g
        self.root = root
        self.mode = mode
        self.forbidden = frozenset(forbidden_strict_targets)
        n = g.n
        dist = g.dist_from(root)
        self.dist = dist
        maxd = max(dist)
        self.maxd = maxd
        self.scale = 1 << maxd
        coef = [1 << (maxd - dist[v]) for v in range(n)]
        self.coef = coef
        # One fixed shortest-path tree: next hop toward the root, and the
        # far-to-near processing order used by the funnel quick-accept.
        nh = [root] * n
        for v in range(n):
            if v != root:
                nh[v] = min(u for u in g.neighbors(v) if dist[u] == dist[v] - 1)
        self.next_hop = nh
        self.funnel_order = sorted(
            (v for v in range(n) if v != root), key=lambda v: (-dist[v], v)
        )
        moves = []
        for v in range(n):
            for u in g.neighbors(v):
                moves.append((v, v, u, coef[u] - 2 * coef[v]))
        if mode == RUBBLING:
            for u in range(n):
                if u in self.forbidden:
                    continue
                for a, b in combinations(g.neighbors(u), 2):
                    moves.append((a, b, u, coef[u] - coef[a] - coef[b]))
        moves.sort(key=lambda m: (dist[m[2]], m[0] != m[1], m[2], m[0], m[1]))
        self.templates = tuple(moves)
        # the funnel's final strict assist lands pebbles on the root itself,
        # so it is off the table whenever the root is a forbidden target
        self.root_assist = mode == RUBBLING and root not in self.forbidden
        self._tables = {}

    def _key_tables(self, bits: int):
        cached = self._tables.get(bits)
        if cached is None:
            n = self.graph.n
            shifts = [bits * v for v in range(n)]
            kdeltas = tuple(
                (1 << shifts[tgt]) - (1 << shifts[s1]) - (1 << shifts[s2])
                for s1, s2, tgt, _ in self.templates
            )
            cached = (shifts, kdeltas)
            self._tables[bits] = cached
        return cached

    def weight_scaled(self, counts) -> int:
        """Integer weight * 2^maxd of counts against the root."""
        coef = self.coef
        return sum(c * coef[v] for v, c in enumerate(counts) if c)

    def _funnel_deliverable(self, counts, t: int) -> bool:
        """Can funneling along the tree (plus one layer of strict assists at
        the root, in rubbling mode) place t pebbles on the root?  Sound but
        not complete."""
        vals = list(counts)
        nh = self.next_hop
        for v in self.funnel_order:
            k = vals[v] >> 1
            if k:
                vals[nh[v]] += k
        root = self.root
        if vals[root] >= t:
            return True
        if self.root_assist:
            odd = sum(1 for u in self.graph.neighbors(root) if vals[u] & 1)
            if vals[root] + (odd >> 1) >= t:
                return True
        return False

    def _funnel_moves(self, counts, t: int):
        """Materialize the move list the funnel accept promised."""
        vals = list(counts)
        nh = self.next_hop
        out = []
        for v in self.funnel_order:
            k = vals[v] >> 1
            if k:
                out.extend([(v, v, nh[v])] * k)
                vals[nh[v]] += k
        root = self.root
        if vals[root] < t and self.root_assist:
            resid = [u for u in self.graph.neighbors(root) if vals[u] & 1]
            while vals[root] < t and len(resid) >= 2:
                a = resid.pop(0)
                b = resid.pop(0)
                out.append((a, b, root))
                vals[root] += 1
        if vals[root] < t:
            raise AssertionError("funnel accept was not actually achievable")
        return out

    def search(self, counts0, t: int = 1, *, use_weight: bool = True,
               use_accept: bool = True):
        """Return a legal move list reaching t pebbles on the root, or None.

        counts0 is any sequence of per-vertex counts.  The returned list
        contains raw (source1, source2, target) triples with source1 ==
        source2 denoting a pebbling move.
        """
        root = self.root
        counts = list(counts0)
        if counts[root] >= t:
            return []
        size = sum(counts)
        target_w = t << self.maxd
        w0 = self.weight_scaled(counts)
        if use_weight and w0 < target_w:
            return None
        if use_accept and self._funnel_deliverable(counts, t):
            return self._funnel_moves(counts, t)
        bits = max(1, size.bit_length())
        shifts, kdeltas = self._key_tables(bits)
        key0 = 0
        for v, c in enumerate(counts):
            key0 |= c << shifts[v]
        if size + 100 > sys.getrecursionlimit():
            sys.setrecursionlimit(size + 1000)
        templates = self.templates
        seen = set()
        path = []
        funnel_ok = self._funnel_deliverable
        ntpl = len(templates)

        def dfs(w, key):
            for i in range(ntpl):
                s1, s2, tgt, wd = templates[i]
                if s1 == s2:
                    if counts[s1] < 2:
                        continue
                elif counts[s1] < 1 or counts[s2] < 1:
                    continue
                w2 = w + wd
                if use_weight and w2 < target_w:
                    continue
                k2 = key + kdeltas[i]
                if k2 in seen:
                    continue
                counts[s1] -= 1
                counts[s2] -= 1
                counts[tgt] += 1
                path.append((s1, s2, tgt))
                if counts[root] >= t:
                    return True
                if use_accept and funnel_ok(counts, t):
                    path.extend(self._funnel_moves(counts, t))
                    return True
                if dfs(w2, k2):
                    return True
                path.pop()
                counts[s1] += 1
                counts[s2] += 1
                counts[tgt] -= 1
            seen.add(key)
            return False

        if dfs(w0, key0):
            return path
        return None


def _moves_from_raw(raw):
    out = []
    for s1, s2, tgt in raw:
        if s1 == s2:
            out.append(Move(MOVE_PEBBLING, (s1,), tgt))
        else:
            out.append(Move(MOVE_STRICT, (s1, s2), tgt))
    return tuple(out)


def reachable(q: Query, *, use_weight: bool = True, use_accept: bool = True) -> Reachability:
    """Decide whether t pebbles can be moved onto the root; certificate on success."""
    rs = RootSearch(q.graph, q.root, q.mode, q.forbidden_strict_targets)
    raw = rs.search(q.dist.counts, q.t, use_weight=use_weight, use_accept=use_accept)
    if raw is None:
        return Reachability(False, None)
    cert = Certificate(q.dist, q.root, q.t, _moves_from_raw(raw))
    return Reachability(True, cert)


def solvable(g: Graph, d: Distribution, mode: str = RUBBLING) -> bool:
    """True iff every vertex is 1-reachable from d."""
    if len(d.counts) != g.n:
        raise ValueError(f"distribution has {len(d.counts)} entries for a {g.n}-vertex graph")
    for root in range(g.n):
        if RootSearch(g, root, mode).search(d.counts) is None:
            return False
    return True


_ACYCLIC_MAX_N = 8
_ACYCLIC_MAX_SIZE = 6


def _arc_reaches(arcs, frm, to) -> bool:
    if frm == to:
        return True
    stack = [frm]
    seen = {frm}
    while stack:
        v = stack.pop()
        for a, b in arcs:
            if a == v and b not in seen:
                if b == to:
                    return True
                seen.add(b)
                stack.append(b)
    return False


def acyclic_reachable(q: Query) -> bool:
    """Reachability restricted to move sequences whose transition digraph is
    acyclic.  Deliberately tiny scale (n <= 8, size <= 6): this exists to
    validate that the restriction loses nothing, not to be fast."""
    g = q.graph
    if g.n > _ACYCLIC_MAX_N:
        raise ValueError(f"acyclic search is capped at {_ACYCLIC_MAX_N} vertices, got {g.n}")
    if q.dist.size > _ACYCLIC_MAX_SIZE:
        raise ValueError(
            f"acyclic search is capped at size {_ACYCLIC_MAX_SIZE}, got {q.dist.size}"
        )
    seen = set()

    def go(d: Distribution, arcs: frozenset) -> bool:
        if d.counts[q.root] >= q.t:
            return True
        state = (d.counts, arcs)
        if state in seen:
            return False
        for m in legal_moves(g, d, q.mode, q.forbidden_strict_targets):
            new_arcs = m.arcs()
            u = m.target
            # adding source->target arcs creates a directed cycle exactly
            # when the target already reaches a source through used arcs
            if any(_arc_reaches(arcs, u, s) for s in m.sources):
                continue
            nxt = arcs.union(new_arcs)
            counts = list(d.counts)
            for s in m.sources:
                counts[s] -= 1
            if m.kind == MOVE_PEBBLING:
                counts[m.sources[0]] -= 1
            counts[u] += 1
            if go(Distribution(tuple(counts)), nxt):
                return True
        seen.add(state)
        return False

    return go(q.dist, frozenset())


def thread_restricted_equivalence(g: Graph, thread, d: Distribution, x: int) -> bool:
    """1-reachability of x when strict moves may not target the thread.

    The thread must induce a path of degree-2 vertices not containing x.
    Callers compare the result against unrestricted reachability; the
    restriction provably never changes the decision.
    """
    thread = frozenset(thread)
    if x in thread:
        raise ValueError(f"target {x} lies on the thread")
    for v in thread:
        if not 0 <= v < g.n:
            raise ValueError(f"thread vertex {v} out of range")
        if g.degree(v) != 2:
            raise ValueError(f"thread vertex {v} has degree {g.degree(v)}, need 2")
    if thread:
        inner = [e for e in g.edges if e[0] in thread and e[1] in thread]
        if len(inner) != len(thread) - 1:
            raise ValueError("thread does not induce a path (wrong edge count)")
        reached = set()
        stack = [next(iter(thread))]
        while stack:
            v = stack.pop()
            if v in reached:
                continue
            reached.add(v)
            for a, b in inner:
                if a == v:
                    stack.append(b)
                elif b == v:
                    stack.append(a)
        if reached != thread:
            raise ValueError("thread does not induce a path (not connected)")
    q = Query(g, d, x, 1, RUBBLING, thread)
    return reachable(q).decision

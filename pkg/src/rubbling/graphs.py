"""Connected simple graphs for pebbling problems.

Vertices are dense integer indices 0..n-1 with optional string labels.
Provides the standard small families (paths, cycles, ladders, prisms,
Moebius ladders, and clipped ladders), cartesian products, quotients by
vertex partitions, BFS distances, and per-family symmetry generators.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

FAMILIES = ("path", "cycle", "ladder", "prism", "mobius", "h")

_MIN_N = {"path": 1, "cycle": 3, "ladder": 1, "prism": 3, "mobius": 3, "h": 1}


@dataclass(frozen=True)
class FamilySpec:
    """A named family instance, e.g. FamilySpec("ladder", 5)."""

    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if not isinstance(self.n, int) or self.n < _MIN_N[self.family]:
            raise ValueError(
                f"family {self.family!r} requires n >= {_MIN_N[self.family]}, got {self.n!r}"
            )

    def __str__(self):
        return f"{self.family}:{self.n}"

    @staticmethod
    def parse(text: str) -> "FamilySpec":
        """Parse a spec string such as "ladder:5"."""
        head, sep, tail = text.partition(":")
        if not sep:
            raise ValueError(f"bad family spec {text!r}; expected e.g. 'cycle:7'")
        try:
            n = int(tail)
        except ValueError:
            raise ValueError(f"bad family spec {text!r}: {tail!r} is not an integer") from None
        return FamilySpec(head.strip().lower(), n)


class Graph:
    """Immutable connected simple graph.

    Equality and hashing compare vertex count and edge set only; labels are
    presentation data and are ignored (so e.g. ladder:2 equals cycle:4).
    """

    def __init__(self, n: int, edges, labels=None):
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"need at least one vertex, got n={n!r}")
        norm = set()
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {e!r} out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop {e!r} not allowed")
            norm.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = frozenset(norm)
        if labels is None:
            labels = tuple(str(i) for i in range(n))
        else:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError(f"expected {n} labels, got {len(labels)}")
        self.labels = labels
        adj = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self._dist = None
        if n > 1:
            seen = [False] * n
            seen[0] = True
            queue = deque([0])
            count = 1
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        count += 1
                        queue.append(w)
            if count != n:
                raise ValueError("graph is not connected")

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int):
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def label(self, v: int) -> str:
        return self.labels[v]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no vertex labeled {label!r}") from None

    def distances(self):
        """All-pairs distance matrix (tuple of tuples), computed once by BFS."""
        if self._dist is None:
            rows = []
            for s in range(self.n):
                d = [-1] * self.n
                d[s] = 0
                queue = deque([s])
                while queue:
                    u = queue.popleft()
                    for w in self.adj[u]:
                        if d[w] < 0:
                            d[w] = d[u] + 1
                            queue.append(w)
                rows.append(tuple(d))
            self._dist = tuple(rows)
        return self._dist

    def dist_from(self, root: int):
        return self.distances()[root]

    def diameter(self) -> int:
        return max(max(row) for row in self.distances())

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def _ladder_edges(n: int):
    edges = []
    for i in range(n - 1):
        edges.append((i, i + 1))
        edges.append((n + i, n + i + 1))
    for i in range(n):
        edges.append((i, n + i))
    return edges


def _ladder_labels(n: int):
    return tuple(f"v{i + 1}x" for i in range(n)) + tuple(f"v{i + 1}y" for i in range(n))


def build_family(spec: FamilySpec) -> Graph:
    """Construct a family instance with its canonical labeling.

    Paths and cycles use v1..vn; the two-row families use v1x..vnx, v1y..vny
    (column i, row x or y).  The "h" family is the clipped ladder: a ladder of
    n+1 columns with the last x-row vertex removed.
    """
    fam, n = spec.family, spec.n
    if fam == "path":
        return Graph(n, [(i, i + 1) for i in range(n - 1)],
                     tuple(f"v{i + 1}" for i in range(n)))
    if fam == "cycle":
        return Graph(n, [(i, (i + 1) % n) for i in range(n)],
                     tuple(f"v{i + 1}" for i in range(n)))
    if fam == "ladder":
        return Graph(2 * n, _ladder_edges(n), _ladder_labels(n))
    if fam == "prism":
        edges = _ladder_edges(n) + [(n - 1, 0), (2 * n - 1, n)]
        return Graph(2 * n, edges, _ladder_labels(n))
    if fam == "mobius":
        edges = _ladder_edges(n) + [(n - 1, n), (2 * n - 1, 0)]
        return Graph(2 * n, edges, _ladder_labels(n))
    if fam == "h":
        return delete_vertex(build_family(FamilySpec("ladder", n + 1)), n)
    raise AssertionError(fam)


def delete_vertex(g: Graph, v: int) -> Graph:
    """Remove vertex v, reindexing the survivors; the result must stay connected."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    if g.n == 1:
        raise ValueError("cannot delete the only vertex")
    old = [u for u in range(g.n) if u != v]
    newidx = {u: i for i, u in enumerate(old)}
    edges = [(newidx[a], newidx[b]) for a, b in g.edges if a != v and b != v]
    return Graph(g.n - 1, edges, tuple(g.labels[u] for u in old))


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product; vertex (a, b) gets index a + b * g.n."""
    n = g.n * h.n
    edges = []
    for b in range(h.n):
        for a, a2 in g.edges:
            edges.append((a + b * g.n, a2 + b * g.n))
    for a in range(g.n):
        for b, b2 in h.edges:
            edges.append((a + b * g.n, a + b2 * g.n))
    labels = tuple(
        f"({g.labels[a]},{h.labels[b]})" for b in range(h.n) for a in range(g.n)
    )
    return Graph(n, edges, labels)


@dataclass(frozen=True)
class QuotientMap:
    """A partition of 0..n-1 into blocks; block order gives the quotient indexing."""

    blocks: tuple

    def __post_init__(self):
        object.__setattr__(self, "blocks",
                           tuple(tuple(sorted(b)) for b in self.blocks))

    def vertex_count(self) -> int:
        return sum(len(b) for b in self.blocks)

    def validate(self, n: int):
        seen = set()
        for b in self.blocks:
            if not b:
                raise ValueError("empty block in partition")
            for v in b:
                if not 0 <= v < n:
                    raise ValueError(f"vertex {v} out of range in partition")
                if v in seen:
                    raise ValueError(f"vertex {v} appears in two blocks")
                seen.add(v)
        if len(seen) != n:
            missing = sorted(set(range(n)) - seen)
            raise ValueError(f"partition misses vertices {missing}")

    def phi(self, v: int) -> int:
        """Index of the block containing v."""
        for i, b in enumerate(self.blocks):
            if v in b:
                return i
        raise ValueError(f"vertex {v} not covered by partition")


def quotient(g: Graph, qmap: QuotientMap) -> Graph:
    """Collapse each block to one vertex; blocks are adjacent iff some edge crosses."""
    qmap.validate(g.n)
    k = len(qmap.blocks)
    where = {}
    for i, b in enumerate(qmap.blocks):
        for v in b:
            where[v] = i
    edges = set()
    for u, v in g.edges:
        a, b = where[u], where[v]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    labels = tuple("+".join(g.labels[v] for v in b) for b in qmap.blocks)
    return Graph(k, edges, labels)


def distance_classes(g: Graph, root: int) -> QuotientMap:
    """Partition vertices by BFS distance from root, nearest class first."""
    d = g.dist_from(root)
    classes = [[] for _ in range(max(d) + 1)]
    for v in range(g.n):
        classes[d[v]].append(v)
    return QuotientMap(tuple(tuple(c) for c in classes))


def distances(g: Graph):
    """All-pairs BFS distances and the diameter, as (matrix, diameter)."""
    return g.distances(), g.diameter()


def _check_automorphism(g: Graph, perm) -> None:
    if sorted(perm) != list(range(g.n)):
        raise RuntimeError(f"generator table bug: {perm!r} is not a permutation")
    for u, v in g.edges:
        a, b = perm[u], perm[v]
        if not g.has_edge(a, b):
            raise RuntimeError(
                f"generator table bug: {perm!r} maps edge ({u},{v}) to non-edge ({a},{b})"
            )


def automorphism_generators(spec: FamilySpec):
    """Known symmetry generators for a family instance.

    Returns a tuple of permutations (each a tuple, p[i] = image of i) that
    generate a subgroup of the automorphism group -- possibly a proper one.
    Every candidate is checked to preserve the edge set before being returned.
    """
    fam, n = spec.family, spec.n
    gens = []
    if fam == "path":
        gens.append(tuple(n - 1 - i for i in range(n)))
    elif fam == "cycle":
        gens.append(tuple((i + 1) % n for i in range(n)))
        gens.append(tuple((n - i) % n for i in range(n)))
    elif fam == "ladder":
        rev = [0] * (2 * n)
        swap = [0] * (2 * n)
        for i in range(n):
            rev[i] = n - 1 - i
            rev[n + i] = n + (n - 1 - i)
            swap[i] = n + i
            swap[n + i] = i
        gens.append(tuple(rev))
        gens.append(tuple(swap))
    elif fam == "prism":
        rot = [0] * (2 * n)
        refl = [0] * (2 * n)
        swap = [0] * (2 * n)
        for i in range(n):
            rot[i] = (i + 1) % n
            rot[n + i] = n + (i + 1) % n
            refl[i] = (n - i) % n
            refl[n + i] = n + (n - i) % n
            swap[i] = n + i
            swap[n + i] = i
        gens.extend([tuple(rot), tuple(refl), tuple(swap)])
    elif fam == "mobius":
        # The two rows form a single 2n-cycle (x1..xn then y1..yn); rotating
        # that cycle by one step is an automorphism, column rotation is not.
        rot = [0] * (2 * n)
        swap = [0] * (2 * n)
        for i in range(n):
            rot[i] = i + 1 if i < n - 1 else n
            rot[n + i] = n + i + 1 if i < n - 1 else 0
            swap[i] = n + i
            swap[n + i] = i
        gens.extend([tuple(rot), tuple(swap)])
    elif fam == "h":
        # The clipped corner breaks both ladder symmetries; only the identity
        # is tabulated (a proper subgroup of Aut is fine for reduction).
        gens.append(tuple(range(2 * n + 1)))
    else:
        raise AssertionError(fam)
    g = build_family(spec)
    for p in gens:
        _check_automorphism(g, p)
    return tuple(gens)


def expand_group(n: int, generators, limit: int = 100000):
    """Close a generator set under composition; returns all elements, identity first."""
    ident = tuple(range(n))
    elems = {ident}
    frontier = [ident]
    gens = [tuple(p) for p in generators]
    for p in gens:
        if len(p) != n or sorted(p) != list(range(n)):
            raise ValueError(f"{p!r} is not a permutation of 0..{n - 1}")
    while frontier:
        nxt = []
        for q in frontier:
            for p in gens:
                r = tuple(p[q[i]] for i in range(n))
                if r not in elems:
                    elems.add(r)
                    nxt.append(r)
                    if len(elems) > limit:
                        raise RuntimeError("symmetry group larger than expected")
        frontier = nxt
    return (ident,) + tuple(sorted(elems - {ident}))


def permute_counts(counts, perm):
    """Push a count vector through a vertex permutation (pebbles follow vertices)."""
    out = [0] * len(counts)
    for i, c in enumerate(counts):
        out[perm[i]] = c
    return tuple(out)


def parse_graph_text(text: str) -> Graph:
    """Parse the plain graph format: "n m" header, m edge lines, optional
    "# i name" label lines."""
    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx == len(lines):
        raise ValueError("empty graph file")
    head = lines[idx].split()
    if len(head) != 2:
        raise ValueError(f"line {idx + 1}: expected 'n m' header, got {lines[idx]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ValueError(f"line {idx + 1}: expected two integers in header") from None
    idx += 1
    edges = []
    while len(edges) < m:
        if idx >= len(lines):
            raise ValueError(f"expected {m} edge lines, found {len(edges)}")
        line = lines[idx].strip()
        idx += 1
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {idx}: expected 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ValueError(f"line {idx}: expected two integers, got {line!r}") from None
    labels = None
    for k in range(idx, len(lines)):
        line = lines[k].strip()
        if not line:
            continue
        if not line.startswith("#"):
            raise ValueError(f"line {k + 1}: expected '# i name' label line, got {line!r}")
        parts = line[1:].split(None, 1)
        if len(parts) != 2:
            raise ValueError(f"line {k + 1}: expected '# i name', got {line!r}")
        try:
            i = int(parts[0])
        except ValueError:
            raise ValueError(f"line {k + 1}: bad vertex index {parts[0]!r}") from None
        if not 0 <= i < n:
            raise ValueError(f"line {k + 1}: vertex index {i} out of range")
        if labels is None:
            labels = [str(j) for j in range(n)]
        labels[i] = parts[1].strip()
    return Graph(n, edges, labels)


def format_graph_text(g: Graph) -> str:
    """Inverse of parse_graph_text; always writes the label lines."""
    out = [f"{g.n} {g.m}"]
    for u, v in sorted(g.edges):
        out.append(f"{u} {v}")
    for i in range(g.n):
        out.append(f"# {i} {g.labels[i]}")
    return "\n".join(out) + "\n"

"""Combinatorial types of genus-zero plane tropical curves with marked
points of prescribed valency, and their enumeration."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import factorial
from typing import Callable, Hashable, Iterator, Sequence

from .lattice import Degree, DescendantProfile, Vec, vec, vsum


@dataclass(frozen=True)
class CombinatorialType:
    """A labeled tree with vector weights.

    ``markers[v]`` is ``i`` (1-based) when vertex ``v`` carries the
    contracted marked end ``i`` and 0 for unpointed vertices.  ``edges[j]``
    is a pair ``(a, b)`` and ``edge_weights[j]`` is the outgoing weight at
    ``a``; the weight at ``b`` is its negative.  ``ends`` lists the
    non-contracted unbounded ends as ``(vertex, label)`` with labels in
    ``n+1 .. n+r``; label ``n+j`` carries ``degree[j-1]``.
    """

    n: int
    degree: tuple[Vec, ...]
    markers: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    edge_weights: tuple[Vec, ...]
    ends: tuple[tuple[int, int], ...]

    @property
    def num_vertices(self) -> int:
        return len(self.markers)

    def end_vector(self, label: int) -> Vec:
        if label <= self.n:
            return Vec(0, 0)
        return self.degree[label - self.n - 1]

    def vertex_of_marker(self, i: int) -> int:
        return self.markers.index(i)

    def pointed_vertices(self) -> list[int]:
        return [v for v, m in enumerate(self.markers) if m]

    def unpointed_vertices(self) -> list[int]:
        return [v for v, m in enumerate(self.markers) if not m]

    def incident(self, v: int) -> list[tuple[int, Vec]]:
        """(neighbour, outgoing weight at v) for each bounded edge at v."""
        out = []
        for (a, b), w in zip(self.edges, self.edge_weights):
            if a == v:
                out.append((b, w))
            elif b == v:
                out.append((a, -w))
        return out

    def outgoing(self, v: int) -> list[Vec]:
        """All non-contracted outgoing vector weights at v."""
        vs = [w for _, w in self.incident(v)]
        vs.extend(self.end_vector(lab) for u, lab in self.ends if u == v)
        return vs

    def valency(self, v: int) -> int:
        return sum(1 for w in self.outgoing(v) if not w.is_zero())

    @property
    def all_unbounded_ends(self) -> list[tuple[int, int]]:
        marked = [(v, m) for v, m in enumerate(self.markers) if m]
        return sorted(marked + list(self.ends), key=lambda t: t[1])

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "degree": [list(v) for v in self.degree],
            "markers": list(self.markers),
            "edges": [[a, b, list(w)] for (a, b), w in zip(self.edges, self.edge_weights)],
            "ends": [list(e) for e in self.ends],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CombinatorialType":
        return cls(
            n=int(obj["n"]),
            degree=tuple(vec(v) for v in obj["degree"]),
            markers=tuple(int(m) for m in obj["markers"]),
            edges=tuple((int(a), int(b)) for a, b, _ in obj["edges"]),
            edge_weights=tuple(vec(w) for _, _, w in obj["edges"]),
            ends=tuple((int(v), int(lab)) for v, lab in obj["ends"]),
        )


def type_violations(t: CombinatorialType, profile: DescendantProfile | None = None) -> list[str]:
    """Everything wrong with ``t`` as a member of the counting problem."""
    problems: list[str] = []
    nv = t.num_vertices
    if len(t.edges) != nv - 1:
        problems.append("not a tree: wrong number of edges")
    parent = list(range(nv))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in t.edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            problems.append("cycle in the underlying graph")
        parent[ra] = rb
    if len({find(v) for v in range(nv)}) != 1:
        problems.append("underlying graph is disconnected")
    labels = sorted(lab for _, lab in t.ends)
    if labels != list(range(t.n + 1, t.n + len(t.degree) + 1)):
        problems.append(f"end labels {labels} are not n+1..n+r")
    if sorted(m for m in t.markers if m) != list(range(1, t.n + 1)):
        problems.append("marked points are not carried by distinct vertices")
    for j, w in enumerate(t.edge_weights):
        if w.is_zero():
            problems.append(f"bounded edge {j} has zero weight")
    for v in range(nv):
        if not vsum(t.outgoing(v)).is_zero():
            problems.append(f"vertex {v} is not balanced")
        m = t.markers[v]
        val = t.valency(v)
        if m:
            if profile is not None and val != profile.valency(m):
                problems.append(f"marked vertex {v} has valency {val}, expected {profile.valency(m)}")
        elif val != 3:
            problems.append(f"unpointed vertex {v} has valency {val}")
    return problems


def cone_dimension(t: CombinatorialType) -> int:
    return len(t.edges)


def audit_tree_decomposition(t: CombinatorialType) -> bool:
    """True iff deleting the pointed vertices leaves pieces that each carry
    exactly one non-contracted unbounded end."""
    pointed = {v for v, m in enumerate(t.markers) if m}
    for a, b in t.edges:
        if a in pointed and b in pointed:
            return False
    unpointed = [v for v in range(t.num_vertices) if v not in pointed]
    parent = {v: v for v in unpointed}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in t.edges:
        if a in parent and b in parent:
            parent[find(a)] = find(b)
    ends_per_piece: Counter = Counter()
    for v in unpointed:
        ends_per_piece[find(v)] += 0
    for v, _ in t.ends:
        if v in parent:
            ends_per_piece[find(v)] += 1
    return all(c == 1 for c in ends_per_piece.values())


# -- canonical forms ----------------------------------------------------------
#
# A type is rooted at the vertex carrying marked point 1.  The encoding of a
# vertex (seen from its parent) is (marker, sorted end keys, sorted child
# encodings); the edge weight to a child is the sum of the end vectors in
# the child's subtree, so it need not be recorded.  End keys are the labels
# in labeled mode and the vectors otherwise.


def _end_key(t: CombinatorialType, label: int, labeled: bool):
    return label if labeled else t.end_vector(label)


def canonical_form(t: CombinatorialType, labeled: bool = False) -> tuple:
    root = t.vertex_of_marker(1)
    adj: dict[int, list[int]] = {v: [] for v in range(t.num_vertices)}
    for a, b in t.edges:
        adj[a].append(b)
        adj[b].append(a)
    ends_at: dict[int, list[int]] = {v: [] for v in range(t.num_vertices)}
    for v, lab in t.ends:
        ends_at[v].append(lab)

    def enc(v: int, parent: int | None) -> tuple:
        children = tuple(sorted(enc(c, v) for c in adj[v] if c != parent))
        ends = tuple(sorted(_end_key(t, lab, labeled) for lab in ends_at[v]))
        return (t.markers[v], ends, children)

    return enc(root, None)


def automorphism_count(encoding: tuple) -> int:
    """Symmetries of a canonical encoding: permutations of equal end keys
    at a vertex and of identical child subtrees."""
    _, ends, children = encoding
    total = 1
    for c in Counter(ends).values():
        total *= factorial(c)
    for c in Counter(children).values():
        total *= factorial(c)
    for child in children:
        total *= automorphism_count(child)
    return total


def decode(encoding: tuple, degree: Degree | Sequence[Vec], n: int, labeled: bool = False) -> CombinatorialType:
    """Build a concrete type from a canonical encoding.  In unlabeled mode
    equal end vectors receive labels in increasing order of discovery."""
    degree = tuple(degree)
    free: dict[Vec, list[int]] = {}
    for j, v in enumerate(degree):
        free.setdefault(v, []).append(n + 1 + j)
    markers: list[int] = []
    edges: list[tuple[int, int]] = []
    weights: list[Vec] = []
    ends: list[tuple[int, int]] = []

    def end_sum(e: tuple) -> Vec:
        marker, end_keys, children = e
        total = vsum(degree[k - n - 1] for k in end_keys) if labeled else vsum(end_keys)
        return total + vsum(end_sum(c) for c in children)

    def build(e: tuple) -> int:
        v = len(markers)
        marker, end_keys, children = e
        markers.append(marker)
        for key in end_keys:
            lab = key if labeled else free[key].pop(0)
            ends.append((v, lab))
        for c in children:
            cv = build(c)
            edges.append((v, cv))
            weights.append(end_sum(c))
        return v

    build(encoding)
    return CombinatorialType(
        n=n,
        degree=degree,
        markers=tuple(markers),
        edges=tuple(edges),
        edge_weights=tuple(weights),
        ends=tuple(ends),
    )


# -- enumeration --------------------------------------------------------------


def set_partitions(items: Sequence, blocks: int) -> Iterator[tuple[tuple, ...]]:
    """Partitions of ``items`` (by position) into exactly ``blocks``
    unordered non-empty blocks."""
    if blocks == 0:
        if not items:
            yield ()
        return
    if len(items) < blocks:
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest, blocks - 1):
        yield ((first,),) + p
    for p in set_partitions(rest, blocks):
        for i in range(len(p)):
            yield p[:i] + ((first,) + p[i],) + p[i + 1 :]


def _sub_multisets(keys: tuple, size: int) -> list[tuple]:
    return sorted(set(combinations(keys, size)))


class _Enumerator:
    def __init__(self, degree: Degree, profile: DescendantProfile, labeled: bool):
        self.degree = tuple(degree)
        self.profile = profile
        self.labeled = labeled
        self.n = profile.n
        if labeled:
            self.all_ends = tuple(range(self.n + 1, self.n + len(self.degree) + 1))
            self.vector_of: Callable[[Hashable], Vec] = lambda lab: self.degree[lab - self.n - 1]
        else:
            self.all_ends = tuple(sorted(self.degree))
            self.vector_of = lambda v: v
        self.sub = lru_cache(maxsize=None)(self._sub)

    def k(self, i: int) -> int:
        return self.profile.k[i - 1]

    def momentum(self, ends: tuple) -> Vec:
        return vsum(self.vector_of(e) for e in ends)

    def _fill(self, marker: int, slots: int, points: tuple, ends: tuple) -> set[tuple]:
        """Encodings of a vertex with ``slots`` free edge slots whose
        descendants are exactly ``points`` and ``ends``."""
        out: set[tuple] = set()
        for e0 in range(min(slots, len(ends)) + 1):
            nchild = slots - e0
            for direct in _sub_multisets(ends, e0):
                rest = list(ends)
                for d in direct:
                    rest.remove(d)
                items = [("p", i) for i in points] + [("e", e) for e in rest]
                seen: set[tuple] = set()
                for part in set_partitions(items, nchild):
                    keys = []
                    for block in part:
                        pts = tuple(sorted(x for tag, x in block if tag == "p"))
                        es = tuple(sorted(x for tag, x in block if tag == "e"))
                        keys.append((pts, es))
                    keys_t = tuple(sorted(keys))
                    if keys_t in seen:
                        continue
                    seen.add(keys_t)
                    options = [self.sub(p, e) for p, e in keys_t]
                    if any(not o for o in options):
                        continue
                    for combo in product(*options):
                        out.add((marker, tuple(direct), tuple(sorted(combo))))
        return out

    def _sub(self, points: tuple, ends: tuple) -> frozenset:
        """Subtrees hanging off a parent edge containing exactly these
        marked points and ends."""
        unpointed = len(ends) - 1 - sum(self.k(i) for i in points)
        if unpointed < 0 or (not points and unpointed == 0):
            return frozenset()
        if self.momentum(ends).is_zero():
            return frozenset()
        out: set[tuple] = set()
        for i in points:
            rest = tuple(p for p in points if p != i)
            out |= self._fill(i, self.k(i) + 1, rest, ends)
        if unpointed >= 1:
            out |= self._fill(0, 2, points, ends)
        return frozenset(out)

    def run(self) -> list[tuple]:
        if self.n == 0:
            return []
        rest = tuple(range(2, self.n + 1))
        return sorted(self._fill(1, self.k(1) + 2, rest, self.all_ends))


def enumerate_encodings(degree: Degree, profile: DescendantProfile, labeled: bool = False) -> list[tuple]:
    return _Enumerator(degree, profile, labeled).run()


def enumerate_types(degree: Degree, profile: DescendantProfile, labeled: bool = False) -> list[CombinatorialType]:
    """Every combinatorial type for the problem: trees whose marked vertex i
    has valency k_i + 2, whose other vertices are trivalent and unpointed,
    and whose bounded edges have non-zero weight.  In unlabeled mode types
    that differ only by permuting labels of equal end vectors appear once."""
    return [decode(e, degree, profile.n, labeled) for e in enumerate_encodings(degree, profile, labeled)]

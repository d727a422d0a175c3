"""Exact realization of combinatorial types through point configurations.

Two routes find the rigid curves through a configuration:

* ``solve_through_points`` takes one combinatorial type and solves the
  square linear system (root position plus edge lengths) exactly;
* ``search_curves`` builds the curves outward from the marked points.
  Deleting the pointed vertices of a rigid curve leaves trees with one
  unbounded end each, so every edge leaving a fixed point either is an end
  or reaches a trivalent vertex where a rigid sub-curve with a free end
  meets a branch rooted at that vertex.  Only geometrically realizable
  pieces are ever built.
"""
from __future__ import annotations

import gc
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from itertools import combinations, product
from typing import Iterable, Sequence

from .lattice import Degree, DescendantProfile, Vec, vsum, wedge
from .linalg import SingularMatrixError, solve_integer_system
from .moduli import CombinatorialType

Point = tuple[Fraction, Fraction]

SOLVED = "solved"
SINGULAR = "singular"
NON_POSITIVE_LENGTH = "non-positive-length"


class NonGenericPoints(RuntimeError):
    """The configuration sits on a wall where some curve degenerates."""


@dataclass(frozen=True)
class PointConfiguration:
    points: tuple[Point, ...]
    seed: int | None = None

    def __post_init__(self):
        pts = tuple((Fraction(x), Fraction(y)) for x, y in self.points)
        if len(set(pts)) != len(pts):
            raise ValueError("marked points must be pairwise distinct")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]


@lru_cache(maxsize=None)
def _primes(count: int) -> tuple[int, ...]:
    out: list[int] = []
    c = 101
    while len(out) < count:
        if all(c % d for d in range(3, isqrt(c) + 1, 2)):
            out.append(c)
        c += 2
    return tuple(out)


def sample_generic_points(n: int, seed: int, bound: int = 1000) -> PointConfiguration:
    """Deterministic pseudo-random rational points.  Coordinate ``j`` gets
    the ``j``-th prime above 100 as denominator, so accidental alignments
    need arithmetic coincidences across different primes."""
    if n < 1:
        raise ValueError("need at least one point")
    rng = random.Random(seed)
    dens = _primes(2 * n)
    while True:
        pts = []
        for i in range(n):
            coords = []
            for j in (2 * i, 2 * i + 1):
                num = rng.randint(-bound, bound)
                while num % dens[j] == 0:
                    num = rng.randint(-bound, bound)
                coords.append(Fraction(num, dens[j]))
            pts.append(tuple(coords))
        if len(set(pts)) == n:
            return PointConfiguration(tuple(pts), seed)


@dataclass(frozen=True)
class ParametrizedTropicalCurve:
    type: CombinatorialType
    positions: tuple[Point, ...]
    lengths: tuple[Fraction, ...]

    def residuals_ok(self, config: PointConfiguration | None = None) -> bool:
        """Re-substitute the defining equations exactly."""
        t = self.type
        for (a, b), w, ell in zip(t.edges, t.edge_weights, self.lengths):
            if ell <= 0:
                return False
            pa, pb = self.positions[a], self.positions[b]
            if (pb[0] - pa[0], pb[1] - pa[1]) != (ell * w.x, ell * w.y):
                return False
        if config is not None:
            for i in range(1, t.n + 1):
                if self.positions[t.vertex_of_marker(i)] != config[i - 1]:
                    return False
        return True

    def image_key(self) -> frozenset:
        t = self.type
        segs = set()
        for (a, b), w in zip(t.edges, t.edge_weights):
            pa, pb = self.positions[a], self.positions[b]
            segs.add(("seg", min(pa, pb), max(pa, pb)))
        for v, lab in t.ends:
            segs.add(("ray", self.positions[v], t.end_vector(lab)))
        return frozenset(segs)

    def to_json(self) -> dict:
        return {
            "type": self.type.to_json(),
            "positions": [[_q(x), _q(y)] for x, y in self.positions],
            "lengths": [_q(x) for x in self.lengths],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ParametrizedTropicalCurve":
        return cls(
            type=CombinatorialType.from_json(obj["type"]),
            positions=tuple((Fraction(x), Fraction(y)) for x, y in obj["positions"]),
            lengths=tuple(Fraction(x) for x in obj["lengths"]),
        )


def _q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class SolveOutcome:
    reason: str
    curve: ParametrizedTropicalCurve | None = None
    lengths: tuple[Fraction, ...] | None = None

    @property
    def solved(self) -> bool:
        return self.reason == SOLVED

    @property
    def on_boundary(self) -> bool:
        """Some length is exactly zero: the configuration lies on a wall."""
        return self.lengths is not None and any(x == 0 for x in self.lengths)


def _root_paths(t: CombinatorialType, root: int) -> dict[int, list[tuple[int, Vec]]]:
    """For each vertex, the (edge index, weight along the path) steps from
    the root."""
    adj: dict[int, list[tuple[int, int, Vec]]] = {v: [] for v in range(t.num_vertices)}
    for j, ((a, b), w) in enumerate(zip(t.edges, t.edge_weights)):
        adj[a].append((b, j, w))
        adj[b].append((a, j, -w))
    paths = {root: []}
    stack = [root]
    while stack:
        v = stack.pop()
        for u, j, w in adj[v]:
            if u not in paths:
                paths[u] = paths[v] + [(j, w)]
                stack.append(u)
    return paths


def incidence_matrix(t: CombinatorialType) -> list[list[int]]:
    """Rows: x then y of each marked point in order; columns: root x, root
    y, then one length per bounded edge."""
    root = t.vertex_of_marker(1)
    paths = _root_paths(t, root)
    ncols = 2 + len(t.edges)
    rows = []
    for i in range(1, t.n + 1):
        steps = paths[t.vertex_of_marker(i)]
        rx = [0] * ncols
        ry = [0] * ncols
        rx[0] = 1
        ry[1] = 1
        for j, w in steps:
            rx[2 + j] += w.x
            ry[2 + j] += w.y
        rows.append(rx)
        rows.append(ry)
    return rows


def positions_from_lengths(t: CombinatorialType, root_pos: Point, lengths: Sequence[Fraction]) -> tuple[Point, ...]:
    root = t.vertex_of_marker(1)
    paths = _root_paths(t, root)
    out = []
    for v in range(t.num_vertices):
        x, y = root_pos
        for j, w in paths[v]:
            x += lengths[j] * w.x
            y += lengths[j] * w.y
        out.append((x, y))
    return tuple(out)


def solve_through_points(t: CombinatorialType, config: PointConfiguration) -> SolveOutcome:
    """The unique curve of type ``t`` through ``config``, if any.

    The matrix depends on ``t`` alone, so a singular system means the type
    is not rigid (its evaluation map is not onto); it never contributes.
    """
    if len(t.edges) + 2 != 2 * t.n:
        raise ValueError(f"type has {len(t.edges)} bounded edges, need {2 * t.n - 2}")
    a = incidence_matrix(t)
    rhs = [c for p in config.points for c in p]
    try:
        sol = solve_integer_system(a, rhs)
    except SingularMatrixError:
        return SolveOutcome(SINGULAR)
    lengths = tuple(sol[2:])
    if any(x <= 0 for x in lengths):
        return SolveOutcome(NON_POSITIVE_LENGTH, lengths=lengths)
    positions = positions_from_lengths(t, (sol[0], sol[1]), lengths)
    return SolveOutcome(SOLVED, ParametrizedTropicalCurve(t, positions, lengths), lengths)


@dataclass
class AuditReport:
    passed: bool
    diagnostics: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


def genericity_audit(results: Iterable[tuple[object, SolveOutcome]], compare_images: bool = True) -> AuditReport:
    """Fail if a solution touches a cone boundary (a zero length) or two
    solutions have the same image."""
    diags: list[str] = []
    images: dict[frozenset, object] = {}
    for type_id, outcome in results:
        if outcome.on_boundary:
            diags.append(f"type {type_id}: solution has a zero-length edge")
        if outcome.solved and compare_images:
            key = outcome.curve.image_key()
            if key in images:
                diags.append(f"types {images[key]} and {type_id}: solutions coincide in image")
            images[key] = type_id
    return AuditReport(not diags, diags)


# -- search route --------------------------------------------------------------
#
# Positions inside the search are homogeneous integer triples (x, y, d)
# with d > 0, standing for (x/d, y/d); lengths are (numerator, denominator)
# pairs.  Both become Fractions once a curve is complete.
#
# A piece is a partial curve, stored persistently so that gluing never
# copies: (root position, graph, ends, top).  The graph is a pair
# (records, subgraphs) whose records are vertices (position, marker) and
# bounded edges (a, b, weight out of a, length), with vertices named by
# their positions.  Ends are (position, vector, flag); the flagged end, at
# index ``top`` (or -1), is the edge a caller will glue to a new vertex.

HPoint = tuple[int, int, int]


def _homogeneous(p: Point) -> HPoint:
    x, y = p
    return (x.numerator * y.denominator, y.numerator * x.denominator, x.denominator * y.denominator)


def _affine(h: HPoint) -> Point:
    return (Fraction(h[0], h[2]), Fraction(h[1], h[2]))


_Piece = tuple


def _make_piece(root: HPoint, records: list, subs: list, ends: list) -> _Piece:
    top = next((i for i, e in enumerate(ends) if e[2]), -1)
    return (root, (tuple(records), tuple(subs)), tuple(ends), top)


def _attach(records: list, subs: list, ends: list, at: HPoint, branch) -> None:
    if branch[0] == "end":
        ends.append((at, *branch[1]))
        return
    _, piece, length, weight = branch
    records.append((at, piece[0], weight, length))
    subs.append(piece[1])
    ends.extend(piece[2])


def _glue(entry, meet: HPoint, ell, t, v: Vec, found: list) -> list:
    """Branches made of a split-off piece, the new vertex at ``meet``, and
    each continuation in ``found``."""
    piece, y, mark, v1 = entry
    top = piece[3]
    rest = [(u, w, int(i == mark)) for i, (u, w, _) in enumerate(piece[2]) if i != top]
    out = []
    for br in found:
        records = [(meet, 0), (meet, y, v1, t)]
        subs = [piece[1]]
        ends = list(rest)
        _attach(records, subs, ends, meet, br)
        out.append(("piece", _make_piece(meet, records, subs, ends), ell, v))
    return out


def _flatten(graph) -> tuple[list, list]:
    vertices, edges = [], []
    stack = [graph]
    while stack:
        records, subs = stack.pop()
        for r in records:
            (vertices if len(r) == 2 else edges).append(r)
        stack.extend(subs)
    return vertices, edges


class CurveSearch:
    """All rigid curves of the given degree through ``config``."""

    def __init__(self, degree: Degree, profile: DescendantProfile, config: PointConfiguration):
        if len(config) != profile.n:
            raise ValueError("one point per marked end is required")
        self.degree = tuple(degree)
        self.profile = profile
        self.config = config
        self.plan = _plan_for(tuple(profile.k))
        self._points = [_homogeneous(p) for p in config.points]
        self._rigid_cache: dict[int, list[_Piece]] = {}
        self._anchored: dict[tuple[int, int], list] = {}
        self._split_cache: dict[int, list] = {}
        self._child_cache: dict[int, list] = {}
        self._branch_memo: dict[tuple[int, HPoint], list] = {}

    def rigid(self, rid: int) -> list[_Piece]:
        """Rigid pieces for problem ``rid``; vertex 0 of every piece is the
        lowest marked point."""
        found = self._rigid_cache.get(rid)
        if found is None:
            found = self._rigid_cache[rid] = self._rigid(rid)
        return found

    def _rigid(self, rid: int) -> list[_Piece]:
        root, block_splits = self.plan.rigid_info(rid)
        x = self._points[root - 1]
        out: list[_Piece] = []
        anchored = self._anchored
        for blocks in block_splits:
            options = []
            for bid in blocks:
                found = anchored.get((root, bid))
                if found is None:
                    found = anchored[(root, bid)] = self.branches(bid, x)
                if not found:
                    break
                options.append(found)
            else:
                for combo in product(*options):
                    records: list = [(x, root)]
                    subs: list = []
                    ends_out: list = []
                    for br in combo:
                        _attach(records, subs, ends_out, x, br)
                    out.append(_make_piece(x, records, subs, ends_out))
        return out

    def branches(self, bid: int, x: HPoint) -> list:
        """Rigid branches of problem ``bid`` leaving ``x``.  The first vertex
        along the way is trivalent: one side is a rigid piece whose free
        end comes back to it, the other continues as a branch."""
        points, ends, v, gens = self.plan.branch_info(bid)
        if not points:
            return [("end", ends[0])] if len(ends) == 1 else []
        x0, x1, xd = x
        if gens is not None:
            # every edge of the branch points along a sum of its ends, so
            # each marked point lies in x + cone(ends)
            for i in points:
                p = self._points[i - 1]
                if not _in_cone(gens, (p[0] * xd - x0 * p[2], p[1] * xd - x1 * p[2])):
                    return []
        splits = self._split_cache.get(bid)
        if splits is None:
            splits = self._splits(bid)
        parallel, crossing = splits
        vx, vy = v
        for y0, y1, yd in parallel:
            if (y0 * xd - x0 * yd) * vy == (y1 * xd - x1 * yd) * vx:
                raise NonGenericPoints("an edge leaving a fixed point runs along another edge")
        out = []
        branches = self.branches
        memo = self._branch_memo
        for s2, v1, det, pieces in crossing:
            ax, ay = v1.x, v1.y
            for piece, y, mark in pieces:
                # c = y - x, scaled by xd * yd > 0; the meet is x + t v with
                # y = meet + l v1 for t, l > 0
                y0, y1, yd = y
                c0 = y0 * xd - x0 * yd
                c1 = y1 * xd - x1 * yd
                nl = c0 * ay - c1 * ax
                nt = vx * c1 - vy * c0
                if nl * det <= 0 or nt * det <= 0:
                    if nl == 0 or nt == 0:
                        raise NonGenericPoints("a trivalent vertex lands on a fixed point or vertex")
                    continue
                md = xd * yd * det
                mx = x0 * yd * det + nl * vx
                my = x1 * yd * det + nl * vy
                if md < 0:
                    mx, my, md, nl, nt = -mx, -my, -md, -nl, -nt
                g = gcd(mx, my, md)
                meet = (mx // g, my // g, md // g)
                found = memo.get((s2, meet))
                if found is None:
                    found = memo[(s2, meet)] = branches(s2, meet)
                if found:
                    out.extend(_glue((piece, y, mark, v1), meet, (nl, md), (nt, md), v, found))
        return out

    def _splits(self, bid: int) -> tuple[list, list]:
        """The position-independent part of ``branches`` for the pieces
        that actually exist: split-off pieces whose return edge runs
        parallel to the branch, and the rest."""
        parallel, crossing = [], []
        cache = self._child_cache
        for cid, s2, v1, det in self.plan.branch_splits(bid) or ():
            pieces = cache.get(cid)
            if pieces is None:
                pieces = cache[cid] = self._solve_child(cid)
            if not pieces:
                continue
            if det == 0:
                parallel.extend(y for _, y, _ in pieces)
            else:
                crossing.append((s2, v1, det, pieces))
        self._split_cache[bid] = (parallel, crossing)
        return parallel, crossing

    def _solve_child(self, cid: int) -> list:
        """Solve the split-off piece with its own return end marked, then
        hand the mark of the outer problem (if any) to each distinct end
        that can carry it."""
        rid, marked = self.plan.child_info(cid)
        out = []
        for piece in self.rigid(rid):
            ends, top = piece[2], piece[3]
            y = ends[top][0]
            if marked is None:
                out.append((piece, y, -1))
                continue
            seen = set()
            for i, (u, w, _) in enumerate(ends):
                # equal ends at one vertex are interchangeable
                if i != top and w == marked and u not in seen:
                    seen.add(u)
                    out.append((piece, y, i))
        return out

    def run(self) -> list[ParametrizedTropicalCurve]:
        n = self.profile.n
        ends = tuple(sorted((v, 0) for v in self.degree))
        # the search allocates millions of acyclic tuples; cycle collection
        # only costs time here
        was_enabled = gc.isenabled()
        gc.disable()
        try:
            pieces = self.rigid(self.plan.rigid_id(tuple(range(1, n + 1)), ends))
        finally:
            if was_enabled:
                gc.enable()
        return [self._to_curve(p) for p in pieces]

    def _to_curve(self, piece: _Piece) -> ParametrizedTropicalCurve:
        n = self.profile.n
        vertices, edges = _flatten(piece[1])
        index = {pos: i for i, (pos, _) in enumerate(vertices)}
        if len(index) != len(vertices):
            raise NonGenericPoints("two vertices of a curve coincide")
        free: dict[Vec, list[int]] = {}
        for j, v in enumerate(self.degree):
            free.setdefault(v, []).append(n + 1 + j)
        raw = CombinatorialType(
            n=n,
            degree=self.degree,
            markers=tuple(m for _, m in vertices),
            edges=tuple((index[a], index[b]) for a, b, _, _ in edges),
            edge_weights=tuple(w for _, _, w, _ in edges),
            ends=tuple((index[u], free[v].pop(0)) for u, v, _ in piece[2]),
        )
        curve = ParametrizedTropicalCurve(
            raw,
            tuple(_affine(pos) for pos, _ in vertices),
            tuple(Fraction(*e) for _, _, _, e in edges),
        )
        return canonical_curve(curve)


# The combinatorial side of the search depends only on the profile, so it
# is shared between point configurations.


@lru_cache(maxsize=None)
def _momentum(ends: tuple) -> Vec:
    return vsum(w for w, _ in ends)


@lru_cache(maxsize=None)
def _split_off(j1: tuple) -> tuple[Vec, tuple, Vec | None]:
    """Momentum of ends split off a branch, the ends of the rigid problem
    they form (with the way back marked), and the outer mark they carry."""
    v1 = _momentum(j1)
    child = tuple(sorted([(w, 0) for w, _ in j1] + [(-v1, 1)]))
    return v1, child, next((w for w, f in j1 if f), None)


def _need(ks: tuple[int, ...], points: Sequence[int]) -> int:
    return len(points) + sum(ks[i - 1] for i in points)


@lru_cache(maxsize=None)
def _block_splits(ks: tuple[int, ...], points: tuple[int, ...], ends: tuple, m: int) -> tuple:
    """Splittings of points and ends into ``m`` unordered blocks, each of
    the size a rigid branch needs and with non-zero momentum."""
    if m == 1:
        if len(ends) == _need(ks, points) + 1 and not _momentum(ends).is_zero():
            return (((points, ends),),)
        return ()
    if not points:
        # only single-end blocks remain
        if len(ends) == m and all(not v.is_zero() for v, _ in ends):
            return (tuple(((), (e,)) for e in ends),)
        return ()
    out = []
    first, others = points[0], points[1:]
    for size in range(len(others) + 1):
        for extra in combinations(others, size):
            pts = (first,) + extra
            need = _need(ks, pts) + 1
            if need > len(ends):
                continue
            rest_pts = tuple(p for p in others if p not in extra)
            for es, rest_es in sub_multisets(ends, need):
                if _momentum(es).is_zero():
                    continue
                for tail in _block_splits(ks, rest_pts, rest_es, m - 1):
                    out.append(((pts, es),) + tail)
    return tuple(out)


class _Plan:
    """Sub-problems of the search for one descendant profile, numbered so
    the per-configuration caches can key on small integers.

    A rigid problem is (points, ends) with one end marked as the way back
    to the caller; a branch problem is (points, ends) hanging off a known
    position; a child is a rigid problem plus the vector of the outer mark
    it inherits (or None).
    """

    def __init__(self, ks: tuple[int, ...]):
        self.ks = ks
        self._rigid_ids: dict[tuple, int] = {}
        self._rigid: list = []
        self._branch_ids: dict[tuple, int] = {}
        self._branch: list = []
        self._child_ids: dict[tuple, int] = {}
        self._child: list = []

    def rigid_id(self, points: tuple[int, ...], ends: tuple) -> int:
        key = (points, ends)
        rid = self._rigid_ids.get(key)
        if rid is None:
            rid = self._rigid_ids[key] = len(self._rigid)
            self._rigid.append([key, None])
        return rid

    def branch_id(self, points: tuple[int, ...], ends: tuple) -> int:
        key = (points, ends)
        bid = self._branch_ids.get(key)
        if bid is None:
            bid = self._branch_ids[key] = len(self._branch)
            gens = tuple(sorted({w for w, _ in ends}))
            info = (points, ends, _momentum(ends), None if _spans_plane(gens) else gens)
            self._branch.append([info, None])
        return bid

    def child_id(self, rid: int, marked: Vec | None) -> int:
        key = (rid, marked)
        cid = self._child_ids.get(key)
        if cid is None:
            cid = self._child_ids[key] = len(self._child)
            self._child.append(key)
        return cid

    def rigid_info(self, rid: int) -> tuple[int, tuple]:
        """Root point and the block splittings around it whose blocks are
        all feasible."""
        slot = self._rigid[rid]
        if slot[1] is None:
            points, ends = slot[0]
            blocks: tuple = ()
            if points and len(ends) == _need(self.ks, points) + 1:
                root, rest = points[0], points[1:]
                kept = []
                for split in _block_splits(self.ks, rest, ends, self.ks[root - 1] + 2):
                    bids = tuple(self.branch_id(p, e) for p, e in split)
                    if all(self.branch_splits(b) is not None for b in bids):
                        kept.append(bids)
                blocks = tuple(kept)
            slot[1] = (points[0] if points else 0, blocks)
        return slot[1]

    def branch_info(self, bid: int) -> tuple:
        return self._branch[bid][0]

    def child_info(self, cid: int) -> tuple[int, Vec | None]:
        return self._child[cid]

    def branch_splits(self, bid: int) -> tuple | None:
        """Ways to cut a branch at its first vertex: some points and ends
        form a rigid piece, the rest continues from the cut.  None when
        the branch cannot exist for combinatorial reasons."""
        slot = self._branch[bid]
        if slot[1] is None:
            points, ends, v, _ = slot[0]
            out = []
            if not points:
                slot[1] = () if len(ends) == 1 else False
                return None if slot[1] is False else ()
            for size in range(1, len(points) + 1):
                for s1 in combinations(points, size):
                    need1 = _need(self.ks, s1)
                    if need1 >= len(ends):
                        continue
                    s2 = tuple(p for p in points if p not in s1)
                    for j1, j2 in sub_multisets(ends, need1):
                        v1, child, marked = _split_off(j1)
                        if v1.is_zero() or v1 == v:
                            continue
                        rest = self.branch_id(s2, j2)
                        if self.branch_splits(rest) is None:
                            continue
                        rid = self.rigid_id(s1, child)
                        if not self.rigid_info(rid)[1]:
                            continue
                        out.append((self.child_id(rid, marked), rest, v1, wedge(v, v1)))
            slot[1] = tuple(out) if out else False
        return slot[1] if slot[1] is not False else None


_plans: dict[tuple[int, ...], _Plan] = {}


def _plan_for(ks: tuple[int, ...]) -> _Plan:
    plan = _plans.get(ks)
    if plan is None:
        plan = _plans[ks] = _Plan(ks)
    return plan


@lru_cache(maxsize=None)
def _spans_plane(gens: tuple[Vec, ...]) -> bool:
    """True iff the cone spanned by ``gens`` is the whole plane."""
    for g in gens:
        for n in ((-g.y, g.x), (g.y, -g.x)):
            if all(n[0] * h.x + n[1] * h.y >= 0 for h in gens):
                return False
    return True


def _in_cone(gens: Sequence[Vec], d: tuple) -> bool:
    """Is ``d`` a non-negative combination of ``gens``?  In the plane two
    generators always suffice."""
    for i, a in enumerate(gens):
        wa = a.x * d[1] - a.y * d[0]
        if wa == 0 and a.x * d[0] + a.y * d[1] >= 0:
            return True
        for b in gens[i + 1 :]:
            ab = wedge(a, b)
            if ab == 0:
                continue
            wb = d[0] * b.y - d[1] * b.x
            if (wb >= 0 if ab > 0 else wb <= 0) and (wa >= 0 if ab > 0 else wa <= 0):
                return True
    return False


@lru_cache(maxsize=None)
def sub_multisets(items: tuple, size: int) -> tuple[tuple[tuple, tuple], ...]:
    """Distinct (chosen, rest) splits of a sorted tuple with ``size``
    chosen items."""
    groups: list[tuple[object, int]] = []
    for it in items:
        if groups and groups[-1][0] == it:
            groups[-1] = (it, groups[-1][1] + 1)
        else:
            groups.append((it, 1))

    def rec(i: int, left: int):
        if i == len(groups):
            if left == 0:
                yield (), ()
            return
        it, c = groups[i]
        for take in range(min(c, left), -1, -1):
            for a, b in rec(i + 1, left - take):
                yield (it,) * take + a, (it,) * (c - take) + b

    return tuple(rec(0, size))


def search_curves(degree: Degree, profile: DescendantProfile, config: PointConfiguration) -> list[ParametrizedTropicalCurve]:
    return CurveSearch(degree, profile, config).run()


def canonical_curve(curve: ParametrizedTropicalCurve, labeled: bool = False) -> ParametrizedTropicalCurve:
    """Renumber vertices in canonical depth-first order from marked point 1
    and relabel equal end vectors in that order (unless ``labeled``)."""
    t = curve.type
    root = t.vertex_of_marker(1)
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(t.num_vertices)}
    for j, (a, b) in enumerate(t.edges):
        adj[a].append((b, j))
        adj[b].append((a, j))
    ends_at: dict[int, list[int]] = {v: [] for v in range(t.num_vertices)}
    for v, lab in t.ends:
        ends_at[v].append(lab)

    memo: dict[tuple[int, int], tuple] = {}

    def enc(v: int, parent: int) -> tuple:
        if (v, parent) not in memo:
            children = tuple(sorted(enc(c, v) for c, _ in adj[v] if c != parent))
            ends = tuple(sorted(lab if labeled else t.end_vector(lab) for lab in ends_at[v]))
            memo[(v, parent)] = (t.markers[v], ends, children)
        return memo[(v, parent)]

    order: list[int] = []
    new_edges: list[tuple[int, int]] = []
    new_weights: list[Vec] = []
    new_lengths: list[Fraction] = []
    new_ends: list[tuple[int, int]] = []
    free: dict[Vec, list[int]] = {}
    for j, v in enumerate(t.degree):
        free.setdefault(v, []).append(t.n + 1 + j)

    def visit(v: int, parent: int) -> int:
        idx = len(order)
        order.append(v)
        labs = sorted(ends_at[v], key=lambda lab: (lab if labeled else t.end_vector(lab), lab))
        for lab in labs:
            new_ends.append((idx, lab if labeled else free[t.end_vector(lab)].pop(0)))
        kids = sorted(((enc(c, v), c, j) for c, j in adj[v] if c != parent), key=lambda z: z[0])
        for _, c, j in kids:
            a, b = t.edges[j]
            w = t.edge_weights[j] if a == v else -t.edge_weights[j]
            ci = visit(c, v)
            new_edges.append((idx, ci))
            new_weights.append(w)
            new_lengths.append(curve.lengths[j])
        return idx

    visit(root, -1)
    new_type = CombinatorialType(
        n=t.n,
        degree=t.degree,
        markers=tuple(t.markers[v] for v in order),
        edges=tuple(new_edges),
        edge_weights=tuple(new_weights),
        ends=tuple(new_ends),
    )
    return ParametrizedTropicalCurve(new_type, tuple(curve.positions[v] for v in order), tuple(new_lengths))

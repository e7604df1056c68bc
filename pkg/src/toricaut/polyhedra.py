"""Rational polyhedral cones and polyhedra, in exact arithmetic.

Cones are kept in both representations: ``ConePair`` stores the weight cone
(the cone spanned by the monoid) together with its dual.  The dual's rays are
the primitive inward facet normals of the weight cone and vice versa.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from . import lattice as lat
from .errors import NotPointed, NotStronglyConvex, RankTooLarge

Vector = tuple[int, ...]

DEFAULT_RANK_CAP = 6


def extreme_rays(constraints: Sequence[Sequence[int]]) -> list[Vector]:
    """Extreme rays of {x : a.x >= 0 for every row a}.

    Double description: start from the simplicial cone of a row basis and add
    the remaining halfspaces one at a time.  Two rays are adjacent when their
    common active rows have rank d - 2.  Requires full column rank.
    """
    rows = [list(map(int, a)) for a in constraints]
    d = len(rows[0])
    basis: list[int] = []
    for i, a in enumerate(rows):
        if lat.rank([rows[j] for j in basis] + [a]) > len(basis):
            basis.append(i)
            if len(basis) == d:
                break
    if len(basis) < d:
        raise NotPointed("constraint matrix is not of full column rank")

    inv = lat.inverse([rows[i] for i in basis])
    rays = [lat.integralize([inv[k][j] for k in range(d)]) for j in range(d)]
    done = list(basis)

    def zero_set(r):
        return frozenset(i for i in done if lat.dot(rows[i], r) == 0)

    for i, a in enumerate(rows):
        if i in basis:
            continue
        vals = [lat.dot(a, r) for r in rays]
        pos = [r for r, v in zip(rays, vals) if v > 0]
        zer = [r for r, v in zip(rays, vals) if v == 0]
        neg = [(r, v) for r, v in zip(rays, vals) if v < 0]
        new = []
        if pos and neg:
            zsets = {r: zero_set(r) for r in rays}
            for p in pos:
                vp = lat.dot(a, p)
                for n, vn in neg:
                    common = zsets[p] & zsets[n]
                    if d >= 2 and lat.rank([rows[j] for j in common] or [[0] * d]) != d - 2:
                        continue
                    if d < 2:
                        continue
                    new.append(lat.primitive([vp * y - vn * x for x, y in zip(p, n)]))
        done.append(i)
        rays = sorted(set(pos + zer + new))
    return sorted(set(rays))


@dataclass(frozen=True)
class ConePair:
    """A full-dimensional cone in M_Q with a pointed dual in N_Q.

    ``dual_generators`` are the primitive extreme rays of the weight cone,
    ``sigma_rays`` the primitive rays p_rho of its dual.  The facets of each
    cone are the rays of the other.
    """

    ambient_rank: int
    dual_generators: tuple[Vector, ...]
    sigma_rays: tuple[Vector, ...]

    @property
    def dual_facets(self) -> tuple[Vector, ...]:
        return self.sigma_rays

    @property
    def sigma_facets(self) -> tuple[Vector, ...]:
        return self.dual_generators

    def contains(self, x: Sequence) -> bool:
        """Membership of a rational point in the weight cone."""
        return all(lat.dot(x, p) >= 0 for p in self.sigma_rays)

    def interior_functional(self) -> Vector:
        """Sum of the primitive rays of sigma; positive on the weight cone minus 0."""
        return tuple(sum(col) for col in zip(*self.sigma_rays))


def cone_from_generators(gens: Sequence[Sequence[int]]) -> ConePair:
    gens = [tuple(map(int, g)) for g in gens if any(g)]
    if not gens:
        raise NotPointed("no nonzero generators")
    r = len(gens[0])
    if lat.rank(gens) < r:
        raise NotPointed("generators do not span the ambient space")
    sigma_rays = extreme_rays(gens)
    if lat.rank(sigma_rays or [[0] * r]) < r:
        raise NotStronglyConvex("the cone spanned by the generators contains a line")
    dual_gens = extreme_rays(sigma_rays)
    return ConePair(r, tuple(dual_gens), tuple(sigma_rays))


def dual_cone(c: ConePair) -> ConePair:
    return ConePair(c.ambient_rank, c.sigma_rays, c.dual_generators)


@dataclass(frozen=True)
class Face:
    """A face of the weight cone, cut out by the sigma rays in ``active``."""

    id: int
    active: tuple[int, ...]
    dim: int
    spanning: tuple[int, ...]


@dataclass
class FaceLattice:
    cone: ConePair
    faces: list[Face]
    dual_faces: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def __len__(self):
        return len(self.faces)

    def __getitem__(self, i) -> Face:
        return self.faces[i]

    def leq(self, i: int, j: int) -> bool:
        """Face i is contained in face j."""
        return set(self.faces[j].active) <= set(self.faces[i].active)

    def dual_map(self, i: int) -> tuple[int, ...]:
        """The face of sigma dual to face i, as indices of its sigma rays."""
        return self.faces[i].active

    def dual_dim(self, i: int) -> int:
        rays = [self.cone.sigma_rays[k] for k in self.faces[i].active]
        return lat.rank(rays) if rays else 0

    def normals(self, i: int) -> list[Vector]:
        return [self.cone.sigma_rays[k] for k in self.faces[i].active]

    def non_normals(self, i: int) -> list[Vector]:
        act = set(self.faces[i].active)
        return [p for k, p in enumerate(self.cone.sigma_rays) if k not in act]

    def by_active(self, active) -> Face:
        key = tuple(sorted(active))
        for f in self.faces:
            if f.active == key:
                return f
        raise KeyError(key)

    @property
    def full(self) -> Face:
        return self.faces[-1]

    @property
    def minimal(self) -> Face:
        return self.faces[0]

    def meet(self, ids: Sequence[int]) -> int:
        """Intersection of faces."""
        active = set()
        for i in ids:
            active |= set(self.faces[i].active)
        return self._closure(active).id

    def _closure(self, active) -> Face:
        gens = self.cone.dual_generators
        span = [k for k, g in enumerate(gens) if all(lat.dot(g, self.cone.sigma_rays[a]) == 0 for a in active)]
        closed = tuple(
            a for a, p in enumerate(self.cone.sigma_rays) if all(lat.dot(gens[k], p) == 0 for k in span)
        )
        return self.by_active(closed)


def face_lattice(c: ConePair, rank_cap: int = DEFAULT_RANK_CAP) -> FaceLattice:
    """All faces of the weight cone, ordered canonically by (dim, active set)."""
    if c.ambient_rank > rank_cap:
        raise RankTooLarge(f"rank {c.ambient_rank} exceeds the cap {rank_cap}")
    gens, rays = c.dual_generators, c.sigma_rays

    def closure(active):
        span = tuple(k for k, g in enumerate(gens) if all(lat.dot(g, rays[a]) == 0 for a in active))
        closed = tuple(a for a, p in enumerate(rays) if all(lat.dot(gens[k], p) == 0 for k in span))
        return closed, span

    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    todo = [()]
    while todo:
        act = todo.pop()
        closed, span = closure(act)
        if closed in seen:
            continue
        seen[closed] = span
        for a in range(len(rays)):
            if a not in closed:
                todo.append(tuple(sorted(set(closed) | {a})))

    raw = []
    for closed, span in seen.items():
        dim = lat.rank([gens[k] for k in span]) if span else 0
        raw.append((dim, closed, span))
    raw.sort(key=lambda t: (t[0], t[1]))
    faces = [Face(i, closed, dim, span) for i, (dim, closed, span) in enumerate(raw)]

    # faces of sigma are indexed the same way from the other side
    dual_keys = sorted(
        ((lat.rank([rays[a] for a in f.active]) if f.active else 0, f.spanning) for f in faces)
    )
    dual_index = {span: i for i, (_, span) in enumerate(dual_keys)}
    return FaceLattice(c, faces, {f.id: dual_index[f.spanning] for f in faces})


@dataclass(frozen=True)
class RationalPolyhedron:
    """{x : a.x == b for (a, b) in equalities, a.x >= b for (a, b) in inequalities}."""

    dim: int
    equalities: tuple[tuple[Vector, int], ...] = ()
    inequalities: tuple[tuple[Vector, int], ...] = ()

    def contains(self, x: Sequence) -> bool:
        return all(lat.dot(a, x) == b for a, b in self.equalities) and all(
            lat.dot(a, x) >= b for a, b in self.inequalities
        )

    def with_box(self, box: Sequence[tuple[int, int]]) -> "RationalPolyhedron":
        extra = []
        for k, (lo, hi) in enumerate(box):
            e = tuple(int(j == k) for j in range(self.dim))
            extra.append((e, lo))
            extra.append((tuple(-a for a in e), -hi))
        return RationalPolyhedron(self.dim, self.equalities, self.inequalities + tuple(extra))


def _normalize(a: Sequence[int], b) -> Optional[tuple[Vector, int]]:
    """Tighten a.x >= b for integer x: divide by the content, round b up."""
    g = 0
    for x in a:
        g = math.gcd(g, x)
    if g == 0:
        return None
    return tuple(x // g for x in a), math.ceil(Fraction(b) / g)


def _fm_systems(poly: RationalPolyhedron) -> Optional[list[list[tuple[Vector, int]]]]:
    """Fourier-Motzkin projections onto the leading coordinates.

    Entry k constrains x_0..x_k (padded with zeros).  Returns None when a
    trivially violated constraint shows the polyhedron has no integer point.
    """
    cons: dict[Vector, int] = {}

    def add(store, a, b):
        nb = _normalize(a, b)
        if nb is None:
            return 0 >= b
        a, b = nb
        if b > store.get(a, b - 1):
            store[a] = b
        return True

    for a, b in poly.equalities:
        if not add(cons, a, b) or not add(cons, tuple(-x for x in a), -b):
            return None
    for a, b in poly.inequalities:
        if not add(cons, a, b):
            return None

    n = poly.dim
    systems: list[list[tuple[Vector, int]]] = [None] * n  # type: ignore[list-item]
    current = cons
    for k in range(n - 1, -1, -1):
        systems[k] = sorted(current.items())
        if k == 0:
            break
        nxt: dict[Vector, int] = {}
        lower = [(a, b) for a, b in current.items() if a[k] > 0]
        upper = [(a, b) for a, b in current.items() if a[k] < 0]
        for a, b in current.items():
            if a[k] == 0 and not add(nxt, a, b):
                return None
        for (a1, b1), (a2, b2) in itertools.product(lower, upper):
            c1, c2 = -a2[k], a1[k]
            a = tuple(c1 * x + c2 * y for x, y in zip(a1, a2))
            if not add(nxt, a, c1 * b1 + c2 * b2):
                return None
        current = nxt
    # opposite constraints with crossing bounds make the system empty
    for sys_k in systems:
        d = dict(sys_k)
        for a, b in sys_k:
            neg = tuple(-x for x in a)
            if neg in d and b + d[neg] > 0:
                return None
    return systems


def _enumerate(systems, n) -> Iterator[Vector]:
    x: list[int] = []

    def bounds(k):
        lo, hi = None, None
        for a, b in systems[k]:
            c = a[k]
            if c == 0:
                continue
            rest = b - sum(a[j] * x[j] for j in range(k))
            if c > 0:
                v = math.ceil(Fraction(rest, c))
                lo = v if lo is None else max(lo, v)
            else:
                v = math.floor(Fraction(rest, c))
                hi = v if hi is None else min(hi, v)
        return lo, hi

    def rec(k):
        if k == n:
            yield tuple(x)
            return
        for a, b in systems[k]:
            if all(a[j] == 0 for j in range(k, n)) and sum(a[j] * x[j] for j in range(k)) < b:
                return
        lo, hi = bounds(k)
        if lo is None or hi is None:
            raise ValueError("enumeration region is unbounded")
        for v in range(lo, hi + 1):
            x.append(v)
            yield from rec(k + 1)
            x.pop()

    yield from rec(0)


def lattice_points(poly: RationalPolyhedron, box: Sequence[tuple[int, int]]) -> list[Vector]:
    """Integer points of ``poly`` inside the closed box, in lexicographic order."""
    bounded = poly.with_box(box)
    if poly.dim == 0:
        return [()] if poly.contains(()) else []
    systems = _fm_systems(bounded)
    if systems is None:
        return []
    return [p for p in _enumerate(systems, poly.dim) if poly.contains(p)]


def vertices_and_rays(poly: RationalPolyhedron) -> tuple[list[tuple[Fraction, ...]], list[Vector]]:
    """Vertices and primitive recession rays of a pointed polyhedron.

    Computed from the extreme rays of the homogenization
    {(x, s) : a.x - b s (>=, ==) 0, s >= 0}.
    """
    n = poly.dim
    rows = []
    for a, b in poly.equalities:
        rows.append(list(a) + [-b])
        rows.append([-x for x in a] + [b])
    for a, b in poly.inequalities:
        rows.append(list(a) + [-b])
    rows.append([0] * n + [1])
    verts, rays = [], []
    for r in extreme_rays(rows):
        if r[-1] > 0:
            verts.append(tuple(Fraction(x, r[-1]) for x in r[:-1]))
        else:
            rays.append(tuple(r[:-1]))
    return sorted(verts), sorted(rays)


def bounding_box(verts, rays_or_steps) -> list[tuple[int, int]]:
    """Integer box around conv(verts) + sum of [0, 1] * steps."""
    n = len(verts[0])
    box = []
    for k in range(n):
        lo = min(v[k] for v in verts) + sum(min(0, s[k]) for s in rays_or_steps)
        hi = max(v[k] for v in verts) + sum(max(0, s[k]) for s in rays_or_steps)
        box.append((math.floor(lo), math.ceil(hi)))
    return box


def integer_feasible(poly: RationalPolyhedron) -> Optional[Vector]:
    """An integer point of ``poly`` or None when there is none.

    Equalities are solved over Z with Smith normal form.  What remains is
    split off its lineality lattice, and an integer point exists iff one lies
    in conv(vertices) + half-open parallelepiped of the integral recession
    rays, which is a bounded search.
    """
    n = poly.dim
    # x = x0 + t K over the integer solutions of the equalities
    if poly.equalities:
        a_mat = [list(a) for a, _ in poly.equalities]
        rhs = [b for _, b in poly.equalities]
        u, d, v = lat.smith_normal_form(a_mat)
        ub = lat.vec_mat(rhs, list(map(list, zip(*u))))  # U * rhs
        y0 = [0] * n
        for i in range(len(a_mat)):
            di = d[i][i] if i < n else 0
            if di == 0:
                if ub[i] != 0:
                    return None
            else:
                q, rem = divmod(ub[i], di)
                if rem:
                    return None
                y0[i] = q
        rk = sum(1 for i in range(min(len(a_mat), n)) if d[i][i])
        vt = list(map(list, zip(*v)))  # rows of V^T are the columns of V
        x0 = lat.vec_mat(y0, vt)
        kernel = [vt[i] for i in range(rk, n)]
    else:
        x0 = [0] * n
        kernel = lat.identity(n)

    if not kernel:
        return tuple(x0) if poly.contains(x0) else None

    # inequalities in t:  (a K) t >= b - a x0
    c_rows = [lat.vec_mat(list(a), list(map(list, zip(*kernel)))) for a, _ in poly.inequalities]
    c_rhs = [b - lat.dot(a, x0) for a, b in poly.inequalities]
    k = len(kernel)
    if not c_rows or not any(any(r) for r in c_rows):
        if all(b <= 0 for b in c_rhs):
            return tuple(x0)
        return None

    # strip the lineality lattice of the inequality system: t = V' y
    u2, d2, v2 = lat.smith_normal_form(c_rows)
    rk2 = sum(1 for i in range(min(len(c_rows), k)) if d2[i][i])
    cv = lat.matmul(c_rows, v2)
    reduced = RationalPolyhedron(
        rk2, (), tuple((tuple(row[:rk2]), b) for row, b in zip(cv, c_rhs))
    )
    verts, rays = vertices_and_rays(reduced)
    if not verts:
        return None
    box = bounding_box(verts, rays)
    pts = lattice_points(reduced, box)
    if not pts:
        return None
    y = list(pts[0]) + [0] * (k - rk2)
    t = [sum(v2[i][j] * y[j] for j in range(k)) for i in range(k)]
    x = [x0[i] + sum(t[j] * kernel[j][i] for j in range(k)) for i in range(n)]
    assert poly.contains(x)
    return tuple(x)

"""Brute-force verification oracles.

These deliberately avoid the decision procedures in :mod:`toricaut.monoid`:
monoid elements come from breadth-first enumeration of generator sums, cone
membership from Caratheodory (some linearly independent subset of generators
contains the point with nonnegative coefficients).
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Optional, Sequence

from . import lattice as lat

Vector = tuple[int, ...]


def exploration_radius(gens: Sequence[Vector], radius: int) -> int:
    """Sup-norm radius that contains some ordering of every decomposition.

    By the Steinitz lemma the summands of x = g_1 + ... + g_n can be ordered
    so that every partial sum stays within 2 * r * max|g| of the segment [0, x].
    """
    r = len(gens[0])
    gmax = max(max(map(abs, g)) for g in gens)
    return radius + 2 * r * gmax


def bfs_elements(gens: Sequence[Vector], radius: int) -> dict[Vector, Optional[int]]:
    """Elements of P reachable with partial sums inside the exploration box.

    Maps each element to the index of the last generator on a shortest path
    (None for the origin).  Complete for elements of sup-norm <= radius.
    """
    gens = [tuple(g) for g in gens]
    reach = exploration_radius(gens, radius)
    zero = (0,) * len(gens[0])
    seen: dict[Vector, Optional[int]] = {zero: None}
    queue = deque([zero])
    while queue:
        x = queue.popleft()
        for i, g in enumerate(gens):
            y = tuple(a + b for a, b in zip(x, g))
            if y not in seen and max(map(abs, y)) <= reach:
                seen[y] = i
                queue.append(y)
    return seen


def bfs_path(elements: dict[Vector, Optional[int]], gens: Sequence[Vector], x: Vector) -> list[Vector]:
    path = []
    while elements[x] is not None:
        g = gens[elements[x]]
        path.append(g)
        x = tuple(a - b for a, b in zip(x, g))
    return path[::-1]


def in_rational_cone(x: Sequence[int], gens: Sequence[Vector]) -> bool:
    """x in cone(gens) for generators spanning Q^r."""
    r = len(x)
    if not any(x):
        return True
    for idx in itertools.combinations(range(len(gens)), r):
        basis = [gens[i] for i in idx]
        if lat.determinant(basis) == 0:
            continue
        lam = lat.vec_mat(list(x), lat.inverse(basis))
        if all(c >= 0 for c in lam):
            return True
    return False


def box(radius: int, r: int):
    return itertools.product(range(-radius, radius + 1), repeat=r)


def sup(x) -> int:
    return max(map(abs, x), default=0)


def member(gens: Sequence[Vector], x: Sequence[int], radius: int) -> tuple[bool, list[Vector]]:
    x = tuple(x)
    elems = bfs_elements(gens, max(radius, sup(x)))
    if x in elems:
        return True, bfs_path(elems, gens, x)
    return False, []


def admissible_refutation(
    gens: Sequence[Vector], e: Sequence[int], radius: int, elements: Optional[dict] = None
) -> Optional[tuple[Vector, Vector]]:
    """First p in P (sup-norm <= radius) with e + p in the cone but not in P.

    ``elements`` may pass a precomputed ``bfs_elements(gens, R)`` with
    R >= radius + |e|.
    """
    e = tuple(e)
    elems = elements if elements is not None else bfs_elements(gens, radius + sup(e))
    for p in sorted((p for p in elems if sup(p) <= radius), key=lambda p: (sup(p), p)):
        q = tuple(a + b for a, b in zip(e, p))
        if in_rational_cone(q, gens) and q not in elems:
            return p, q
    return None


def holes(gens: Sequence[Vector], radius: int) -> list[Vector]:
    """Points of Z^r cap cone(gens) outside P, sup-norm <= radius.

    Assumes gens generate Z^r as a group.
    """
    elems = bfs_elements(gens, radius)
    r = len(gens[0])
    return sorted(x for x in box(radius, r) if x not in elems and in_rational_cone(x, gens))


def tau_roots(rays: Sequence[Vector], normals: Sequence[int], radius: int) -> list[tuple[Vector, int]]:
    """(e, distinguished ray index) for every tau-root with sup-norm <= radius."""
    out = []
    r = len(rays[0])
    for e in box(radius, r):
        vals = [lat.dot(e, p) for p in rays]
        for k in normals:
            if vals[k] != -1:
                continue
            if all(vals[j] == 0 for j in normals if j != k) and all(
                vals[j] >= 0 for j in range(len(rays)) if j not in normals
            ):
                out.append((e, k))
    return sorted(out, key=lambda t: (sup(t[0]), t[0], t[1]))

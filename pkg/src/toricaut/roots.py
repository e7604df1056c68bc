"""Demazure roots, tau-roots and admissibility for affine monoids."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import lattice as lat
from .errors import NotInMonoid, NotNormalRay
from .monoid import MonoidSpec
from .polyhedra import (
    ConePair,
    Face,
    FaceLattice,
    RationalPolyhedron,
    bounding_box,
    integer_feasible,
    lattice_points,
    vertices_and_rays,
)

Vector = tuple[int, ...]

DEFAULT_ROOT_BOUND = 32

EXISTS = "exists"
NONE_PROVEN = "none_proven"
NONE_WITHIN_BOUND = "none_within_bound"


@dataclass(frozen=True)
class DemazureRoot:
    e: Vector
    distinguished: int
    pairings: tuple[int, ...]

    def __post_init__(self):
        for k, v in enumerate(self.pairings):
            if k == self.distinguished:
                assert v == -1, f"pairing with the distinguished ray is {v}, not -1"
            else:
                assert v >= 0, f"negative pairing {v} with ray {k}"


def as_root(cone: ConePair, e: Sequence[int]) -> Optional[DemazureRoot]:
    """The Demazure root with degree e, or None if e is not one."""
    e = tuple(e)
    pairings = tuple(lat.dot(e, p) for p in cone.sigma_rays)
    neg = [k for k, v in enumerate(pairings) if v < 0]
    if len(neg) != 1 or pairings[neg[0]] != -1:
        return None
    return DemazureRoot(e, neg[0], pairings)


def is_tau_root(fl: FaceLattice, face: Face, e: Sequence[int]) -> Optional[DemazureRoot]:
    root = as_root(fl.cone, e)
    if root is None or root.distinguished not in face.active:
        return None
    if any(root.pairings[k] for k in face.active if k != root.distinguished):
        return None
    return root


@dataclass(frozen=True)
class RootVerdict:
    status: str
    root: Optional[DemazureRoot] = None
    bound: Optional[int] = None
    proof: str = ""
    certificate: tuple = field(default=())

    @property
    def exists(self) -> bool:
        return self.status == EXISTS


def tau_root_polyhedron(fl: FaceLattice, face: Face, distinguished: int) -> RationalPolyhedron:
    if distinguished not in face.active:
        raise NotNormalRay(f"ray {distinguished} is not normal to face {face.id}")
    rays = fl.cone.sigma_rays
    eqs = [(rays[k], -1 if k == distinguished else 0) for k in face.active]
    ineqs = [(rays[k], 0) for k in range(len(rays)) if k not in face.active]
    return RationalPolyhedron(fl.cone.ambient_rank, tuple(eqs), tuple(ineqs))


def _shell(poly: RationalPolyhedron, k: int) -> list[Vector]:
    box = [(-k, k)] * poly.dim
    return [x for x in lattice_points(poly, box) if max(map(abs, x), default=0) == k]


def shell_search(
    fl: FaceLattice,
    polys: Sequence[tuple[int, RationalPolyhedron]],
    bound: int,
    accept: Callable[[Vector], bool],
) -> Optional[DemazureRoot]:
    """First accepted point in increasing sup-norm, lexicographic within a shell."""
    for k in range(bound + 1):
        cands = sorted((x, rho) for rho, poly in polys for x in _shell(poly, k))
        for x, _ in cands:
            if accept(x):
                return as_root(fl.cone, x)
    return None


def exists_tau_root(fl: FaceLattice, face: Face, bound: int = DEFAULT_ROOT_BOUND) -> RootVerdict:
    """Exact: some normal ray's root system has an integer point."""
    if not face.active:
        return RootVerdict(NONE_PROVEN, proof="face has no normal rays")
    feasible = []
    for rho in face.active:
        poly = tau_root_polyhedron(fl, face, rho)
        w = integer_feasible(poly)
        if w is not None:
            feasible.append((rho, poly, w))
    if not feasible:
        return RootVerdict(NONE_PROVEN, proof="every root system is integrally infeasible")
    cap = min(bound, min(max(map(abs, w), default=0) for _, _, w in feasible))
    root = shell_search(fl, [(rho, poly) for rho, poly, _ in feasible], cap, lambda x: True)
    if root is None:
        root = as_root(fl.cone, feasible[0][2])
    return RootVerdict(EXISTS, root, bound)


def is_admissible(e, monoid: MonoidSpec) -> bool:
    """(e + P) cap cone inside P, checked on generators of {p in P : e + p in cone}."""
    v = e.e if isinstance(e, DemazureRoot) else tuple(e)
    return all(tuple(a + b for a, b in zip(v, d)) in monoid for d in monoid.shifted_module_generators(v))


def admissibility_certificate(e, monoid: MonoidSpec) -> tuple:
    v = e.e if isinstance(e, DemazureRoot) else tuple(e)
    return tuple((d, tuple(a + b for a, b in zip(v, d))) for d in monoid.shifted_module_generators(v))


def _admissible_class_rep(monoid: MonoidSpec, fl: FaceLattice, face: Face, rho: int, poly) -> Optional[Vector]:
    """A root whose translates along P on the face are eventually admissible.

    Roots with distinguished ray rho are admissible iff e + g lies in P for
    every generator g pairing positively with rho.  Adding elements of P on
    the face preserves both the root property and admissibility, and a root
    becomes admissible after such a shift iff each e + g lies in P + L (L the
    group of P on the face).  That condition depends only on e modulo L, and
    every class of roots meets conv(vertices) + zonotope(face generators).
    """
    normals = fl.normals(face.id)
    p_rho = fl.cone.sigma_rays[rho]
    face_gens = [g for g in monoid.generators if all(lat.dot(g, p) == 0 for p in normals)]
    steps = [g for g in monoid.generators if lat.dot(g, p_rho) > 0]
    loc = monoid.localized(normals)
    verts, _ = vertices_and_rays(poly)
    if not verts:
        return None
    for e in lattice_points(poly, bounding_box(verts, face_gens)):
        if all(tuple(a + b for a, b in zip(e, g)) in loc for g in steps):
            return e
    return None


def _push_along_face(monoid: MonoidSpec, fl: FaceLattice, face: Face, e: Vector) -> Vector:
    normals = fl.normals(face.id)
    shift = [0] * monoid.rank
    for g in monoid.generators:
        if all(lat.dot(g, p) == 0 for p in normals):
            shift = [a + b for a, b in zip(shift, g)]
    k = 0
    while True:
        cand = tuple(a + k * b for a, b in zip(e, shift))
        if is_admissible(cand, monoid):
            return cand
        k += 1


def exists_admissible_tau_root(
    monoid: MonoidSpec, fl: FaceLattice, face: Face, bound: int = DEFAULT_ROOT_BOUND
) -> RootVerdict:
    """Exact decision with a canonical witness when one lies within ``bound``."""
    if monoid.is_saturated:
        v = exists_tau_root(fl, face, bound)
        if v.exists:
            return RootVerdict(EXISTS, v.root, bound, v.proof, admissibility_certificate(v.root, monoid))
        return v
    if not face.active:
        return RootVerdict(NONE_PROVEN, proof="face has no normal rays")
    live = []
    for rho in face.active:
        poly = tau_root_polyhedron(fl, face, rho)
        if integer_feasible(poly) is None:
            continue
        rep = _admissible_class_rep(monoid, fl, face, rho, poly)
        if rep is not None:
            live.append((rho, poly, rep))
    if not live:
        return RootVerdict(
            NONE_PROVEN,
            proof="no root class modulo the face lattice is admissible" if face.dim else "finite root set exhausted",
        )
    root = shell_search(fl, [(rho, poly) for rho, poly, _ in live], bound, lambda x: is_admissible(x, monoid))
    proof = "canonical search"
    if root is None:
        root = as_root(fl.cone, _push_along_face(monoid, fl, face, live[0][2]))
        proof = f"no admissible root within sup-norm {bound}; witness built by shifting along the face"
    return RootVerdict(EXISTS, root, bound, proof, admissibility_certificate(root, monoid))


def apply_demazure_derivation(root: DemazureRoot, m: Sequence[int], monoid: MonoidSpec, cone: ConePair = None):
    """d_e(chi^m) = <p_rho, m> chi^(e + m); a zero coefficient is the zero result."""
    m = tuple(m)
    if m not in monoid:
        raise NotInMonoid(f"{m} is not in P")
    cone = cone or monoid.cone
    p = cone.sigma_rays[root.distinguished]
    return lat.dot(p, m), tuple(a + b for a, b in zip(root.e, m))


def enumerate_tau_roots(fl: FaceLattice, face: Face) -> Optional[list[DemazureRoot]]:
    """All tau-roots when there are finitely many, else None."""
    out = []
    for rho in face.active:
        poly = tau_root_polyhedron(fl, face, rho)
        if integer_feasible(poly) is None:
            continue
        verts, rays = vertices_and_rays(poly)
        if rays:
            return None
        out.extend(as_root(fl.cone, x) for x in lattice_points(poly, bounding_box(verts, [])))
    return sorted(out, key=lambda r: r.e)

"""Decision procedures for a finitely generated affine monoid P in Z^r."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from . import lattice as lat
from .errors import AllZeroGenerators, InputError, SaturationSearchExceeded
from .polyhedra import ConePair, cone_from_generators

Vector = tuple[int, ...]

DEFAULT_SATURATION_LIMIT = 64
# candidates examined before falling back to multiples of the generator sum
_SATURATION_SCAN_CAP = 20000


@dataclass(frozen=True)
class MembershipCertificate:
    """Nonnegative coefficients reproducing x, or None for a refusal.

    A refusal is exhaustive: every decomposition path bounded by the level
    functional was explored.
    """

    x: Vector
    coefficients: Optional[tuple[int, ...]]

    @property
    def member(self) -> bool:
        return self.coefficients is not None


@dataclass(frozen=True)
class SaturationData:
    module_generators: tuple[Vector, ...]
    is_saturated: bool
    saturation_point: Vector


@dataclass(frozen=True, eq=False)
class MonoidSpec:
    """The monoid generated by ``generators`` inside Z^rank.

    Generators must generate Z^rank as a group and span a strongly convex
    full-dimensional cone; use :func:`prepare_monoid` to get there from raw
    input.
    """

    rank: int
    generators: tuple[Vector, ...]
    _memo: dict = field(default_factory=dict, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not self.generators:
            raise InputError("empty generator list")
        for g in self.generators:
            if len(g) != self.rank:
                raise InputError(f"generator {g} does not have length {self.rank}")
            if not any(g):
                raise InputError("zero generator")

    @cached_property
    def cone(self) -> ConePair:
        return cone_from_generators(self.generators)

    @cached_property
    def level(self) -> Vector:
        u = self.cone.interior_functional()
        if any(lat.dot(g, u) <= 0 for g in self.generators):
            raise AssertionError("interior functional vanishes on a generator")
        return u

    # -- membership -------------------------------------------------------

    def _decide(self, x: Vector) -> None:
        memo = self._memo
        gens = self.generators
        rays = self.cone.sigma_rays
        stack = [(x, 0)]
        while stack:
            y, i = stack[-1]
            if y in memo:
                stack.pop()
                continue
            if not any(y):
                memo[y] = -1
                stack.pop()
                continue
            if any(lat.dot(y, p) < 0 for p in rays):
                memo[y] = None
                stack.pop()
                continue
            pushed = False
            while i < len(gens):
                z = tuple(a - b for a, b in zip(y, gens[i]))
                if z not in memo:
                    if any(lat.dot(z, p) < 0 for p in rays):
                        memo[z] = None
                    else:
                        stack[-1] = (y, i)
                        stack.append((z, 0))
                        pushed = True
                        break
                if memo[z] is not None:
                    memo[y] = i
                    break
                i += 1
            if pushed:
                continue
            if y not in memo:
                memo[y] = None
            stack.pop()

    def certificate(self, x: Sequence[int]) -> MembershipCertificate:
        x = tuple(x)
        self._decide(x)
        if self._memo[x] is None:
            return MembershipCertificate(x, None)
        coeffs = [0] * len(self.generators)
        y = x
        while self._memo[y] != -1:
            i = self._memo[y]
            coeffs[i] += 1
            y = tuple(a - b for a, b in zip(y, self.generators[i]))
        return MembershipCertificate(x, tuple(coeffs))

    def __contains__(self, x) -> bool:
        x = tuple(x)
        if x not in self._memo:
            self._decide(x)
        return self._memo[x] is not None

    # -- saturation -------------------------------------------------------

    def _parallelepiped(self, basis: Sequence[Vector]) -> set[Vector]:
        """Lattice points of {sum mu_i b_i : 0 <= mu_i < 1}."""
        _, d, v = lat.smith_normal_form(basis)
        sv = lat.determinant(v)  # unimodular, so V^-1 = sv * adj(V)
        vinv = [[sv * a for a in row] for row in lat.adjugate(v)]
        det = lat.determinant(basis)
        adj = lat.adjugate(basis)  # det * B^-1
        if det < 0:
            det, adj = -det, [[-a for a in row] for row in adj]
        pts = set()
        for w in itertools.product(*(range(d[i][i]) for i in range(self.rank))):
            x = lat.vec_mat(list(w), vinv)
            # x - floor(x B^-1) B
            fl = [c // det for c in lat.vec_mat(x, adj)]
            shift = lat.vec_mat(fl, basis)
            pts.add(tuple(a - b for a, b in zip(x, shift)))
        return pts

    def minimal_elements(self, pts) -> list[Vector]:
        """Minimal elements under x <= y iff y - x in P."""
        pts = sorted(set(pts))
        keep = []
        for h in pts:
            if not any(o != h and tuple(a - b for a, b in zip(h, o)) in self for o in pts):
                keep.append(h)
        return keep

    @cached_property
    def module_generators(self) -> tuple[Vector, ...]:
        """Finite H with P_sat = union of h + P, minimal under the P-order."""
        cands: set[Vector] = set()
        for idx in itertools.combinations(range(len(self.generators)), self.rank):
            basis = [self.generators[i] for i in idx]
            if lat.determinant(basis):
                cands |= self._parallelepiped(basis)
        return tuple(self.minimal_elements(cands))

    @property
    def is_saturated(self) -> bool:
        return self.module_generators == ((0,) * self.rank,)

    def is_saturation_point(self, s: Sequence[int]) -> bool:
        return tuple(s) in self and all(
            tuple(a + b for a, b in zip(s, h)) in self for h in self.module_generators
        )

    def saturation_data(self, limit: int = DEFAULT_SATURATION_LIMIT) -> SaturationData:
        return SaturationData(
            self.module_generators, self.is_saturated, self.saturation_point(limit)
        )

    def saturation_point(self, limit: int = DEFAULT_SATURATION_LIMIT) -> Vector:
        """A point s of P with (s + cone) cap Z^r inside P.

        Elements of P up to the level of the generator sum are tried in
        (level, lex) order, then k times the generator sum for k = 2..limit.
        """
        if limit in self._cache:
            return self._cache[limit]
        if self.is_saturated:
            return (0,) * self.rank
        total = tuple(sum(c) for c in zip(*self.generators))
        u = self.level
        top = lat.dot(total, u)
        seen = {(0,) * self.rank}
        frontier = list(seen)
        while frontier and len(seen) < _SATURATION_SCAN_CAP:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = tuple(a + b for a, b in zip(x, g))
                    if y not in seen and lat.dot(y, u) <= top:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        for s in sorted(seen, key=lambda x: (lat.dot(x, u), x)):
            if self.is_saturation_point(s):
                self._cache[limit] = s
                return s
        for k in range(2, limit + 1):
            s = tuple(k * a for a in total)
            if self.is_saturation_point(s):
                self._cache[limit] = s
                return s
        raise SaturationSearchExceeded(f"no saturation point among k * sum(generators), k <= {limit}")

    def in_saturation(self, x: Sequence[int]) -> bool:
        x = tuple(x)
        if not self.cone.contains(x):
            return False
        return any(tuple(a - b for a, b in zip(x, h)) in self for h in self.module_generators)

    def is_hole(self, x: Sequence[int]) -> bool:
        return self.in_saturation(x) and tuple(x) not in self

    # -- shifted modules --------------------------------------------------

    def shifted_module_generators(self, e: Sequence[int]) -> list[Vector]:
        """Minimal generators of the P-module {p in P : e + p in cone}.

        The preimage of that module in N^m is upward closed; its minimal
        points have bounded coordinates and their images generate.
        """
        rays = self.cone.sigma_rays
        gens = self.generators
        need = [max(0, -lat.dot(e, p)) for p in rays]
        pair = [[lat.dot(g, p) for g in gens] for p in rays]
        bound = []
        for i in range(len(gens)):
            b = 0
            for k in range(len(rays)):
                if pair[k][i] > 0:
                    b = max(b, -(-need[k] // pair[k][i]))
            bound.append(b)

        found: list[tuple[int, ...]] = []
        a = [0] * len(gens)

        def slack_ok(vals):
            return all(v >= n for v, n in zip(vals, need))

        def rec(i, vals):
            if slack_ok(vals):
                found.append(tuple(a))
                return
            if i == len(gens):
                return
            for c in range(bound[i] + 1):
                a[i] = c
                rec(i + 1, [v + c * pair[k][i] for k, v in enumerate(vals)])
                if c and slack_ok([v + c * pair[k][i] for k, v in enumerate(vals)]):
                    break
            a[i] = 0

        rec(0, [0] * len(rays))
        images = {tuple(sum(c * g[j] for c, g in zip(coef, gens)) for j in range(self.rank)) for coef in found}
        return self.minimal_elements(images)

    # -- localization at a face -------------------------------------------

    def localized(self, normals: Sequence[Vector]) -> "LocalizedMembership":
        key = tuple(sorted(map(tuple, normals)))
        if key not in self._cache:
            self._cache[key] = LocalizedMembership(self, list(key))
        return self._cache[key]


class LocalizedMembership:
    """Membership in P + L, L the group generated by P on a face.

    The face is the common zero set of ``normals`` on the cone.  Points are
    compared by their class modulo L, read off a Smith form of L's generators.
    """

    def __init__(self, monoid: MonoidSpec, normals: list[Vector]):
        self.monoid = monoid
        self.normals = normals
        gens = monoid.generators
        on_face = [g for g in gens if all(lat.dot(g, p) == 0 for p in normals)]
        self.face_generators = on_face
        self.steps = [g for g in gens if g not in on_face]
        self.level = tuple(sum(c) for c in zip(*normals)) if normals else (0,) * monoid.rank
        if on_face:
            _, d, v = lat.smith_normal_form(on_face)
            self._v = v
            self._mods = [d[i][i] if i < len(d) and i < len(d[0]) else 0 for i in range(monoid.rank)]
        else:
            self._v = None
            self._mods = [0] * monoid.rank
        self._memo: dict = {}

    def key(self, x: Sequence[int]) -> Vector:
        if self._v is None:
            return tuple(x)
        y = lat.vec_mat(list(x), self._v)
        return tuple(a % m if m else a for a, m in zip(y, self._mods))

    def __contains__(self, x) -> bool:
        if not self.normals:
            return True
        memo = self._memo
        stack = [(tuple(x), 0)]
        while stack:
            y, i = stack[-1]
            ky = self.key(y)
            if ky in memo:
                stack.pop()
                continue
            if any(lat.dot(y, p) < 0 for p in self.normals):
                memo[ky] = False
                stack.pop()
                continue
            if not any(ky):
                memo[ky] = True
                stack.pop()
                continue
            pushed = False
            while i < len(self.steps):
                z = tuple(a - b for a, b in zip(y, self.steps[i]))
                kz = self.key(z)
                if kz not in memo:
                    stack[-1] = (y, i)
                    stack.append((z, 0))
                    pushed = True
                    break
                if memo[kz]:
                    memo[ky] = True
                    break
                i += 1
            if pushed:
                continue
            if ky not in memo:
                memo[ky] = False
            stack.pop()
        return memo[self.key(tuple(x))]


def prepare_monoid(gens: Sequence[Sequence[int]]) -> tuple[lat.Reembedding, MonoidSpec, list[str]]:
    """Deduplicate, drop zeros and re-embed raw generators into Z^r."""
    warnings = []
    raw = [tuple(int(a) for a in g) for g in gens]
    if not raw:
        raise InputError("empty generator list")
    n = len(raw[0])
    if any(len(g) != n for g in raw):
        raise InputError("generators have different lengths")
    cleaned = []
    for g in raw:
        if not any(g):
            warnings.append(f"dropped zero generator {list(g)}")
        elif g in cleaned:
            warnings.append(f"dropped duplicate generator {list(g)}")
        else:
            cleaned.append(g)
    if not cleaned:
        raise AllZeroGenerators("degenerate monoid: every generator is zero")
    emb, reduced = lat.reembed_full_rank(cleaned)
    if not emb.is_identity:
        warnings.append(
            f"re-embedded from Z^{emb.original_rank} into Z^{emb.reduced_rank} (group generated by P)"
        )
    spec = MonoidSpec(emb.reduced_rank, tuple(reduced))
    spec.cone  # validates strong convexity up front
    return emb, spec, warnings


def member(x: Sequence[int], p: MonoidSpec) -> tuple[bool, MembershipCertificate]:
    cert = p.certificate(x)
    return cert.member, cert


def saturation_data(p: MonoidSpec, limit: int = DEFAULT_SATURATION_LIMIT) -> SaturationData:
    return p.saturation_data(limit)


def hole_query(x: Sequence[int], p: MonoidSpec) -> bool:
    return p.is_hole(x)


def shifted_module_generators(e: Sequence[int], p: MonoidSpec) -> list[Vector]:
    return p.shifted_module_generators(e)

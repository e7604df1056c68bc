"""Orbit classification for the neutral component of the automorphism group.

Faces of the weight cone index the torus (or G-) orbits.  A face is
*invariant* when the closure of its orbit is stable under all additive group
actions; the map phi sends a face to the smallest invariant face containing
it, and two orbits are glued exactly when phi agrees on them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import lattice as lat
from .errors import NonUniqueMinimal, UnknownVerdictsPresent
from .monoid import DEFAULT_SATURATION_LIMIT, MonoidSpec, SaturationData, prepare_monoid
from .polyhedra import DEFAULT_RANK_CAP, Face, FaceLattice, face_lattice
from .roots import (
    DEFAULT_ROOT_BOUND,
    DemazureRoot,
    as_root,
    enumerate_tau_roots,
    exists_admissible_tau_root,
    exists_tau_root,
    is_admissible,
    is_tau_root,
)

log = logging.getLogger(__name__)

TORIC_GENERAL = "toric-general"
TORIC_NORMAL = "toric-normal"
TABLE = "table"

YES, NO, UNKNOWN = "yes", "no", "unknown"

INVARIANT = "invariant"
NOT_INVARIANT = "not_invariant"
UNDECIDED = "unknown"

Vector = tuple[int, ...]


@dataclass(frozen=True)
class LndOracle:
    """Which Demazure roots are degrees of nonzero homogeneous LNDs."""

    mode: str
    yes_degrees: frozenset = frozenset()
    no_degrees: frozenset = frozenset()
    default: str = NO

    def __post_init__(self):
        if self.mode not in (TORIC_GENERAL, TORIC_NORMAL, TABLE):
            raise ValueError(f"unknown oracle mode {self.mode!r}")
        if self.default not in (NO, UNKNOWN):
            raise ValueError("table default must be 'no' or 'unknown'")

    @classmethod
    def table(cls, yes: Iterable = (), no: Iterable = (), default: str = NO) -> "LndOracle":
        return cls(TABLE, frozenset(map(tuple, yes)), frozenset(map(tuple, no)), default)

    def answer(self, e: Sequence[int], monoid: MonoidSpec) -> str:
        e = tuple(e)
        if self.mode == TABLE:
            if e in self.yes_degrees:
                return YES
            if e in self.no_degrees:
                return NO
            return self.default
        if as_root(monoid.cone, e) is None:
            return NO
        if self.mode == TORIC_NORMAL:
            return YES
        return YES if is_admissible(e, monoid) else NO

    def reembedded(self, emb: lat.Reembedding) -> tuple["LndOracle", list[str]]:
        """Move table degrees into reduced coordinates; off-lattice ones are dropped."""
        if self.mode != TABLE or emb.is_identity:
            return self, []
        warnings = []

        def move(degs):
            out = set()
            for d in sorted(degs):
                if emb.contains(d):
                    out.add(emb.forward(d))
                else:
                    warnings.append(f"table degree {list(d)} is outside the group generated by P; ignored")
            return frozenset(out)

        return LndOracle(TABLE, move(self.yes_degrees), move(self.no_degrees), self.default), warnings


@dataclass(frozen=True)
class InvarianceVerdict:
    face: int
    status: str
    witness: Optional[DemazureRoot] = None
    reason: str = ""
    certificate: tuple = ()


def invariance_table(
    fl: FaceLattice, oracle: LndOracle, monoid: MonoidSpec, bound: int = DEFAULT_ROOT_BOUND
) -> list[InvarianceVerdict]:
    return [_face_verdict(fl, f, oracle, monoid, bound) for f in fl.faces]


def _face_verdict(fl, face: Face, oracle: LndOracle, monoid, bound) -> InvarianceVerdict:
    if not face.active:
        return InvarianceVerdict(face.id, INVARIANT, reason="no normal rays, hence no tau-roots")
    if oracle.mode == TORIC_NORMAL:
        v = exists_tau_root(fl, face, bound)
        if v.exists:
            return InvarianceVerdict(face.id, NOT_INVARIANT, v.root, "tau-root (every root is an LND degree)")
        return InvarianceVerdict(face.id, INVARIANT, reason=v.proof)
    if oracle.mode == TORIC_GENERAL:
        v = exists_admissible_tau_root(monoid, fl, face, bound)
        if v.exists:
            return InvarianceVerdict(face.id, NOT_INVARIANT, v.root, "admissible tau-root", v.certificate)
        if v.status == "none_within_bound":
            return InvarianceVerdict(face.id, UNDECIDED, reason=f"no admissible tau-root within sup-norm {v.bound}")
        return InvarianceVerdict(face.id, INVARIANT, reason=v.proof)

    hits = [r for r in (is_tau_root(fl, face, e) for e in oracle.yes_degrees) if r is not None]
    if hits:
        hits.sort(key=lambda r: (max(map(abs, r.e), default=0), r.e))
        return InvarianceVerdict(face.id, NOT_INVARIANT, hits[0], "tau-root listed as an LND degree")
    if oracle.default == NO:
        return InvarianceVerdict(face.id, INVARIANT, reason="no listed LND degree is a tau-root; table default is no")
    roots = enumerate_tau_roots(fl, face)
    if roots is None:
        if not exists_tau_root(fl, face, bound).exists:
            return InvarianceVerdict(face.id, INVARIANT, reason="no tau-roots")
        return InvarianceVerdict(face.id, UNDECIDED, reason="infinitely many tau-roots; table default is unknown")
    missing = [r.e for r in roots if r.e not in oracle.no_degrees]
    if missing:
        return InvarianceVerdict(
            face.id, UNDECIDED, reason=f"tau-roots {[list(m) for m in missing]} are not in the table"
        )
    return InvarianceVerdict(face.id, INVARIANT, reason="every tau-root is listed as a non-degree")


@dataclass(frozen=True)
class OrbitDescriptor:
    face: int
    dim: int
    closure: tuple[int, ...]
    ideal: str


def orbit_dictionary(fl: FaceLattice) -> list[OrbitDescriptor]:
    """Orbit O_t for each face t; O_t lies in the closure of O_x iff t is inside x."""
    out = []
    for f in fl.faces:
        below = tuple(g.id for g in fl.faces if fl.leq(g.id, f.id))
        out.append(OrbitDescriptor(f.id, f.dim, below, f"spanned by weights of P off face {f.id}"))
    return out


def orbit_contains(fl: FaceLattice, xi: int, tau: int) -> bool:
    return fl.leq(tau, xi)


def phi(fl: FaceLattice, verdicts: Sequence[InvarianceVerdict]) -> dict[int, int]:
    undecided = [v.face for v in verdicts if v.status == UNDECIDED]
    if undecided:
        raise UnknownVerdictsPresent(f"faces {undecided} have unknown invariance")
    inv = [v.face for v in verdicts if v.status == INVARIANT]
    out = {}
    for f in fl.faces:
        above = [x for x in inv if fl.leq(f.id, x)]
        minimal = [x for x in above if not any(y != x and fl.leq(y, x) for y in above)]
        if len(minimal) != 1:
            raise NonUniqueMinimal(f"face {f.id} has minimal invariant faces {minimal}")
        assert fl.meet(above) == minimal[0]
        out[f.id] = minimal[0]
    return out


@dataclass(frozen=True)
class OrbitClass:
    head: int
    members: tuple[int, ...]
    subtracted: tuple[int, ...]

    @property
    def description(self) -> str:
        s = f"closure(O_{self.head})"
        if self.subtracted:
            s += " minus " + " U ".join(f"closure(O_{x})" for x in self.subtracted)
        return s


def orbit_classes(fl: FaceLattice, phimap: dict[int, int]) -> list[OrbitClass]:
    out = []
    for head in sorted(set(phimap.values())):
        members = tuple(sorted(t for t, h in phimap.items() if h == head))
        lower = [x for x in phimap if fl.leq(x, head) and phimap[x] != head]
        maximal = tuple(sorted(x for x in lower if not any(y != x and fl.leq(x, y) for y in lower)))
        out.append(OrbitClass(head, members, maximal))
    return out


@dataclass
class ClassificationReport:
    reembedding: lat.Reembedding
    monoid: MonoidSpec
    lattice: FaceLattice
    saturation: SaturationData
    oracle: LndOracle
    bound: int
    verdicts: list[InvarianceVerdict]
    phi: Optional[dict[int, int]]
    classes: Optional[list[OrbitClass]]
    root_faces: list[int] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.classes is not None


def classify(
    generators: Sequence[Sequence[int]],
    oracle: Optional[LndOracle] = None,
    bound: int = DEFAULT_ROOT_BOUND,
    saturation_limit: int = DEFAULT_SATURATION_LIMIT,
    rank_cap: int = DEFAULT_RANK_CAP,
) -> ClassificationReport:
    """Full pipeline: re-embed, cones, faces, verdicts, phi, classes.

    ``oracle=None`` picks toric-normal for saturated monoids and
    toric-general otherwise.
    """
    emb, monoid, warnings = prepare_monoid(generators)
    fl = face_lattice(monoid.cone, rank_cap)
    sat = monoid.saturation_data(saturation_limit)
    if oracle is None:
        oracle = LndOracle(TORIC_NORMAL if sat.is_saturated else TORIC_GENERAL)
    elif oracle.mode == TORIC_NORMAL and not sat.is_saturated:
        warnings.append("toric-normal mode on a nonsaturated monoid treats every root as an LND degree")
    oracle, moved = oracle.reembedded(emb)
    warnings += moved
    if oracle.mode == TABLE:
        for d in sorted(oracle.yes_degrees):
            if as_root(monoid.cone, d) is None:
                warnings.append(f"table yes-degree {list(d)} is not a Demazure root")

    verdicts = invariance_table(fl, oracle, monoid, bound)
    # a witness is itself a tau-root, so only witness-free faces need the exact test
    root_faces = [
        f.id for f, v in zip(fl.faces, verdicts) if v.witness is not None or exists_tau_root(fl, f, bound).exists
    ]
    if any(v.status == UNDECIDED for v in verdicts):
        log.info("classification incomplete: undecided faces present")
        pm, classes = None, None
    else:
        pm = phi(fl, verdicts)
        classes = orbit_classes(fl, pm)
    return ClassificationReport(emb, monoid, fl, sat, oracle, bound, verdicts, pm, classes, root_faces, warnings)

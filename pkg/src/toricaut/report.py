"""Machine- and human-readable classification reports.

The JSON field names below are a stable interface; see README.md.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Optional

from . import __version__
from . import oracles
from .orbits import NOT_INVARIANT, TORIC_GENERAL, ClassificationReport

FORMAT = "toricaut-report/1"


@dataclass
class ReportDocument:
    format: str
    provenance: dict
    input: dict
    reembedding: dict
    generators: list
    cone: dict
    saturation: dict
    faces: list
    verdicts: list
    phi: Optional[list]
    classes: Optional[list]
    advisory: dict
    complete: bool
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "ReportDocument":
        names = {f.name for f in fields(cls)}
        missing = names - d.keys()
        if missing:
            raise ValueError(f"report is missing fields {sorted(missing)}")
        return cls(**{k: d[k] for k in names})

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))


def _vec(v) -> list[int]:
    return [int(a) for a in v]


def build_report(
    rep: ClassificationReport,
    raw_generators,
    requested_mode: str,
    bf_radius: int,
    saturation_limit: int,
    strict: bool,
) -> ReportDocument:
    emb, monoid, fl = rep.reembedding, rep.monoid, rep.lattice
    cone = fl.cone
    faces = []
    for f in fl.faces:
        faces.append(
            {
                "id": f.id,
                "dim": f.dim,
                "active_normals": [_vec(cone.sigma_rays[k]) for k in f.active],
                "spanning_generators": [_vec(cone.dual_generators[k]) for k in f.spanning],
                "dual_face_id": fl.dual_faces[f.id],
                "dual_dim": fl.dual_dim(f.id),
            }
        )
    verdicts = []
    for v in rep.verdicts:
        entry: dict[str, Any] = {"face": v.face, "status": v.status, "reason": v.reason, "witness": None}
        if v.witness is not None:
            w = v.witness
            entry["witness"] = {
                "e": _vec(w.e),
                "e_original": _vec(emb.backward(w.e)),
                "distinguished_ray": _vec(cone.sigma_rays[w.distinguished]),
                "pairings": list(w.pairings),
            }
            if v.certificate:
                entry["witness"]["admissibility_checks"] = [[_vec(d), _vec(s)] for d, s in v.certificate]
            if rep.oracle.mode == TORIC_GENERAL and v.status == NOT_INVARIANT:
                ref = oracles.admissible_refutation(monoid.generators, w.e, bf_radius)
                entry["witness"]["brute_force"] = (
                    f"not refuted within radius {bf_radius}" if ref is None else f"REFUTED at p={_vec(ref[0])}"
                )
        verdicts.append(entry)
    sat = rep.saturation
    return ReportDocument(
        format=FORMAT,
        provenance={
            "tool": "toricaut",
            "version": __version__,
            "mode": rep.oracle.mode,
            "requested_mode": requested_mode,
            "bounds": {
                "root_search": rep.bound,
                "brute_force_radius": bf_radius,
                "saturation_limit": saturation_limit,
            },
            "strict": strict,
        },
        input={"rank": emb.original_rank, "generators": [_vec(g) for g in raw_generators]},
        reembedding={
            "original_rank": emb.original_rank,
            "reduced_rank": emb.reduced_rank,
            "basis": [_vec(b) for b in emb.basis],
            "index": emb.index_note,
            "identity": emb.is_identity,
        },
        generators=[_vec(g) for g in monoid.generators],
        cone={
            "dual_generators": [_vec(g) for g in cone.dual_generators],
            "sigma_rays": [_vec(p) for p in cone.sigma_rays],
        },
        saturation={
            "module_generators": [_vec(h) for h in sat.module_generators],
            "saturation_point": _vec(sat.saturation_point),
            "is_saturated": sat.is_saturated,
        },
        faces=faces,
        verdicts=verdicts,
        phi=None if rep.phi is None else [{"face": k, "phi": rep.phi[k]} for k in sorted(rep.phi)],
        classes=None
        if rep.classes is None
        else [
            {
                "head": c.head,
                "members": list(c.members),
                "subtracted": list(c.subtracted),
                "description": c.description,
            }
            for c in rep.classes
        ],
        advisory={"faces_with_tau_roots": rep.root_faces},
        complete=rep.complete,
        warnings=list(rep.warnings),
    )


def _face_text(face: dict, rays: list) -> str:
    eqs = [f"<x,{tuple(p)}> = 0" for p in face["active_normals"]]
    ineqs = [f"<x,{tuple(p)}> >= 0" for p in rays if p not in face["active_normals"]]
    return f"face {face['id']} (dim {face['dim']}): " + ", ".join(eqs + ineqs)


def render_text(doc: ReportDocument) -> str:
    rays = doc.cone["sigma_rays"]
    lines = [
        f"toricaut {doc.provenance['version']}  mode={doc.provenance['mode']}",
        f"generators (Z^{doc.reembedding['reduced_rank']}): {[tuple(g) for g in doc.generators]}",
        f"weight cone rays: {[tuple(g) for g in doc.cone['dual_generators']]}",
        f"dual cone rays:   {[tuple(p) for p in rays]}",
        f"saturated: {doc.saturation['is_saturated']}  module generators: "
        f"{[tuple(h) for h in doc.saturation['module_generators']]}  saturation point: "
        f"{tuple(doc.saturation['saturation_point'])}",
        "",
    ]
    by_face = {f["id"]: f for f in doc.faces}
    verdict = {v["face"]: v for v in doc.verdicts}

    def face_line(i):
        v = verdict[i]
        s = "  " + _face_text(by_face[i], rays) + f"  [{v['status']}]"
        if v["witness"]:
            s += f" root {tuple(v['witness']['e'])}"
        return s

    if doc.classes is None:
        lines.append("classification INCOMPLETE (undecided faces)")
        for f in doc.faces:
            lines.append(face_line(f["id"]))
            if verdict[f["id"]]["status"] == "unknown":
                lines.append(f"    reason: {verdict[f['id']]['reason']}")
    else:
        lines.append(f"{len(doc.classes)} Aut^0-orbit class(es)")
        for n, c in enumerate(doc.classes, 1):
            lines.append(f"class {n}: {c['description']}")
            for m in c["members"]:
                lines.append(face_line(m))
    for w in doc.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"

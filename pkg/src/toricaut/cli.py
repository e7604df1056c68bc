"""Command line interface: ``toricaut classify`` and ``toricaut oracle``.

Exit codes: 0 success, 2 invalid input, 3 undecided faces under --strict.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import oracles
from .errors import InputError, NotInLattice, RankTooLarge, ToricAutError
from .monoid import DEFAULT_SATURATION_LIMIT, prepare_monoid
from .orbits import TABLE, TORIC_GENERAL, TORIC_NORMAL, LndOracle, classify
from .polyhedra import face_lattice
from .report import ReportDocument, build_report, render_text
from .roots import DEFAULT_ROOT_BOUND

EXIT_OK, EXIT_INVALID, EXIT_UNKNOWN = 0, 2, 3
MODES = ("auto", TORIC_NORMAL, TORIC_GENERAL, TABLE)
DEFAULT_BF_RADIUS = 24


@dataclass
class InputDocument:
    rank: int
    generators: list[list[int]]
    mode: str = "auto"
    yes_degrees: list[list[int]] = field(default_factory=list)
    no_degrees: list[list[int]] = field(default_factory=list)
    default: str = "no"
    root_search: int = DEFAULT_ROOT_BOUND
    brute_force_radius: int = DEFAULT_BF_RADIUS
    saturation_limit: int = DEFAULT_SATURATION_LIMIT
    strict: bool = False

    def oracle(self) -> Optional[LndOracle]:
        if self.mode == "auto":
            return None
        if self.mode == TABLE:
            return LndOracle.table(self.yes_degrees, self.no_degrees, self.default)
        return LndOracle(self.mode)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _vector(x, rank: int, where: str) -> list[int]:
    if not isinstance(x, list) or not all(_is_int(a) for a in x):
        raise InputError(f"{where}: expected a list of integers, got {json.dumps(x)}")
    if len(x) != rank:
        raise InputError(f"{where}: expected {rank} integers, got {len(x)}")
    return list(x)


def _positive(x, where: str) -> int:
    if not _is_int(x) or x < 0:
        raise InputError(f"{where}: expected a nonnegative integer, got {json.dumps(x)}")
    return x


def parse_input(text: str) -> InputDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise InputError("top level: expected a JSON object")
    unknown = set(raw) - {"rank", "generators", "mode", "oracle", "bounds", "strict"}
    if unknown:
        raise InputError(f"top level: unknown fields {sorted(unknown)}")
    if "rank" not in raw:
        raise InputError("rank: missing")
    rank = raw["rank"]
    if not _is_int(rank) or rank < 1:
        raise InputError(f"rank: expected a positive integer, got {json.dumps(rank)}")
    gens = raw.get("generators")
    if not isinstance(gens, list):
        raise InputError("generators: expected a list of integer vectors")
    if not gens:
        raise InputError("generators: empty generator list")
    doc = InputDocument(rank, [_vector(g, rank, f"generators[{i}]") for i, g in enumerate(gens)])
    mode = raw.get("mode", "auto")
    if mode not in MODES:
        raise InputError(f"mode: expected one of {list(MODES)}, got {json.dumps(mode)}")
    doc.mode = mode
    orc = raw.get("oracle")
    if orc is not None:
        if not isinstance(orc, dict):
            raise InputError("oracle: expected an object")
        for key in ("yes_degrees", "no_degrees"):
            vals = orc.get(key, [])
            if not isinstance(vals, list):
                raise InputError(f"oracle.{key}: expected a list of vectors")
            setattr(doc, key, [_vector(v, rank, f"oracle.{key}[{i}]") for i, v in enumerate(vals)])
        default = orc.get("default", "no")
        if default not in ("no", "unknown"):
            raise InputError(f"oracle.default: expected 'no' or 'unknown', got {json.dumps(default)}")
        doc.default = default
    elif mode == TABLE:
        raise InputError("oracle: required in table mode")
    bounds = raw.get("bounds", {})
    if not isinstance(bounds, dict):
        raise InputError("bounds: expected an object")
    for key in bounds:
        if key not in ("root_search", "brute_force_radius", "saturation_limit"):
            raise InputError(f"bounds.{key}: unknown bound")
        setattr(doc, key, _positive(bounds[key], f"bounds.{key}"))
    strict = raw.get("strict", False)
    if not isinstance(strict, bool):
        raise InputError("strict: expected true or false")
    doc.strict = strict
    return doc


def run_classify(doc: InputDocument) -> tuple[ReportDocument, int]:
    rep = classify(doc.generators, doc.oracle(), doc.root_search, doc.saturation_limit)
    report = build_report(
        rep, doc.generators, doc.mode, doc.brute_force_radius, doc.saturation_limit, doc.strict
    )
    code = EXIT_UNKNOWN if doc.strict and not rep.complete else EXIT_OK
    return report, code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_classify(args) -> int:
    try:
        doc = parse_input(_read(args.input))
        if args.strict:
            doc.strict = True
        if args.root_bound is not None:
            doc.root_search = args.root_bound
        if args.bf_radius is not None:
            doc.brute_force_radius = args.bf_radius
        report, code = run_classify(doc)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InputError, RankTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    out = report.to_json() if args.format == "json" else render_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


# -- oracle subcommands ------------------------------------------------------


def parse_vector(text: str) -> list[int]:
    text = text.strip()
    try:
        if text.startswith("["):
            v = json.loads(text)
        else:
            v = [int(a) for a in text.split(",")]
    except ValueError:
        raise InputError(f"cannot parse vector {text!r}") from None
    if not isinstance(v, list) or not all(_is_int(a) for a in v):
        raise InputError(f"cannot parse vector {text!r}")
    return v


def parse_generators(text: str) -> list[list[int]]:
    text = text.strip()
    if text.startswith("[["):
        try:
            gens = json.loads(text)
        except ValueError:
            raise InputError(f"cannot parse generators {text!r}") from None
        if not isinstance(gens, list):
            raise InputError(f"cannot parse generators {text!r}")
        return [parse_vector(json.dumps(g)) for g in gens]
    return [parse_vector(part) for part in text.split(";") if part.strip()]


def fmt(v) -> str:
    v = tuple(v)
    return str(v[0]) if len(v) == 1 else str(v)


def run_oracle(args) -> str:
    if args.gens:
        gens = parse_generators(args.gens)
    elif args.input:
        gens = parse_input(_read(args.input)).generators
    else:
        raise InputError("either --gens or --input is required")
    if not gens or len({len(g) for g in gens}) != 1:
        raise InputError("generators must be a nonempty list of equal-length vectors")
    emb, monoid, _ = prepare_monoid(gens)
    red = list(monoid.generators)
    radius = args.radius

    def to_reduced(v, what):
        if len(v) != emb.original_rank:
            raise InputError(f"{what}: expected {emb.original_rank} integers, got {len(v)}")
        return emb.forward(v)

    if args.which == "member":
        x = parse_vector(args.x)
        try:
            xr = to_reduced(x, "x")
        except NotInLattice:
            return "NO (not in the group generated by P)"
        ok, path = oracles.member(red, xr, radius)
        if ok:
            return "YES [" + ", ".join(fmt(emb.backward(g)) for g in path) + "]"
        return f"NO (exhaustive within radius {radius})"

    if args.which == "admissible":
        e = parse_vector(args.e)
        try:
            er = to_reduced(e, "e")
        except NotInLattice:
            raise InputError("e is not in the group generated by P") from None
        ref = oracles.admissible_refutation(red, er, radius)
        if ref is None:
            return f"NOT REFUTED within radius {radius}"
        p, q = (emb.backward(v) for v in ref)
        return f"REFUTED at p={fmt(p)} (e+p={fmt(q)} ∉ P)"

    if args.which == "roots":
        fl = face_lattice(monoid.cone)
        if not 0 <= args.face < len(fl):
            raise InputError(f"face: expected an id in 0..{len(fl) - 1}")
        face = fl[args.face]
        found = oracles.tau_roots(monoid.cone.sigma_rays, face.active, radius)
        if not found:
            return f"NONE within radius {radius}"
        return "\n".join(
            f"{fmt(emb.backward(e))}  distinguished ray {fmt(monoid.cone.sigma_rays[k])}" for e, k in found
        )

    hs = oracles.holes(red, radius)
    return "{" + ", ".join(fmt(emb.backward(h)) for h in hs) + "}"


def cmd_oracle(args) -> int:
    try:
        print(run_oracle(args))
    except (InputError, OSError, ToricAutError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricaut", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify Aut^0-orbits of the variety described by INPUT")
    c.add_argument("input", help="JSON input document, or - for stdin")
    c.add_argument("--out", help="write the report here instead of stdout")
    c.add_argument("--format", choices=("json", "text"), default="json")
    c.add_argument("--strict", action="store_true", help="exit 3 when faces remain undecided")
    c.add_argument("--root-bound", type=int, help="sup-norm bound of the witness root search")
    c.add_argument("--bf-radius", type=int, help="radius of the brute-force cross-check")
    c.set_defaults(func=cmd_classify)

    o = sub.add_parser("oracle", help="brute-force verification oracles")
    o.add_argument("which", choices=("member", "admissible", "roots", "holes"))
    o.add_argument("--gens", help="generators, e.g. '2;3' or '[[2,0],[3,0],[0,1]]'")
    o.add_argument("--input", help="take the generators from a JSON input document")
    o.add_argument("--x", help="point to test (member)")
    o.add_argument("--e", help="root degree to test (admissible)")
    o.add_argument("--face", type=int, default=0, help="face id (roots); 0 is the minimal face")
    o.add_argument("--radius", type=int, default=DEFAULT_BF_RADIUS)
    o.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "oracle":
        needed = {"member": "x", "admissible": "e"}.get(args.which)
        if needed and getattr(args, needed) is None:
            print(f"error: --{needed} is required for oracle {args.which}", file=sys.stderr)
            return EXIT_INVALID
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

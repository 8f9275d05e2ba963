"""Deterministic command-line front end.

Commands read JSON system/morphism files, run the requested analysis and
emit JSON reports (and optionally DOT graphs).  Outputs carry no
timestamps and are byte-identical across reruns with the same inputs and
seed.

Exit codes: 0 success; 1 a --require'd axiom failed; 2 unreadable or
schema-invalid input; 3 a size cap was exceeded; 4 a theorem-backed
invariant failed (always an internal bug or a corrupted input, never an
expected classification outcome).
"""

from __future__ import annotations

import argparse
import json
import os
import sys as _sys

from . import __version__
from .kernel import CapExceededError, GroundSet, TheoremViolationError
from .relations import CoverSystem, Relation
from .axioms import classify

EXIT_OK = 0
EXIT_REQUIRE = 1
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_THEOREM = 4

FORMAT_VERSION = "1"

SYSTEM_KINDS = (
    "explicit", "lattice", "semilattice", "poset",
    "proximity", "convexity", "topology",
)


class SystemFileError(Exception):
    pass


def _expect(cond, msg):
    if not cond:
        raise SystemFileError(msg)


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SystemFileError(f"cannot read {path}: {exc}")
    _expect(isinstance(data, dict), f"{path}: top level must be an object")
    return data


def _name_pairs(payload, key):
    pairs = payload.get(key, [])
    _expect(isinstance(pairs, list), f"{key} must be a list of pairs")
    out = []
    for p in pairs:
        _expect(isinstance(p, list) and len(p) == 2, f"bad entry in {key}: {p}")
        out.append((p[0], p[1]))
    return out


def system_from_payload(kind: str, payload: dict) -> CoverSystem:
    from . import builders
    from .spectrum import FiniteSpace

    _expect(isinstance(payload, dict), "payload must be an object")
    try:
        if kind == "explicit":
            ground = GroundSet(tuple(payload["ground"]))
            rel = Relation.from_pairs(ground, ground, [
                (tuple(f), tuple(g)) for f, g in _name_pairs(payload, "pairs")
            ])
            return CoverSystem(ground, rel, payload.get("name", "explicit"))
        if kind == "lattice":
            lat = builders.FiniteLattice.from_pairs(
                payload["elements"], _name_pairs(payload, "leq"))
            return builders.lattice_cover(lat, payload.get("name", ""))
        if kind == "semilattice":
            sl = builders.JoinSemilattice.from_pairs(
                payload["elements"], _name_pairs(payload, "leq"))
            return builders.semilattice_cover(sl, payload.get("name", ""))
        if kind == "poset":
            tr = builders.TransitiveRelation.from_pairs(
                payload["elements"], _name_pairs(payload, "lt"),
                transitive_close=bool(payload.get("transitive_close", False)))
            return builders.perp_cover(tr, payload.get("name", ""))
        if kind == "proximity":
            elements = tuple(payload["elements"])
            idx = {e: i for i, e in enumerate(elements)}
            rows = [0] * len(elements)
            for a, b in _name_pairs(payload, "prox"):
                rows[idx[a]] |= 1 << idx[b]
            pl = builders.ProximityLattice(elements, tuple(rows))
            return builders.proximity_cover(pl, payload.get("name", ""))
        if kind == "convexity":
            elements = tuple(payload["elements"])
            idx = {e: i for i, e in enumerate(elements)}
            sets = []
            for names in payload["convex_sets"]:
                m = 0
                for nm in names:
                    m |= 1 << idx[nm]
                sets.append(m)
            cx = builders.Convexity(elements, tuple(sorted(set(sets))))
            return builders.convexity_entailment(cx, payload.get("name", ""))
        if kind == "topology":
            space = FiniteSpace.from_named_sets(
                payload["points"], payload["opens"], payload["subbasis"])
            return builders.topology_cover(space, name=payload.get("name", ""))
    except SystemFileError:
        raise
    except (KeyError, TypeError) as exc:
        raise SystemFileError(f"malformed {kind} payload: {exc}")
    except CapExceededError:
        raise
    except ValueError as exc:
        raise SystemFileError(f"invalid {kind} payload: {exc}")
    raise SystemFileError(f"unknown system kind {kind!r}")


def load_system(path: str) -> CoverSystem:
    data = load_json(path)
    _expect(data.get("format_version") == FORMAT_VERSION,
            f"{path}: format_version must be {FORMAT_VERSION!r}")
    kind = data.get("kind")
    _expect(kind in SYSTEM_KINDS, f"{path}: kind must be one of {SYSTEM_KINDS}")
    return system_from_payload(kind, data.get("payload", {}))


def load_space(path: str):
    from .spectrum import FiniteSpace

    data = load_json(path)
    _expect(data.get("kind") == "topology",
            f"{path}: space-side analysis needs a topology file")
    payload = data.get("payload", {})
    try:
        return FiniteSpace.from_named_sets(
            payload["points"], payload["opens"], payload["subbasis"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SystemFileError(f"malformed topology payload: {exc}")


def load_morphism(path: str):
    from .category import CoverMorphism

    data = load_json(path)
    _expect(data.get("format_version") == FORMAT_VERSION,
            f"{path}: format_version must be {FORMAT_VERSION!r}")
    _expect(data.get("kind") == "morphism", f"{path}: kind must be 'morphism'")
    try:
        src = data["source_system"]
        tgt = data["target_system"]
        source = system_from_payload(src["kind"], src["payload"])
        target = system_from_payload(tgt["kind"], tgt["payload"])
        rel = Relation.from_pairs(source.ground, target.ground, [
            (tuple(f), tuple(g)) for f, g in _name_pairs(data, "pairs")
        ])
        return CoverMorphism(source, target, rel)
    except (KeyError, TypeError) as exc:
        raise SystemFileError(f"malformed morphism file: {exc}")
    except ValueError as exc:
        raise SystemFileError(f"invalid morphism file: {exc}")


def morphism_to_payload(m) -> dict:
    from .kernel import iter_bits

    def subset_names(ground, code):
        return [ground.names[i] for i in iter_bits(code)]

    pairs = [
        [subset_names(m.source.ground, f), subset_names(m.target.ground, g)]
        for f, g in m.rel.pairs()
    ]
    def system_payload(sys):
        return {
            "kind": "explicit",
            "payload": {
                "ground": list(sys.ground.names),
                "name": sys.name,
                "pairs": [
                    [subset_names(sys.ground, f), subset_names(sys.ground, g)]
                    for f, g in sys.rel.pairs()
                ],
            },
        }

    return {
        "format_version": FORMAT_VERSION,
        "kind": "morphism",
        "source_system": system_payload(m.source),
        "target_system": system_payload(m.target),
        "pairs": pairs,
    }


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _emit(report: dict, args) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if getattr(args, "json", None):
        with open(args.json, "w") as fh:
            fh.write(text)
    _sys.stdout.write(text)


def _emit_dot(text: str, args) -> None:
    if getattr(args, "dot", None):
        with open(args.dot, "w") as fh:
            fh.write(text)


def _base_report(args, command: str) -> dict:
    return {
        "tool": "coverkit",
        "version": __version__,
        "format_version": FORMAT_VERSION,
        "command": command,
        "input": [os.path.basename(p) for p in args.inputs],
        "seed": args.seed,
    }


def cmd_classify(args) -> int:
    sys = load_system(args.inputs[0])
    cls = classify(sys, with_witnesses=True)
    report = _base_report(args, "classify")
    report["classification"] = cls.to_dict()
    report["witnesses"] = cls.witnesses
    code = EXIT_OK
    if args.require:
        try:
            ok = cls.axiom(args.require)
        except KeyError as exc:
            raise SystemFileError(str(exc))
        report["require"] = {"axiom": args.require, "holds": ok}
        if not ok:
            code = EXIT_REQUIRE
    _emit(report, args)
    return code


def cmd_spectrum(args) -> int:
    from .spectrum import (
        Spectrum, specialization_dot, space_properties, verify_representation,
    )

    sys = load_system(args.inputs[0])
    spec = Spectrum(sys)
    rep = verify_representation(sys)
    report = _base_report(args, "spectrum")
    report["tight_sets"] = [
        [sys.ground.names[i] for i in _bits(code)] for code in spec.tights
    ]
    report["space"] = {
        "points": list(spec.space.points),
        "num_opens": len(spec.space.opens),
        "properties": space_properties(spec.space).to_dict(),
    }
    report["representation"] = rep.to_dict()
    _emit(report, args)
    _emit_dot(specialization_dot(spec.space), args)
    return EXIT_THEOREM if rep.violations() else EXIT_OK


def cmd_frame(args) -> int:
    from .frame import (
        frame_model, frame_elements_json, frame_hasse_dot, verify_frame_laws,
    )

    sys = load_system(args.inputs[0])
    cls = sys.classification
    report = _base_report(args, "frame")
    report["monotone_cut_idempotent"] = True
    try:
        fm = frame_model(sys, mode=args.mode)
    except ValueError as exc:
        report["monotone_cut_idempotent"] = False
        report["reason"] = str(exc)
        _emit(report, args)
        return EXIT_OK
    laws = verify_frame_laws(fm)
    report["frame"] = {
        "size": len(fm),
        "mode": fm.mode,
        "complete": fm.complete,
        "elements": frame_elements_json(fm),
    }
    report["laws"] = laws.to_dict()
    _emit(report, args)
    _emit_dot(frame_hasse_dot(fm), args)
    return EXIT_THEOREM if laws.violations() else EXIT_OK


def cmd_dualize(args) -> int:
    from .category import verify_duality_space, verify_duality_system

    data = load_json(args.inputs[0])
    report = _base_report(args, "dualize")
    violations = []
    sys = load_system(args.inputs[0])
    report["classification"] = sys.classification.to_dict()
    sys_rep = verify_duality_system(sys)
    report["system_side"] = sys_rep.to_dict()
    if sys.classification.is_cover:
        violations += sys_rep.violations()
    if data.get("kind") == "topology":
        space = load_space(args.inputs[0])
        space_rep = verify_duality_space(space)
        report["space_side"] = space_rep.to_dict()
        violations += space_rep.violations()
    report["violations"] = violations
    _emit(report, args)
    return EXIT_THEOREM if violations else EXIT_OK


def cmd_compose(args) -> int:
    from .category import compose_morphisms, cover_morphism_failure

    m1 = load_morphism(args.inputs[0])
    m2 = load_morphism(args.inputs[1])
    if m1.target != m2.source:
        raise SystemFileError("morphisms do not compose: target/source mismatch")
    report = _base_report(args, "compose")
    f1 = cover_morphism_failure(m1)
    f2 = cover_morphism_failure(m2)
    report["first_is_morphism"] = f1 is None
    report["second_is_morphism"] = f2 is None
    composed = compose_morphisms(m1, m2)
    fc = cover_morphism_failure(composed)
    report["composite_is_morphism"] = fc is None
    report["composite"] = morphism_to_payload(composed)
    _emit(report, args)
    if f1 is None and f2 is None and fc is not None:
        return EXIT_THEOREM
    return EXIT_OK


def _bits(mask: int):
    from .kernel import iter_bits

    return iter_bits(mask)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coverkit",
        description="finite cover systems: classification, spectra, frames, duality",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, ninputs):
        p.add_argument("inputs", nargs=ninputs, metavar="FILE")
        p.add_argument("--json", help="also write the JSON report to this path")
        p.add_argument("--dot", help="write a DOT graph to this path")
        p.add_argument("--require", help="exit 1 unless this axiom holds")
        p.add_argument("--cap", type=int, help="override the ground-set cap")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for any randomized search")

    common(sub.add_parser("classify", help="axiom classification"), 1)
    common(sub.add_parser("spectrum", help="tight spectrum and representation"), 1)
    pf = sub.add_parser("frame", help="quasi-ideal frame and its laws")
    common(pf, 1)
    pf.add_argument("--mode", choices=("auto", "exhaustive", "generated"),
                    default="auto")
    common(sub.add_parser("dualize", help="duality round-trip verification"), 1)
    common(sub.add_parser("compose", help="compose two morphisms"), 2)
    return parser


COMMANDS = {
    "classify": cmd_classify,
    "spectrum": cmd_spectrum,
    "frame": cmd_frame,
    "dualize": cmd_dualize,
    "compose": cmd_compose,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    saved_cap = os.environ.get("COVERKIT_CAP")
    if args.cap:
        os.environ["COVERKIT_CAP"] = str(args.cap)
    try:
        return COMMANDS[args.command](args)
    except SystemFileError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_PARSE
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=_sys.stderr)
        return EXIT_CAP
    except TheoremViolationError as exc:
        print(f"theorem violation: {exc}", file=_sys.stderr)
        return EXIT_THEOREM
    finally:
        if args.cap:
            if saved_cap is None:
                os.environ.pop("COVERKIT_CAP", None)
            else:
                os.environ["COVERKIT_CAP"] = saved_cap


if __name__ == "__main__":
    raise SystemExit(main())

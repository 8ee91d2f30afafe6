"""Germ-file parsing, subcommand dispatch, and JSON report emission.

Input files are JSON with three kinds:

    {"kind": "cyclic_quotient", "n": 5, "q": 2, "conductor": "1", "side": "1/2"}
    {"kind": "dual_graph", "chain": [3, 2], "forks": [[2, 2]],
     "branches": [[1, "1"], [2, "2/3"]]}
    {"kind": "glued", "glue_ok": true, "components": [{...}, {...}]}

All rationals travel as strings "a/b" (or "a"); nothing ever passes
through a binary float. Dual-graph attach indices are 1-based into the
chain-then-forks vertex list; 0 attaches a branch at the ambient smooth
point of an empty graph. Reports are emitted as JSON with sorted keys
and canonical rational printing, so identical inputs give byte-identical
output. Exit status: 0 success, 1 validation failure, 2 parse failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .dualgraph import (ResolutionGraph, boundary_coefficients, cartier_index,
                        log_canonical_class)
from .errors import GermError, GlueMismatch, NotApplicable, ParseError, ValidationError
from .germs import (LC_CENTER_TAGS, CyclicQuotientGerm, GermClass, GermTag,
                    NonNormalGerm, classify_lc_germ, classify_nonnormal,
                    different_coeff, resolution_graph)
from .rational import format_rat, parse_rat
from .residue import (find_failure_m, glued_mcartier,
                      glued_restriction_coeff, single_branch_report)
from .stdcoeff import coeff_check

DEFAULT_M_MAX = 24

KINDS = ("cyclic_quotient", "dual_graph", "glued")


@dataclass(frozen=True)
class GermFile:
    """Parsed input: the kind tag, the domain objects, and the
    canonical JSON payload used for echoing."""

    kind: str
    germ: CyclicQuotientGerm | None = None
    graph: ResolutionGraph | None = None
    components: tuple[CyclicQuotientGerm, ...] = ()
    glue_ok: bool = True
    payload: Any = None


def _check_keys(obj: dict, allowed: set[str], context: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ValidationError(
            f"unknown {context} field(s): {', '.join(sorted(unknown))}")


def _rat_field(obj: dict, key: str, default: str | None = None) -> Fraction:
    if key not in obj:
        if default is None:
            raise ValidationError(f"missing field {key!r}")
        raw = default
    else:
        raw = obj[key]
    if not isinstance(raw, str):
        raise ValidationError(f"field {key!r} must be a rational string, got {raw!r}")
    try:
        return parse_rat(raw)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def _int_field(obj: dict, key: str) -> int:
    if key not in obj:
        raise ValidationError(f"missing field {key!r}")
    val = obj[key]
    if not isinstance(val, int) or isinstance(val, bool):
        raise ValidationError(f"field {key!r} must be an integer, got {val!r}")
    return val


def _germ_from_dict(obj: dict) -> CyclicQuotientGerm:
    if not isinstance(obj, dict):
        raise ValidationError(f"germ record must be an object, got {obj!r}")
    if obj.get("kind", "cyclic_quotient") != "cyclic_quotient":
        raise ValidationError("glued components must be cyclic_quotient records")
    _check_keys(obj, {"kind", "n", "q", "conductor", "side"}, "germ")
    try:
        return CyclicQuotientGerm(_int_field(obj, "n"), _int_field(obj, "q"),
                                  _rat_field(obj, "conductor", "1"),
                                  _rat_field(obj, "side", "0"))
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def _germ_payload(germ: CyclicQuotientGerm) -> dict:
    return {"kind": "cyclic_quotient", "n": germ.n, "q": germ.q,
            "conductor": format_rat(germ.conductor_coeff),
            "side": format_rat(germ.side_coeff)}


def _graph_from_dict(obj: dict) -> tuple[ResolutionGraph, dict]:
    _check_keys(obj, {"kind", "chain", "forks", "branches"}, "dual_graph")
    chain = obj.get("chain", [])
    forks = obj.get("forks", [])
    branches = obj.get("branches", [])
    if not isinstance(chain, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in chain):
        raise ValidationError("'chain' must be a list of integers")
    g = ResolutionGraph.chain(chain)
    n = len(chain)
    norm_forks = []
    for entry in forks:
        if (not isinstance(entry, list) or len(entry) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in entry)):
            raise ValidationError(f"fork entry {entry!r} must be [attach, selfint]")
        attach, selfint = entry
        if not 1 <= attach <= n:
            raise ValidationError(f"fork attach index {attach} out of range 1..{n}")
        g = g.with_fork(attach - 1, selfint)
        n += 1
        norm_forks.append([attach, selfint])
    norm_branches = []
    for entry in branches:
        if not isinstance(entry, list) or len(entry) != 2:
            raise ValidationError(f"branch entry {entry!r} must be [attach, coeff]")
        attach, raw = entry
        if not isinstance(attach, int) or isinstance(attach, bool):
            raise ValidationError(f"branch attach {attach!r} must be an integer")
        if not isinstance(raw, str):
            raise ValidationError(f"branch coefficient {raw!r} must be a rational string")
        try:
            coeff = parse_rat(raw)
        except ValueError as exc:
            raise ValidationError(str(exc)) from exc
        if attach == 0:
            if n:
                raise ValidationError("attach index 0 is only valid on an empty graph")
            g = g.with_branch(None, coeff)
        elif 1 <= attach <= n:
            g = g.with_branch(attach - 1, coeff)
        else:
            raise ValidationError(f"branch attach index {attach} out of range 0..{n}")
        norm_branches.append([attach, format_rat(coeff)])
    payload = {"kind": "dual_graph", "chain": list(chain),
               "forks": norm_forks, "branches": norm_branches}
    return g, payload


def parse_germ_file(text: str | bytes) -> GermFile:
    """Parse one germ file. Raises ParseError on malformed JSON and
    ValidationError on schema or constraint violations."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno,
                         expected=exc.msg) from exc
    if not isinstance(raw, dict):
        raise ValidationError("top level must be a JSON object")
    kind = raw.get("kind")
    if kind not in KINDS:
        raise ValidationError(f"unknown kind {kind!r}; expected one of {KINDS}")
    if kind == "cyclic_quotient":
        germ = _germ_from_dict(raw)
        return GermFile(kind, germ=germ, payload=_germ_payload(germ))
    if kind == "dual_graph":
        graph, payload = _graph_from_dict(raw)
        return GermFile(kind, graph=graph, payload=payload)
    _check_keys(raw, {"kind", "glue_ok", "components"}, "glued")
    comps_raw = raw.get("components")
    if not isinstance(comps_raw, list) or not 1 <= len(comps_raw) <= 2:
        raise ValidationError("'components' must list 1 or 2 germ records")
    glue_ok = raw.get("glue_ok", True)
    if not isinstance(glue_ok, bool):
        raise ValidationError("'glue_ok' must be a boolean")
    comps = tuple(_germ_from_dict(c) for c in comps_raw)
    payload = {"kind": "glued", "glue_ok": glue_ok,
               "components": [_germ_payload(c) for c in comps]}
    return GermFile(kind, components=comps, glue_ok=glue_ok, payload=payload)


def format_germ_file(gf: GermFile) -> str:
    """Canonical text form; parse_germ_file inverts it exactly."""
    return json.dumps(gf.payload, sort_keys=True, indent=2) + "\n"


def _class_dict(cls: GermClass) -> dict:
    return {"tag": cls.tag.value,
            "gamma": format_rat(cls.gamma) if cls.gamma is not None else None,
            "cartier_index": cls.cartier_index,
            "violation": cls.violation}


def _nonnormal_dict(nn: NonNormalGerm) -> dict:
    return {"trichotomy": nn.trichotomy.value,
            "class_group": nn.class_group.value if nn.class_group else None,
            "cartier_index": nn.cartier_index,
            "components": [_germ_payload(c) for c in nn.components]}


def _residue_rows(germ: CyclicQuotientGerm, m_max: int) -> list[dict]:
    rows = []
    for m in range(1, m_max + 1):
        rep = single_branch_report(m, germ)
        rows.append({"m": rep.m, "source_exponent": rep.source_exponent,
                     "target_exponent": rep.target_exponent,
                     "surjective": rep.surjective, "deficit": rep.deficit})
    return rows


def _graph_of(gf: GermFile) -> ResolutionGraph:
    if gf.kind == "cyclic_quotient":
        return resolution_graph(gf.germ)
    if gf.kind == "dual_graph":
        return gf.graph
    raise NotApplicable(f"no single dual graph for kind {gf.kind!r}")


def _discrepancy_fields(g: ResolutionGraph) -> dict:
    lc = log_canonical_class(g)
    solved = boundary_coefficients(g)
    return {"lc_class": lc.value,
            "discrepancies": [format_rat(-b) for b in solved],
            "cartier_index": cartier_index(g)}


def _gamma_germ(gamma: Fraction) -> CyclicQuotientGerm:
    # any model realizing this slope works for the degree bookkeeping
    return CyclicQuotientGerm(1, 1, Fraction(1), 1 - gamma)


def _modification_fields(g: ResolutionGraph, cls: GermClass) -> dict | None:
    """Coefficient bookkeeping for the extraction that makes the rounded
    multiple of the log canonical divisor numerically well behaved.

    Plt chains extract the conductor-end curve at its discrepancy level;
    lc-center germs extract every solved-coefficient-1 curve with
    coefficient 1 and keep the half-coefficient prongs, with the
    subsequent shrinking of those coefficients recorded symbolically as
    the "perturbed" flag rather than a concrete rational.
    """
    if cls.tag is GermTag.PLT_CHAIN:
        return {"extracted_coeff": format_rat(1 - cls.gamma),
                "extracted_discrepancy": format_rat(cls.gamma - 1),
                "perturbed": False}
    if cls.tag in LC_CENTER_TAGS:
        solved = boundary_coefficients(g)
        extracted = [i + 1 for i, b in enumerate(solved) if b == 1]
        kept = [i + 1 for i, b in enumerate(solved) if b != 1]
        return {"extracted_coeff": "1", "extracted_curves": extracted,
                "kept_curves": kept, "perturbed": True}
    return None


def _glue_fields(gf: GermFile, m: int) -> dict:
    comps = gf.components
    flags: set[str] = set()
    differents = [format_rat(different_coeff(c)) for c in comps]
    gammas = [format_rat(c.gamma) for c in comps]
    consistent = len(comps) == 1 or comps[0].gamma == comps[1].gamma
    restriction = None
    if len(comps) == 2:
        if comps[0].q != comps[1].q:
            flags.add("q-mismatch")
        if m != 2 or any(1 - c.side_coeff >= Fraction(1, 2) for c in comps):
            flags.add("extrapolated")
        try:
            equal = glued_mcartier(m, comps[0], comps[1])
            restriction = {
                "m": m,
                "coefficients": [format_rat(glued_restriction_coeff(m, c.n, 1 - c.side_coeff))
                                 for c in comps],
                "equal": equal,
            }
        except GermError:
            flags.add("restriction-unavailable")
    classification = None
    case = None
    try:
        nn = classify_nonnormal(comps, gf.glue_ok)
        classification = _nonnormal_dict(nn)
        case = nn.trichotomy.value
    except GlueMismatch:
        flags.add("glue-mismatch")
    return {"differents": differents, "gammas": gammas,
            "glue_consistent": consistent, "restriction": restriction,
            "classification": classification, "case": case,
            "flags": sorted(flags)}


def _cmd_classify(gf: GermFile) -> dict:
    if gf.kind == "glued":
        nn = classify_nonnormal(gf.components, gf.glue_ok)
        out = _nonnormal_dict(nn)
        out["case"] = nn.trichotomy.value
        out["input"] = gf.payload
        return out
    cls = classify_lc_germ(_graph_of(gf))
    out = _class_dict(cls)
    out["case"] = cls.tag.value
    out["input"] = gf.payload
    return out


def _cmd_discrepancy(gf: GermFile) -> dict:
    out = _discrepancy_fields(_graph_of(gf))
    out["input"] = gf.payload
    return out


def _cmd_residue(gf: GermFile, m_max: int) -> dict:
    if gf.kind == "cyclic_quotient":
        germ = gf.germ
    else:
        cls = classify_lc_germ(_graph_of(gf))
        if cls.gamma is None:
            raise NotApplicable("residue table needs a plt chain with a slope")
        germ = _gamma_germ(cls.gamma)
    return {"input": gf.payload, "m_max": m_max,
            "residue_table": _residue_rows(germ, m_max)}


def _cmd_glue(gf: GermFile, m: int) -> dict:
    if gf.kind != "glued":
        raise NotApplicable("glue analysis needs a glued germ file")
    out = _glue_fields(gf, m)
    out["input"] = gf.payload
    return out


def _cmd_report(gf: GermFile, m_max: int) -> dict:
    if gf.kind == "glued":
        out = _cmd_glue(gf, 2)
        out["components_detail"] = []
        for comp in gf.components:
            g = resolution_graph(comp)
            cls = classify_lc_germ(g)
            detail = {"input": _germ_payload(comp)}
            detail.update(_class_dict(cls))
            detail.update(_discrepancy_fields(g))
            detail["different"] = format_rat(different_coeff(comp))
            detail["modification"] = _modification_fields(g, cls)
            out["components_detail"].append(detail)
        return out
    g = _graph_of(gf)
    out: dict[str, Any] = {"input": gf.payload, "flags": []}
    out.update(_discrepancy_fields(g))
    try:
        cls = classify_lc_germ(g)
        out["case"] = cls.tag.value
        out["classification"] = _class_dict(cls)
        out["modification"] = _modification_fields(g, cls)
        if out["modification"] is not None and out["modification"]["perturbed"]:
            out["flags"].append("perturbed")
    except NotApplicable:
        cls = None
        out["case"] = None
        out["classification"] = None
        out["modification"] = None
        out["flags"].append("classification-not-applicable")
    if gf.kind == "cyclic_quotient" and gf.germ.conductor_coeff == 1:
        out["different"] = format_rat(different_coeff(gf.germ))
    elif cls is not None and cls.gamma is not None:
        out["different"] = format_rat(1 - cls.gamma)
    else:
        out["different"] = None
    if cls is not None and cls.gamma is not None:
        germ = gf.germ if gf.kind == "cyclic_quotient" else _gamma_germ(cls.gamma)
        out["residue_table"] = _residue_rows(germ, m_max)
    else:
        out["residue_table"] = None
        out["flags"].append("residue-not-applicable")
    return out


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _styled(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") is not None or not sys.stderr.isatty():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def _verbose_summary(payload: dict) -> None:
    parts = []
    for key in ("case", "lc_class", "cartier_index", "gamma", "different", "m"):
        if payload.get(key) is not None:
            parts.append(f"{key}={payload[key]}")
    if payload.get("glue_consistent") is not None:
        word = "consistent" if payload["glue_consistent"] else "mismatch"
        code = "32" if payload["glue_consistent"] else "31"
        parts.append(_styled(f"glue={word}", code))
    if payload.get("flags"):
        parts.append("flags=" + ",".join(payload["flags"]))
    print("  ".join(parts) if parts else "ok", file=sys.stderr)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="germcalc",
        description="Exact invariants of log surface germs from germ files.")
    parser.add_argument("--verbose", action="store_true",
                        help="human-readable summary on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (
            ("classify", "taxonomy tag and derived invariants"),
            ("discrepancy", "solved discrepancies and Cartier index"),
            ("report", "every applicable analysis")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file", help="germ file path, or - for stdin")

    p = sub.add_parser("residue", help="restriction degree table for m = 1..M")
    p.add_argument("file", help="germ file path, or - for stdin")
    p.add_argument("--m-max", type=int, default=DEFAULT_M_MAX)

    p = sub.add_parser("glue", help="conductor gluing analysis")
    p.add_argument("file", help="germ file path, or - for stdin")
    p.add_argument("--m", type=int, default=2)

    p = sub.add_parser("failure-m", help="least m with a rounding deficit")
    p.add_argument("--coeffs", required=True,
                   help="comma-separated rationals in (0,1), e.g. 1/2,1/3")

    p = sub.add_parser("stdcoeff", help="standard-coefficient record")
    p.add_argument("--c", required=True, help="coefficient as a/b")
    p.add_argument("--m", type=int, required=True)
    return parser


def _dispatch(args: argparse.Namespace) -> dict:
    if args.command == "failure-m":
        try:
            coeffs = [parse_rat(part) for part in args.coeffs.split(",")]
        except ValueError as exc:
            raise ValidationError(str(exc)) from exc
        total = sum(coeffs, Fraction(0))
        return {"coeffs": [format_rat(c) for c in coeffs],
                "m": find_failure_m(coeffs),
                "search_bound": total.denominator}
    if args.command == "stdcoeff":
        try:
            c = parse_rat(args.c)
        except ValueError as exc:
            raise ValidationError(str(exc)) from exc
        rec = coeff_check(c, args.m)
        return {"c": format_rat(rec.c), "m": rec.m, "standard": rec.standard,
                "hypothesis_ok": rec.hypothesis_ok, "bracket_ok": rec.bracket_ok}

    gf = parse_germ_file(_read_input(args.file))
    if args.command == "classify":
        return _cmd_classify(gf)
    if args.command == "discrepancy":
        return _cmd_discrepancy(gf)
    if args.command == "residue":
        return _cmd_residue(gf, args.m_max)
    if args.command == "glue":
        return _cmd_glue(gf, args.m)
    return _cmd_report(gf, DEFAULT_M_MAX)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        payload = _dispatch(args)
    except ParseError as exc:
        err = {"error": {"type": "ParseError", "message": str(exc),
                         "line": exc.line, "column": exc.column,
                         "expected": exc.expected}}
        print(json.dumps(err, sort_keys=True, indent=2))
        return 2
    except GermError as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(err, sort_keys=True, indent=2))
        return 1
    print(json.dumps(payload, sort_keys=True, indent=2))
    if args.verbose:
        _verbose_summary(payload)
    return 0


def run(command: str, args) -> int:
    """Programmatic entry point: run one subcommand with its arguments."""
    return main([command, *list(args)])


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Every subcommand builds one report dictionary; ``--json`` dumps it, the
default text mode renders the same dictionary as indented ``key: value``
lines.  Exit status: 0 success, 1 invalid input or failed precondition,
2 an identity that must hold failed (a bug).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Sequence

from .errors import (
    IdentityViolation,
    OracleSizeError,
    PreconditionError,
    SolutionFormatError,
    TruncationError,
)
from .groebner import pbw_check, truncated_groebner
from .ncpoly import yb_presentation
from .oracle import quotient_dim_oracle
from .segre import (
    dim_identity_report,
    kernel_generators,
    relation_count_excess,
    segre_hilbert_check,
    segre_presentation,
    square_free_certificate,
    vanishing_report,
    z_presentation,
)
from .solution import (
    MAX_ENUMERATION_SIZE,
    QuadraticSet,
    cartesian_product,
    classify,
    enumerate_solutions,
    expected_orbit_counts,
    load_solution,
    orbit_report,
    solution_document,
    z_solution,
)

log = logging.getLogger(__name__)

EXIT_OK, EXIT_INPUT, EXIT_IDENTITY = 0, 1, 2

TWO_INPUT = {"segre", "zalg", "kernel", "certify-squarefree", "product"}
ONE_INPUT = {"verify", "present", "hilbert"}


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    degree: int = 3
    json: bool = False
    output: str | None = None
    pbw: bool = False
    hilbert: bool = False
    size: int | None = None

    def validate(self):
        if self.degree < 2:
            raise ValueError("--degree must be at least 2")
        if self.command in TWO_INPUT and len(self.inputs) != 2:
            raise ValueError(f"{self.command} needs exactly two solution files")
        if self.command in ONE_INPUT and len(self.inputs) != 1:
            raise ValueError(f"{self.command} needs exactly one solution file")


class _Failure(Exception):
    def __init__(self, status: int, report: dict):
        super().__init__(report.get("error", ""))
        self.status = status
        self.report = report


def _read(path: str) -> QuadraticSet:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SolutionFormatError(f"cannot read {path}: {exc.strerror}") from exc
    return load_solution(text)


def _presentation_block(p) -> dict:
    return {
        "generators": list(p.generator_labels),
        "relation_count": len(p.relations),
        "relations": p.format_relations(),
        "serialized": p.to_json()["relations"],
    }


# -- subcommands -------------------------------------------------------------


def _verify(cfg: RunConfig) -> tuple[int, dict]:
    qs = _read(cfg.inputs[0])
    flags = classify(qs)
    report = solution_document(qs)
    report["classification"] = flags.as_dict()
    status = EXIT_OK if flags.is_solution else EXIT_INPUT
    if flags.is_involutive:
        orbits = orbit_report(qs)
        report["orbits"] = orbits.as_dict()
        report["orbits"]["fixed_points_text"] = [qs.labels[i] + qs.labels[j] for i, j in orbits.fixed_points]
        if flags.is_solution and (orbits.fixed_count, orbits.nontrivial_count, orbits.total) != expected_orbit_counts(qs.size):
            report["error"] = "orbit counts differ from n fixed points and C(n,2) nontrivial orbits"
            status = EXIT_IDENTITY
    return status, report


def _present(cfg: RunConfig) -> tuple[int, dict]:
    qs = _read(cfg.inputs[0])
    p = yb_presentation(qs)
    report = {"presentation": _presentation_block(p)}
    status = EXIT_OK
    if cfg.pbw:
        rep = pbw_check(qs)
        report["pbw"] = rep.as_dict(qs.labels)
        if rep.counterexample_alert:
            report["error"] = "non-square-free solution with a quadratic Groebner basis"
            status = EXIT_IDENTITY
    return status, report


def _hilbert(cfg: RunConfig) -> tuple[int, dict]:
    qs = _read(cfg.inputs[0])
    p = yb_presentation(qs)
    gb = truncated_groebner(p, cfg.degree)
    dims = gb.hilbert_function(cfg.degree)
    oracle = []
    for d in range(cfg.degree + 1):
        try:
            oracle.append(quotient_dim_oracle(p, d))
        except OracleSizeError:
            oracle.append(None)
    report = {
        "degree": cfg.degree,
        "groebner_basis": [g.format(p.generator_labels) for g in gb.basis],
        "new_elements": [g.format(p.generator_labels) for g in gb.new_elements(p)],
        "hilbert_function": dims,
        "oracle": oracle,
        "expected": None,
    }
    status = EXIT_OK
    if any(o is not None and o != h for o, h in zip(oracle, dims)):
        report["error"] = "Groebner and oracle dimensions disagree"
        status = EXIT_IDENTITY
    if classify(qs).is_solution:
        report["expected"] = [comb(qs.size + d - 1, d) for d in range(cfg.degree + 1)]
        if report["expected"] != dims:
            report["error"] = "Hilbert function differs from the polynomial-ring count"
            status = EXIT_IDENTITY
    return status, report


def _product(cfg: RunConfig) -> tuple[int, dict]:
    a, b = map(_read, cfg.inputs)
    prod = cartesian_product(a, b)
    report = solution_document(prod)
    report["classification"] = classify(prod).as_dict()
    report["orbits"] = {k: v for k, v in orbit_report(prod).as_dict().items() if k.endswith("count") or k == "total_orbits"}
    return EXIT_OK, report


def _segre(cfg: RunConfig) -> tuple[int, dict]:
    a, b = map(_read, cfg.inputs)
    sp = segre_presentation(a, b)
    dims = dim_identity_report(a, b)
    report = sp.to_json()
    report["dim_identities"] = dims.as_dict()
    report["relation_count_excess"] = relation_count_excess(a, b)
    status = EXIT_OK if dims.ok else EXIT_IDENTITY
    if cfg.hilbert:
        hil = segre_hilbert_check(a, b, cfg.degree)
        report["hilbert"] = hil.as_dict()
        if not hil.ok:
            status = EXIT_IDENTITY
    if status:
        report["error"] = "Segre identities failed"
    return status, report


def _zalg(cfg: RunConfig) -> tuple[int, dict]:
    a, b = map(_read, cfg.inputs)
    zp = z_presentation(a, b)
    direct = yb_presentation(z_solution(a, b))
    report = {"presentation": _presentation_block(zp), "matches_product_solution": zp == direct}
    if zp != direct:
        report["error"] = "A_Z relations differ from the product solution's presentation"
        return EXIT_IDENTITY, report
    return EXIT_OK, report


def _kernel(cfg: RunConfig) -> tuple[int, dict]:
    a, b = map(_read, cfg.inputs)
    kern = kernel_generators(a, b)
    labels = tuple(f"z{i + 1}{s + 1}" for i in range(a.size) for s in range(b.size))
    van = vanishing_report(a, b)
    report = {
        "kernel_count": len(kern),
        "expected_count": comb(a.size, 2) * comb(b.size, 2),
        "kernel_generators": [g.to_json(labels) for g in kern],
        "soundness": van.as_dict(),
    }
    if not van.ok or len(kern) != report["expected_count"]:
        report["error"] = "kernel soundness failed"
        return EXIT_IDENTITY, report
    return EXIT_OK, report


def _certify(cfg: RunConfig) -> tuple[int, dict]:
    a, b = map(_read, cfg.inputs)
    cert = square_free_certificate(a, b)
    report = cert.as_dict()
    if not cert.ok:
        report["error"] = "square-free certificate failed"
        return EXIT_IDENTITY, report
    return EXIT_OK, report


def _enumerate(cfg: RunConfig) -> tuple[int, dict]:
    if cfg.size is None or not 1 <= cfg.size <= MAX_ENUMERATION_SIZE:
        raise ValueError(f"enumerate needs 1 <= N <= {MAX_ENUMERATION_SIZE}")
    sols = enumerate_solutions(cfg.size)
    return EXIT_OK, {
        "n": cfg.size,
        "count": len(sols),
        "square_free_count": sum(classify(q).is_square_free for q in sols),
        "solutions": [solution_document(q) for q in sols],
    }


COMMANDS = {
    "verify": _verify,
    "present": _present,
    "hilbert": _hilbert,
    "product": _product,
    "segre": _segre,
    "zalg": _zalg,
    "kernel": _kernel,
    "certify-squarefree": _certify,
    "enumerate": _enumerate,
}


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Dispatch a configuration and return ``(exit status, report)``."""
    if cfg.command not in COMMANDS:
        return EXIT_INPUT, {"error": f"unknown subcommand {cfg.command!r}"}
    try:
        cfg.validate()
        return COMMANDS[cfg.command](cfg)
    except IdentityViolation as exc:
        return EXIT_IDENTITY, {"error": str(exc)}
    except (SolutionFormatError, PreconditionError, TruncationError, OracleSizeError, ValueError) as exc:
        return EXIT_INPUT, {"error": str(exc)}


# -- rendering ---------------------------------------------------------------


def render_text(value, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(value))
    return "\n".join(lines)


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) or _flat(x) for x in v) and len(json.dumps(v)) <= 100


def _scalar(v) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degree", "-D", type=int, default=3, help="degree bound for Groebner truncation (default 3)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--output", "-o", help="write the report to this file")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="ybsegre",
        description="Yang-Baxter algebras of finite solutions, Segre products and Segre maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("verify", "hilbert"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("inputs", nargs=1)
    sp = sub.add_parser("present", parents=[common])
    sp.add_argument("inputs", nargs=1)
    sp.add_argument("--pbw", action="store_true", help="also run the PBW / binomial-skew checks")
    for name in ("product", "zalg", "kernel", "certify-squarefree"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("inputs", nargs=2)
    sp = sub.add_parser("segre", parents=[common])
    sp.add_argument("inputs", nargs=2)
    sp.add_argument("--hilbert", action="store_true", help="also compare graded dimensions through --degree")
    sp = sub.add_parser("enumerate", parents=[common])
    sp.add_argument("size", type=int)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    cfg = RunConfig(
        command=args.command,
        inputs=list(getattr(args, "inputs", []) or []),
        degree=args.degree,
        json=args.json,
        output=args.output,
        pbw=getattr(args, "pbw", False),
        hilbert=getattr(args, "hilbert", False),
        size=getattr(args, "size", None),
    )
    status, report = run(cfg)
    log.debug("%s finished with status %d", cfg.command, status)
    text = json.dumps(report, indent=2) if cfg.json else render_text(report)
    if cfg.output:
        Path(cfg.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    if status and "error" in report:
        print(f"error: {report['error']}", file=sys.stderr)
    return status

"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import eigensystem as es
from .graph import Graph, GraphFormatError, interior_graph, parse_graph, validate
from .kernels import (
    SpectralField,
    bass_zeta_recip,
    field_values,
    heat_field,
    ihara_zeta_recip,
    leakage,
    raised_cosine_coefficients,
    total_heat,
    wave_energy,
    wave_field,
)
from .verify import full_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _positive(kind):
    def parse(text):
        value = kind(text)
        if value <= 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return value

    return parse


def _at_least(kind, low):
    def parse(text):
        value = kind(text)
        if value < low:
            raise argparse.ArgumentTypeError(f"must be at least {low}, got {text}")
        return value

    return parse


def _number(text: str) -> complex | float:
    value = complex(text.replace(" ", ""))
    return value.real if value.imag == 0 else value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="edge-list file (or eigensystem JSON for verify)")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--cutoff", type=_positive(float), default=2 * math.pi, help="frequency cutoff (default 2*pi)")
    common.add_argument("--tol", type=_positive(float), default=1e-9)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--resolution", type=_at_least(int, 2), default=32, help="samples per edge")

    bump = argparse.ArgumentParser(add_help=False)
    bump.add_argument("--t", type=float, default=1.0, help="time")
    bump.add_argument("--edge", type=int, default=0, help="edge index carrying the initial bump")
    bump.add_argument("--center", type=float, default=0.5)
    bump.add_argument("--radius", type=float, default=0.25)

    p = argparse.ArgumentParser(prog="edgelap", description="Edge-based Laplacian eigensystems on metric graphs.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="frequency table with multiplicities")
    sub.add_parser("eigfun", parents=[common], help="eigenfunction coefficients (json) or samples (csv)")
    v = sub.add_parser("verify", parents=[common], help="run every verification suite")
    v.add_argument("--oracle", action="store_true", help="also compare against the finite-difference oracle")
    v.add_argument("--m", type=_at_least(int, 8), default=128)
    z = sub.add_parser("zeta", parents=[common], help="det(I - uT) with the Bass cross-check")
    z.add_argument("--u", type=_number, required=True)
    sub.add_parser("heat", parents=[common, bump], help="heat flow from a bump")
    w = sub.add_parser("wave", parents=[common, bump], help="wave from a bump, with light-cone leakage")
    w.add_argument("--margin", type=float, default=0.25, help="distance beyond t + radius where leakage is measured")
    o = sub.add_parser("oracle", parents=[common], help="finite-difference spectrum")
    o.add_argument("--m", type=_at_least(int, 8), default=128)
    o.add_argument("--k", type=_at_least(int, 1), default=None)
    o.add_argument("--richardson", action="store_true")
    return p


# -- helpers ----------------------------------------------------------------


def _read_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return parse_graph(text)
    except GraphFormatError as exc:
        raise InputError(f"{path}:\n{exc}") from exc


def _num(z):
    if isinstance(z, complex) or np.iscomplexobj(z):
        z = complex(z)
        return {"re": z.real, "im": z.imag}
    return float(z)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _dump_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x for x in r])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _spectrum_rows(E: es.Eigensystem) -> list[dict]:
    rows = []
    for group in E.frequency_groups():
        w = E[group[0]].omega
        provs = []
        for i in group:
            if E[i].provenance not in provs:
                provs.append(E[i].provenance)
        rows.append({"omega": w, "eigenvalue": w * w, "multiplicity": len(group), "provenance": "+".join(provs)})
    return rows


def _sample_rows(E: es.Eigensystem, values_of, resolution: int):
    x = np.linspace(0.0, 1.0, resolution + 1)
    rows = []
    vals = values_of(x)
    for e, (u, v) in enumerate(E.graph.edges):
        for j, xj in enumerate(x):
            rows.append([e, u, v, float(xj), float(vals[e, j])])
    return ["edge", "u", "v", "x", "value"], rows


# -- commands ---------------------------------------------------------------


def cmd_spectrum(args) -> int:
    g = _read_graph(args.input)
    E = es.assemble(g, args.cutoff, args.tol)
    rows = _spectrum_rows(E)
    if args.format == "csv":
        text = _dump_csv(
            ["omega", "eigenvalue", "multiplicity", "provenance"],
            [[r["omega"], r["eigenvalue"], r["multiplicity"], r["provenance"]] for r in rows],
        )
    else:
        text = _dump_json({"graph": g.to_dict(), "cutoff": args.cutoff, "rows": rows})
    _emit(text, args.out)
    return EXIT_OK


def cmd_eigfun(args) -> int:
    g = _read_graph(args.input)
    E = es.assemble(g, args.cutoff, args.tol)
    if args.format == "csv":
        x = np.linspace(0.0, 1.0, args.resolution + 1)
        rows = []
        for i, en in enumerate(E.entries):
            vals = es.sample(E, i, args.resolution).values
            for e, (u, v) in enumerate(g.edges):
                for j, xj in enumerate(x):
                    rows.append([i, en.omega, en.provenance, e, u, v, float(xj), float(vals[e, j])])
        text = _dump_csv(["entry", "omega", "provenance", "edge", "u", "v", "x", "value"], rows)
    else:
        doc = E.to_dict()
        doc["report"] = full_report(E).to_dict()
        text = _dump_json(doc)
    _emit(text, args.out)
    return EXIT_OK


def _load_for_verify(path: str, cutoff: float, tol: float) -> es.Eigensystem:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    if text.lstrip().startswith("{"):
        try:
            return es.Eigensystem.from_dict(json.loads(text))
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"{path}: invalid eigensystem document: {exc}") from exc
    try:
        g = parse_graph(text)
    except GraphFormatError as exc:
        raise InputError(f"{path}:\n{exc}") from exc
    return es.assemble(g, cutoff, tol)


def cmd_verify(args) -> int:
    E = _load_for_verify(args.input, args.cutoff, args.tol)
    report = full_report(E, oracle_m=args.m if args.oracle else None)
    doc = {"graph": validate(E.graph).to_dict(), "cutoff": E.cutoff, "entries": len(E), "report": report.to_dict()}
    if args.format == "csv":
        text = _dump_csv(
            ["suite", "passed", "value", "threshold"],
            [[s.name, s.passed, s.value, s.threshold] for s in report.suites],
        )
    else:
        text = _dump_json(doc)
    _emit(text, args.out)
    if not report.passed:
        for s in report.suites:
            if not s.passed:
                print(f"FAIL {s.name}: {s.value:.3e} > {s.threshold:.1e}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_zeta(args) -> int:
    g = interior_graph(_read_graph(args.input))
    u = args.u
    value = ihara_zeta_recip(g, u)
    doc = {"u": _num(u), "value": _num(value), "bass": _num(bass_zeta_recip(g, u))}
    if args.format == "csv":
        text = _dump_csv(["u", "value"], [[str(u), str(value) if isinstance(value, complex) else value]])
    else:
        text = _dump_json(doc)
    _emit(text, args.out)
    return EXIT_OK


def _bump(E: es.Eigensystem, args) -> np.ndarray:
    if not 0 <= args.edge < E.graph.n_edges:
        raise InputError(f"edge index {args.edge} out of range")
    try:
        return raised_cosine_coefficients(E, args.edge, args.center, args.radius)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_heat(args) -> int:
    g = _read_graph(args.input)
    E = es.assemble(g, args.cutoff, args.tol)
    init = SpectralField(_bump(E, args))
    field = heat_field(E, init, args.t)
    header, rows = _sample_rows(E, lambda x: field_values(E, field, x), args.resolution)
    if args.format == "csv":
        text = _dump_csv(header, rows)
    else:
        text = _dump_json(
            {
                "t": args.t,
                "cutoff": args.cutoff,
                "total_heat_initial": total_heat(E, init),
                "total_heat": total_heat(E, field),
                "coefficients": [float(a) for a in field.coefficients],
                "samples": [dict(zip(header, r)) for r in rows],
            }
        )
    _emit(text, args.out)
    return EXIT_OK


def cmd_wave(args) -> int:
    g = _read_graph(args.input)
    E = es.assemble(g, args.cutoff, args.tol)
    p = _bump(E, args)
    v = np.zeros_like(p)
    field = wave_field(E, p, v, args.t)
    cone = abs(args.t) + args.radius + args.margin
    leak = leakage(E, field, (args.edge, args.center), cone, args.resolution)
    header, rows = _sample_rows(E, lambda x: field_values(E, field, x), args.resolution)
    if args.format == "csv":
        text = _dump_csv(header, rows)
    else:
        text = _dump_json(
            {
                "t": args.t,
                "cutoff": args.cutoff,
                "energy_initial": wave_energy(E, wave_field(E, p, v, 0.0)),
                "energy": wave_energy(E, field),
                "leakage": {"distance": cone, "max_abs": leak},
                "coefficients": [float(a) for a in field.coefficients],
                "samples": [dict(zip(header, r)) for r in rows],
            }
        )
    _emit(text, args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _read_graph(args.input)
    E = es.assemble(g, args.cutoff, args.tol)
    k = args.k or len(E)
    freqs = es.fd_oracle(g, args.m, k, richardson=args.richardson)
    assembled = list(E.frequencies[:k])
    rows = []
    for i, f in enumerate(freqs):
        a = assembled[i] if i < len(assembled) else None
        rows.append({"index": i, "oracle": float(f), "assembled": a, "diff": None if a is None else abs(f - a)})
    if args.format == "csv":
        text = _dump_csv(
            ["index", "oracle", "assembled", "diff"],
            [[r["index"], r["oracle"], "" if r["assembled"] is None else r["assembled"], "" if r["diff"] is None else r["diff"]] for r in rows],
        )
    else:
        text = _dump_json({"m": args.m, "richardson": args.richardson, "rows": rows})
    _emit(text, args.out)
    return EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "eigfun": cmd_eigfun,
    "verify": cmd_verify,
    "zeta": cmd_zeta,
    "heat": cmd_heat,
    "wave": cmd_wave,
    "oracle": cmd_oracle,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: ``gen`` writes a state file, ``analyze`` runs the criteria (and
optionally the filter normal form and entanglement bounds), ``sweep-noise``
finds white-noise detection thresholds, ``bounds`` tabulates measure
estimates.  Exit status is 0 on success, 2 for usage or input errors and 3
for numerical failures; entanglement verdicts are part of the output, never
of the exit status.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .criteria import CRITERIA, CriterionReport, full_report
from .errors import BlochsepError, NumericalError
from .fnf import filter_normal_form
from .matrix import DensityMatrix, PureState
from .measures import MeasureEstimate, estimate_all
from .states import (
    gentiles2_state,
    max_entangled,
    random_mixed,
    random_pure,
    random_separable,
    read_state,
    state_from_dict,
    state_to_dict,
    white_noise_mix,
)
from .sweep import SweepResult, sweep_noise

__all__ = ["AnalysisDocument", "FnfSummary", "main", "analyze", "bounds_table"]

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 2, 3

_CRITERION_FLAGS = {"ppt": "PPT", "ccnr": "CCNR", "cm": "CM_TRACE", "cm_hs": "CM_HS"}


@dataclass
class FnfSummary:
    iterations: int
    converged: bool
    residual: float
    criteria: list[CriterionReport] = field(default_factory=list)
    measures: list[MeasureEstimate] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "converged": self.converged,
            "residual": self.residual,
            "criteria": [c.to_dict() for c in self.criteria],
            "measures": [m.to_dict() for m in self.measures],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FnfSummary":
        return cls(
            d["iterations"],
            d["converged"],
            d["residual"],
            [CriterionReport.from_dict(c) for c in d["criteria"]],
            [MeasureEstimate.from_dict(m) for m in d["measures"]],
        )


@dataclass
class AnalysisDocument:
    descriptor: str
    dim_a: int
    dim_b: int
    criteria: list[CriterionReport]
    measures: list[MeasureEstimate] = field(default_factory=list)
    fnf: FnfSummary | None = None
    tool_version: str = __version__
    timestamp: str | None = None

    def to_dict(self) -> dict:
        return {
            "descriptor": self.descriptor,
            "dim_a": self.dim_a,
            "dim_b": self.dim_b,
            "criteria": [c.to_dict() for c in self.criteria],
            "measures": [m.to_dict() for m in self.measures],
            "fnf": None if self.fnf is None else self.fnf.to_dict(),
            "tool_version": self.tool_version,
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisDocument":
        return cls(
            d["descriptor"],
            d["dim_a"],
            d["dim_b"],
            [CriterionReport.from_dict(c) for c in d["criteria"]],
            [MeasureEstimate.from_dict(m) for m in d["measures"]],
            None if d["fnf"] is None else FnfSummary.from_dict(d["fnf"]),
            d["tool_version"],
            d["timestamp"],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisDocument":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["section", "id", "kind", "source", "value", "raw", "threshold", "margin", "entangled"])
        sections = [("state", self.criteria, self.measures)]
        if self.fnf is not None:
            sections.append(("fnf", self.fnf.criteria, self.fnf.measures))
        for name, crits, meas in sections:
            for c in crits:
                w.writerow([name, c.criterion_id, "CRITERION", "", repr(c.value), "", repr(c.threshold),
                            repr(c.margin), c.entangled])
            for m in meas:
                w.writerow([name, m.measure_id.value, m.kind.value, m.source.value, repr(m.value),
                            repr(m.raw), "", "", ""])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"state: {self.descriptor}  ({self.dim_a} x {self.dim_b})"]
        lines += _text_section(self.criteria, self.measures)
        if self.fnf is not None:
            f = self.fnf
            lines.append("")
            lines.append(
                f"filter normal form: iterations={f.iterations} converged={f.converged} "
                f"residual={f.residual:.3e}"
            )
            lines += _text_section(f.criteria, f.measures)
        lines.append("")
        lines.append(f"blochsep {self.tool_version}" + (f"  {self.timestamp}" if self.timestamp else ""))
        return "\n".join(lines) + "\n"


def _text_section(crits, meas) -> list[str]:
    out = []
    if crits:
        out.append(f"  {'criterion':<10} {'value':>16} {'threshold':>16} {'margin':>16}  entangled")
        for c in crits:
            if c.error:
                out.append(f"  {c.criterion_id:<10} error: {c.error}")
                continue
            out.append(
                f"  {c.criterion_id:<10} {c.value:>16.12g} {c.threshold:>16.12g} {c.margin:>16.12g}  "
                f"{'yes' if c.entangled else 'no'}"
            )
    if meas:
        out.append(f"  {'measure':<12} {'kind':<18} {'source':<16} {'value':>16}")
        for m in meas:
            out.append(f"  {m.measure_id.value:<12} {m.kind.value:<18} {m.source.value:<16} {m.value:>16.12g}")
    return out


def _as_pure(rho: DensityMatrix, atol: float = 1e-10) -> PureState | None:
    w, v = np.linalg.eigh(rho.matrix)
    if w[-1] < 1 - atol:
        return None
    psi = v[:, -1]
    return PureState(psi / np.linalg.norm(psi), rho.dim_a, rho.dim_b)


def bounds_table(rho: DensityMatrix) -> list[MeasureEstimate]:
    """:func:`estimate_all`, using the exact pure-state formulas for rank-one input."""
    psi = _as_pure(rho)
    return estimate_all(psi if psi is not None else rho)


def analyze(
    rho: DensityMatrix,
    descriptor: str,
    fnf: bool = False,
    bounds: bool = False,
    eps: float = 0.0,
    tol: float | None = None,
    deterministic: bool = False,
) -> AnalysisDocument:
    doc = AnalysisDocument(descriptor, rho.dim_a, rho.dim_b, full_report(rho, tol))
    if bounds:
        doc.measures = bounds_table(rho)
    if fnf:
        res = filter_normal_form(rho, eps=eps)
        rt = res.rho_tilde
        doc.fnf = FnfSummary(
            res.iterations,
            res.converged,
            res.residual,
            full_report(rt, tol),
            bounds_table(rt) if bounds else [],
        )
    if not deterministic:
        doc.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return doc


# -- argument handling -----------------------------------------------------


def _gen_state(args) -> tuple[DensityMatrix, str, int | None]:
    kind, p = args.kind, args.params
    need = {"maxent": 1}.get(kind, 2)
    if len(p) != need:
        raise _Usage(f"gen {kind} takes {need} integer parameter(s), got {len(p)}")
    if kind == "gentiles2":
        return gentiles2_state(*p), f"gentiles2 {p[0]} {p[1]}", None
    if kind == "maxent":
        return max_entangled(p[0]).density_matrix(), f"maxent {p[0]}", None
    if kind == "maxmixed":
        return DensityMatrix.maximally_mixed(*p), f"maxmixed {p[0]} {p[1]}", None
    if kind == "random-pure":
        return random_pure(*p, seed=args.seed).density_matrix(), f"random-pure {p[0]} {p[1]}", args.seed
    if kind == "random-mixed":
        return random_mixed(*p, rank=args.rank, seed=args.seed), f"random-mixed {p[0]} {p[1]}", args.seed
    if kind == "random-separable":
        return (
            random_separable(*p, terms=args.terms, seed=args.seed),
            f"random-separable {p[0]} {p[1]}",
            args.seed,
        )
    raise _Usage(f"unknown state kind {kind!r}")


class _Usage(Exception):
    pass


def _load(path: str) -> tuple[DensityMatrix, str]:
    rho, meta = read_state(path) if path != "-" else _read_stdin()
    return rho, str(meta.get("name", path))


def _read_stdin():
    try:
        return state_from_dict(json.loads(sys.stdin.read()))
    except json.JSONDecodeError as exc:
        raise _Usage(f"stdin is not a JSON state document ({exc})") from exc


def _cmd_gen(args, out) -> int:
    rho, name, seed = _gen_state(args)
    if args.fnf:
        rho = filter_normal_form(rho, eps=args.eps).rho_tilde
        name += " (filter normal form)"
    if args.noise is not None:
        rho = white_noise_mix(rho, args.noise).mixed
        name += f" mixed p={args.noise!r}"
    text = json.dumps(state_to_dict(rho, name=name, seed=seed), indent=1) + "\n"
    if args.output in (None, "-"):
        out.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return EXIT_OK


def _render(doc: AnalysisDocument, fmt: str) -> str:
    if fmt == "json":
        return doc.to_json() + "\n"
    if fmt == "csv":
        return doc.to_csv()
    return doc.to_text()


def _cmd_analyze(args, out) -> int:
    rho, desc = _load(args.input)
    doc = analyze(rho, desc, fnf=args.fnf, bounds=args.bounds, eps=args.eps, tol=args.tol,
                  deterministic=args.deterministic)
    out.write(_render(doc, args.format))
    return EXIT_OK


def _cmd_bounds(args, out) -> int:
    rho, desc = _load(args.input)
    if args.fnf:
        rho = filter_normal_form(rho, eps=args.eps).rho_tilde
        desc += " (filter normal form)"
    doc = AnalysisDocument(desc, rho.dim_a, rho.dim_b, [], bounds_table(rho))
    if not args.deterministic:
        doc.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    out.write(_render(doc, args.format))
    return EXIT_OK


def _sweep_render(desc, rho, results: list[SweepResult], fmt, stamp) -> str:
    if fmt == "json":
        doc = {
            "descriptor": desc,
            "dim_a": rho.dim_a,
            "dim_b": rho.dim_b,
            "results": [r.to_dict() for r in results],
            "tool_version": __version__,
            "timestamp": stamp,
        }
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["criterion", "threshold_p", "monotone", "evaluations"])
        for r in results:
            w.writerow([r.criterion_id, "never" if r.threshold_p is None else repr(r.threshold_p),
                        r.monotone, r.evaluations])
        return buf.getvalue()
    lines = [f"state: {desc}  ({rho.dim_a} x {rho.dim_b})", f"  {'criterion':<10} {'detects for p >=':>18}  monotone"]
    for r in results:
        p = "never in [0,1]" if r.threshold_p is None else f"{r.threshold_p:.12g}"
        lines.append(f"  {r.criterion_id:<10} {p:>18}  {'yes' if r.monotone else 'NO'}")
    return "\n".join(lines) + "\n"


def _cmd_sweep(args, out) -> int:
    rho, desc = _load(args.input)
    if args.fnf:
        rho = filter_normal_form(rho, eps=args.eps).rho_tilde
        desc += " (filter normal form)"
    crits = CRITERIA if args.criterion == "all" else (_CRITERION_FLAGS[args.criterion],)
    results = sweep_noise(rho, crits, resolution=args.resolution, bisect_tol=args.bisect_tol, tol=args.tol)
    stamp = None if args.deterministic else datetime.now(timezone.utc).isoformat(timespec="seconds")
    out.write(_sweep_render(desc, rho, results, args.format, stamp))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blochsep",
        description="Entanglement criteria (PPT, CCNR, correlation matrix), filter normal form and "
        "concurrence/tangle bounds for bipartite density matrices.",
        epilog="Environment: BLOCHSEP_DETECTION_TOL overrides the default detection tolerance (1e-9) "
        "a criterion margin must exceed before a state is reported entangled.",
    )
    parser.add_argument("--version", action="version", version=f"blochsep {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        if fmt:
            p.add_argument("--format", choices=("text", "json", "csv"), default="text")
            p.add_argument("--deterministic", action="store_true", help="omit the timestamp")
        p.add_argument("--eps", type=float, default=1e-10,
                       help="whitening regularization for the filter normal form (default 1e-10)")

    g = sub.add_parser("gen", help="write a state file")
    g.add_argument("kind", choices=("gentiles2", "maxent", "maxmixed", "random-pure", "random-mixed",
                                    "random-separable"))
    g.add_argument("params", type=int, nargs="+", help="dimensions: M N (maxent: d)")
    g.add_argument("-o", "--output", help="output path (default: stdout)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--terms", type=int, default=10, help="product terms for random-separable")
    g.add_argument("--rank", type=int, default=None, help="rank for random-mixed (default: full)")
    g.add_argument("--fnf", action="store_true", help="write the filter normal form instead")
    g.add_argument("--noise", type=float, default=None, help="mix with white noise at weight p")
    common(g, fmt=False)
    g.set_defaults(func=_cmd_gen)

    a = sub.add_parser("analyze", help="run all separability criteria on a state file")
    a.add_argument("input", help="state file ('-' for stdin)")
    a.add_argument("--fnf", action="store_true", help="also analyze the filter normal form")
    a.add_argument("--bounds", action="store_true", help="include concurrence/tangle estimates")
    a.add_argument("--tol", type=float, default=None, help="detection tolerance")
    common(a)
    a.set_defaults(func=_cmd_analyze)

    s = sub.add_parser("sweep-noise", help="white-noise detection thresholds")
    s.add_argument("input")
    s.add_argument("--criterion", choices=("ppt", "ccnr", "cm", "cm_hs", "all"), default="all")
    s.add_argument("--resolution", type=int, default=100, help="pre-scan grid intervals")
    s.add_argument("--bisect-tol", type=float, default=1e-6)
    s.add_argument("--fnf", action="store_true", help="sweep the filter normal form of the input")
    s.add_argument("--tol", type=float, default=None, help="detection tolerance")
    common(s)
    s.set_defaults(func=_cmd_sweep)

    b = sub.add_parser("bounds", help="concurrence, tangle and MNB estimates")
    b.add_argument("input")
    b.add_argument("--fnf", action="store_true", help="bound the filter normal form of the input")
    common(b)
    b.set_defaults(func=_cmd_bounds)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except _Usage as exc:
        print(f"blochsep: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"blochsep: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (BlochsepError, OSError) as exc:
        print(f"blochsep: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

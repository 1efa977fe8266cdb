"""Command-line interface.

Every failure prints one line ``error: <CODE>: <message>`` to standard error
and exits with a nonzero status:

=================  ====  =============================================
code               exit  meaning
=================  ====  =============================================
CHECK_FAILED       1     a verification found a mismatch
IO_ERROR           3     an input file could not be read or written
FORMAT_ERROR       4     an input file is not a valid surface or arc
INVALID_INPUT      5     the surface or arc data is inconsistent
UNSUPPORTED_INPUT  6     the arc lies outside the formula's hypotheses
=================  ====  =============================================

Argument errors are reported by :mod:`argparse` with exit status 2.
"""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from .corpus import corpus_seed, generate_cases
from .dot import lattice_to_dot, loop_to_dot, quiver_to_dot
from .expansion import expand, specialize_boundary
from .formats import InputFormatError, load_arc, load_surface
from .laurent import LaurentPolynomial, NotDivisibleError
from .mswcheck import BijectionReport, build_double, build_ellp, check_phi_double, check_phi_single, msw_expand
from .mutation import variable_by_flips
from .poset import check_lattice, lattice, quiver_of_loop
from .surface import SurfaceError, UnsupportedInputError, require_valid

EXIT_CODES = {
    "CHECK_FAILED": 1,
    "IO_ERROR": 3,
    "FORMAT_ERROR": 4,
    "INVALID_INPUT": 5,
    "UNSUPPORTED_INPUT": 6,
}


class CliError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    command: str
    surface: Path | None = None
    arc: Path | None = None
    specialize_boundary: bool = False
    emit_matchings: bool = False
    output: Path | None = None
    seed: int | None = None
    extra: dict = field(default_factory=dict)


def _load(cfg: RunConfig, need_arc: bool = True):
    for p in (cfg.surface, cfg.arc if need_arc else None):
        if p is not None and not p.is_file():
            raise CliError("IO_ERROR", f"cannot read {p}")
    t = load_surface(cfg.surface)
    require_valid(t)
    arc = load_arc(cfg.arc) if need_arc else None
    return t, arc


def _write(cfg: RunConfig, text: str, out) -> None:
    if cfg.output is None:
        out.write(text)
        return
    try:
        cfg.output.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError("IO_ERROR", f"cannot write {cfg.output}: {exc.strerror}") from exc


# ----------------------------------------------------------------------
# commands

def cmd_expand(cfg: RunConfig, out) -> int:
    t, arc = _load(cfg)
    exp = expand(t, arc)
    poly = specialize_boundary(exp.polynomial, t) if cfg.specialize_boundary else exp.polynomial
    if cfg.extra.get("form") == "fraction":
        num = poly * LaurentPolynomial.from_monomial(exp.cross)
        lines = [f"({num}) / ({exp.cross})"]
    else:
        lines = [str(poly)]
    if cfg.emit_matchings:
        lg = exp.loop_graph
        lines.append(f"# crossing monomial: {exp.cross}")
        lines.append(f"# good matchings: {len(exp.terms)}")
        for i, term in enumerate(exp.terms, 1):
            labels = " ".join(sorted((lg.label(e) for e in term.matching.edges), key=_label_key))
            h = ",".join(str(j) for j in sorted(term.matching.height)) or "-"
            cuts = ",".join(term.matching.cut_types) or "-"
            lines.append(f"{i}\tedges=[{labels}]\theight={{{h}}}\tcuts={cuts}\tx={term.x}\ty={term.y}")
    out.write("\n".join(lines) + "\n")
    return 0


def _label_key(s: str):
    return (0, int(s), s) if s.isdigit() else (1, 0, s)


def cmd_lattice(cfg: RunConfig, out) -> int:
    t, arc = _load(cfg)
    lg = expand(t, arc).loop_graph
    what = cfg.extra.get("what", "lattice")
    if what == "lattice":
        text = lattice_to_dot(lattice(lg))
    elif what == "quiver":
        text = quiver_to_dot(quiver_of_loop(lg), {j: lg.snake.tile(j).diagonal for j in range(1, len(lg) + 1)})
    else:
        text = loop_to_dot(lg)
    _write(cfg, text, out)
    return 0


def _report_lines(rep: BijectionReport) -> list[str]:
    lines = [f"symmetric: {rep.symmetric}", f"good matchings: {rep.good}"]
    for cls in sorted(rep.classes):
        lines.append(f"class {cls}: {rep.classes[cls]}")
    lines.append(f"injective: {rep.injective}")
    lines.append(f"surjective: {rep.surjective}")
    lines.extend(f"mismatch: {m}" for m in rep.mismatches)
    return lines


def cmd_verify_bijection(cfg: RunConfig, out) -> int:
    t, arc = _load(cfg)
    n = sum(arc.notched_ends)
    if n == 1:
        rep = check_phi_single(build_ellp(t, arc))
    elif n == 2:
        rep = check_phi_double(build_double(t, arc))
    else:
        raise CliError("UNSUPPORTED_INPUT", "the arc has no notched end")
    same = msw_expand(t, arc) == expand(t, arc, normalize=False).polynomial
    lines = _report_lines(rep) + [f"formula equals expansion: {same}"]
    out.write("\n".join(lines) + "\n")
    if not (rep.ok and same):
        raise CliError("CHECK_FAILED", "the symmetric-matching correspondence failed")
    return 0


def cmd_oracle(cfg: RunConfig, out) -> int:
    t, arc = _load(cfg, need_arc=cfg.arc is not None)
    flips = [f.strip() for f in cfg.extra["flips"].split(",") if f.strip()]
    for f in flips + [cfg.extra["position"]]:
        if f not in t.arcs:
            raise CliError("INVALID_INPUT", f"{f!r} is not an arc label")
    value = variable_by_flips(t, flips, cfg.extra["position"])
    if cfg.specialize_boundary or arc is not None:
        value = specialize_boundary(value, t)
    out.write(str(value) + "\n")
    if arc is not None:
        mine = specialize_boundary(expand(t, arc).polynomial, t)
        same = mine == value
        out.write(f"matches expansion: {same}\n")
        if not same:
            raise CliError("CHECK_FAILED", "oracle and expansion differ")
    return 0


def cmd_selftest(cfg: RunConfig, out) -> int:
    seed = corpus_seed() if cfg.seed is None else cfg.seed
    count = cfg.extra.get("count", 40)
    failures: list[str] = []
    start = time.perf_counter()

    lattices = 0
    for tags in ("plain", "single", "double"):
        for case in generate_cases(count, seed=seed, tags=tags, max_tiles=8):
            try:
                exp = expand(case.surface, case.arc)
            except UnsupportedInputError:
                continue
            if any(c <= 0 for c in exp.numerator.coefficients()):
                failures.append(f"{tags} {case.note}: nonpositive coefficient")
            if len(exp.loop_graph) <= 12:
                lattices += 1
                if not check_lattice(exp.loop_graph).ok:
                    failures.append(f"{tags} {case.note}: lattice check failed")
    out.write(f"lattice and positivity checks: {lattices} loop graphs\n")

    notched = 0
    for tags in ("single", "double"):
        for case in generate_cases(count, seed=seed + 1, tags=tags, max_tiles=6):
            try:
                if tags == "single":
                    rep = check_phi_single(build_ellp(case.surface, case.arc))
                else:
                    rep = check_phi_double(build_double(case.surface, case.arc))
                same = msw_expand(case.surface, case.arc) == expand(case.surface, case.arc, normalize=False).polynomial
            except UnsupportedInputError:
                continue
            notched += 1
            if not (rep.ok and same):
                failures.append(f"{tags} {case.note}: symmetric-matching check failed")
    out.write(f"symmetric-matching checks: {notched} notched arcs\n")

    for f in failures:
        out.write(f"FAIL {f}\n")
    out.write(f"seed {seed}, {time.perf_counter() - start:.1f}s, {len(failures)} failures\n")
    if failures:
        raise CliError("CHECK_FAILED", f"{len(failures)} selftest failures")
    return 0


COMMANDS: dict[str, Callable[[RunConfig, object], int]] = {
    "expand": cmd_expand,
    "lattice": cmd_lattice,
    "verify-bijection": cmd_verify_bijection,
    "oracle": cmd_oracle,
    "selftest": cmd_selftest,
}


# ----------------------------------------------------------------------
# argument parsing

def _flag01(text: str) -> bool:
    if text not in ("0", "1"):
        raise argparse.ArgumentTypeError("expected 0 or 1")
    return text == "1"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cluster-loops", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def inputs(sp, arc_required=True):
        sp.add_argument("--surface", type=Path, required=True, help="surface JSON file")
        sp.add_argument("--arc", type=Path, required=arc_required, help="tagged arc JSON file")

    sp = sub.add_parser("expand", help="print the Laurent expansion of a tagged arc")
    inputs(sp)
    sp.add_argument("--specialize-boundary", type=_flag01, default=False, metavar="{0,1}")
    sp.add_argument("--emit-matchings", action="store_true", help="list every good matching")
    sp.add_argument(
        "--form", choices=("laurent", "fraction"), default="laurent",
        help="one Laurent polynomial, or numerator over the crossing monomial",
    )

    sp = sub.add_parser("lattice", help="write the lattice of good matchings as DOT")
    inputs(sp)
    sp.add_argument("--output", "-o", type=Path, help="DOT file (default: standard output)")
    sp.add_argument("--what", choices=("lattice", "quiver", "loop"), default="lattice")

    sp = sub.add_parser("verify-bijection", help="check the symmetric-matching correspondence")
    inputs(sp)

    sp = sub.add_parser("oracle", help="cluster variable by seed mutation along flips")
    inputs(sp, arc_required=False)
    sp.add_argument("--flips", required=True, help='comma-separated arc labels, e.g. "3,1,4"')
    sp.add_argument("--position", required=True, help="arc label whose variable to print")
    sp.add_argument("--specialize-boundary", type=_flag01, default=False, metavar="{0,1}")

    sp = sub.add_parser("selftest", help="run the property checks on generated surfaces")
    sp.add_argument("--seed", type=int, default=None, help="corpus seed (default: CLUSTER_LOOPS_SEED)")
    sp.add_argument("--count", type=int, default=40, help="cases per tagging policy")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    extra = {}
    for key in ("what", "flips", "position", "count", "form"):
        if hasattr(ns, key):
            extra[key] = getattr(ns, key)
    return RunConfig(
        command=ns.command,
        surface=getattr(ns, "surface", None),
        arc=getattr(ns, "arc", None),
        specialize_boundary=getattr(ns, "specialize_boundary", False),
        emit_matchings=getattr(ns, "emit_matchings", False),
        output=getattr(ns, "output", None),
        seed=getattr(ns, "seed", None),
        extra=extra,
    )


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    cfg = config_from_args(build_parser().parse_args(argv))
    try:
        return COMMANDS[cfg.command](cfg, out)
    except CliError as exc:
        code, msg = exc.code, str(exc)
    except OSError as exc:
        code, msg = "IO_ERROR", f"{exc.filename or ''}: {exc.strerror or exc}".strip(": ")
    except InputFormatError as exc:
        code, msg = "FORMAT_ERROR", str(exc)
    except UnsupportedInputError as exc:
        code, msg = "UNSUPPORTED_INPUT", str(exc)
    except (SurfaceError, NotDivisibleError, ValueError) as exc:
        code, msg = "INVALID_INPUT", str(exc)
    err.write(f"error: {code}: {' '.join(msg.split())}\n")
    return EXIT_CODES[code]


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

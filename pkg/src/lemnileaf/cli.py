"""Command line: reproduce the lemniscate tables and dump curve/construction data.

Exit status: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from decimal import ROUND_DOWN, Decimal
from pathlib import Path

from . import geometry as geo
from . import suite
from .leaf_core import cleaf, pi_n, sleaf
from .leaf_identities import BranchError, theta_from_l_cleaf, theta_from_l_sleaf

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

TABLE1, TABLE2, CONSTANTS = "table1", "table2", "constants"
CURVE_HEADER = "l,theta,x,y,sleaf2,cleaf2"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class TableSpec:
    table_id: str = TABLE1
    l_start: str = "0.0"
    l_end: str = "1.3"
    l_step: str = "0.1"
    precision: int = 5

    def __post_init__(self):
        if self.table_id not in (TABLE1, TABLE2, CONSTANTS):
            raise UsageError(f"unknown table {self.table_id!r}")
        try:
            start, end, step = (Decimal(x) for x in (self.l_start, self.l_end, self.l_step))
        except ArithmeticError as exc:
            raise UsageError(f"bad grid value: {exc}") from None
        if not step > 0:
            raise UsageError("--step must be > 0")
        if start > end:
            raise UsageError("--start must not exceed --end")
        if self.precision < 1:
            raise UsageError("--precision must be >= 1")

    def grid(self) -> list[Decimal]:
        # decimal arithmetic keeps the printed phases exact (0.3, not 0.30000000000000004)
        start, end, step = Decimal(self.l_start), Decimal(self.l_end), Decimal(self.l_step)
        out = []
        k = 0
        while start + k * step <= end:
            out.append(start + k * step)
            k += 1
        return out


def truncate(value: float, digits: int) -> str:
    """Fixed-point text with ``digits`` decimals, truncated toward zero."""
    q = Decimal(1).scaleb(-digits)
    d = Decimal(repr(float(value))).quantize(q, rounding=ROUND_DOWN)
    if d == 0:
        d = abs(d)
    return f"{d:f}"


def table_rows(spec: TableSpec) -> list[list[str]]:
    """Rows of strings: phase, angle (rad), angle (deg), sleaf2, cleaf2."""
    theta_fn = theta_from_l_cleaf if spec.table_id == TABLE1 else theta_from_l_sleaf
    p = spec.precision
    rows = []
    for ld in spec.grid():
        l = float(ld)
        try:
            theta = theta_fn(l)
        except BranchError as exc:
            raise UsageError(str(exc)) from None
        rows.append([
            str(ld),
            truncate(theta, p),
            truncate(math.degrees(theta), max(p - 1, 0)),
            truncate(sleaf(2, l).value, p),
            truncate(cleaf(2, l).value, p),
        ])
    return rows


def constants_rows(n_max: int, precision: int) -> list[list[str]]:
    if n_max < 1:
        raise UsageError("--n-max must be >= 1")
    return [[str(n), truncate(pi_n(n), precision)] for n in range(1, n_max + 1)]


def _render(header: list[str], rows: list[list[str]], fmt: str) -> str:
    if fmt == "csv":
        return "\n".join(",".join(r) for r in [header] + rows) + "\n"
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in [header] + rows]
    return "\n".join(lines) + "\n"


def format_table(spec: TableSpec, fmt: str = "text") -> str:
    if spec.table_id == CONSTANTS:
        raise UsageError("use constants_rows for the pi_n table")
    angle = "theta" if spec.table_id == TABLE1 else "theta_bar"
    header = ["l", f"{angle}_rad", f"{angle}_deg", "sleaf2", "cleaf2"]
    return _render(header, table_rows(spec), fmt)


def format_constants(n_max: int = 3, precision: int = 4, fmt: str = "text") -> str:
    return _render(["n", "pi_n"], constants_rows(n_max, precision), fmt)


def _num(x: float) -> str:
    # shortest round-trip repr, unsigned zero
    return repr(float(x) + 0.0)


def curve_rows(v: geo.LemniscateVariant, n_samples: int) -> list[tuple[float, ...]]:
    if n_samples < 2:
        raise UsageError("--samples must be >= 2")
    half = 0.5 * pi_n(2)
    theta_fn = theta_from_l_cleaf if v is geo.LemniscateVariant.HORIZONTAL else theta_from_l_sleaf
    rows = []
    for k in range(n_samples):
        l = half if k == n_samples - 1 else k * half / (n_samples - 1)
        s, c = sleaf(2, l).value, cleaf(2, l).value
        theta = theta_fn(l)
        r = c if v is geo.LemniscateVariant.HORIZONTAL else s
        rows.append((l, theta, r * math.cos(theta), r * math.sin(theta), s, c))
    return rows


def curve_csv(v: geo.LemniscateVariant, n_samples: int) -> str:
    lines = [CURVE_HEADER]
    lines += [",".join(_num(x) for x in row) for row in curve_rows(v, n_samples)]
    return "\n".join(lines) + "\n"


def full_loop(v: geo.LemniscateVariant, arc: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Closed figure-eight from the principal arc by the curve's reflections."""
    rev = arc[::-1]
    if v is geo.LemniscateVariant.HORIZONTAL:
        # arc runs A -> O in the first quadrant
        pieces = [arc, [(-x, -y) for x, y in rev], [(-x, y) for x, y in arc], [(x, -y) for x, y in rev]]
    else:
        # arc runs O -> A below the diagonal; mirror in y = x and through O
        pieces = [arc, [(y, x) for x, y in rev], [(-x, -y) for x, y in arc], [(-y, -x) for x, y in rev]]
    pts = []
    for piece in pieces:
        for p in piece:
            if not pts or pts[-1] != p:
                pts.append(p)
    return pts


def _f(x: float) -> str:
    return f"{float(x) + 0.0:.9f}"


def _path(points, close=True) -> str:
    head, *rest = points
    d = f"M {_f(head[0])} {_f(head[1])} " + " ".join(f"L {_f(x)} {_f(y)}" for x, y in rest)
    return d + (" Z" if close else "")


_SVG_HEAD = (
    '<?xml version="1.0" encoding="UTF-8"?>\n'
    '<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.1 -1.1 2.2 2.2" width="600" height="600">\n'
)


def curve_svg(v: geo.LemniscateVariant, n_samples: int) -> str:
    arc = [(row[2], row[3]) for row in curve_rows(v, n_samples)]
    loop = full_loop(v, arc)
    return (
        _SVG_HEAD
        + '<g transform="scale(1,-1)" fill="none" stroke="black" stroke-width="0.006">\n'
        + f'<path id="lemniscate" d="{_path(loop)}"/>\n'
        + "</g>\n</svg>\n"
    )


def build_frame(v: geo.LemniscateVariant, l: float) -> geo.ConstructionFrame:
    try:
        if v is geo.LemniscateVariant.HORIZONTAL:
            return geo.construction_frame_horizontal(l)
        return geo.construction_frame_diagonal(l)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def frame_csv(frame: geo.ConstructionFrame) -> str:
    lines = ["kind,name,x1,y1,x2,y2"]
    for name, p in frame.points.items():
        lines.append(f"point,{name},{_num(p.x)},{_num(p.y)},,")
    pts = frame.points
    for a, b in frame.segments:
        pa, pb = pts[a], pts[b]
        lines.append(f"segment,{a}{b},{_num(pa.x)},{_num(pa.y)},{_num(pb.x)},{_num(pb.y)}")
    for name in ("OP", "OC", "CP", "AB"):
        lines.append(f"length,{name},{_num(getattr(frame, name))},,,")
    lines.append(f"angle,theta,{_num(frame.theta)},,,")
    return "\n".join(lines) + "\n"


def frame_svg(frame: geo.ConstructionFrame, n_curve: int = 200) -> str:
    arc = [(row[2], row[3]) for row in curve_rows(frame.variant, n_curve)]
    loop = full_loop(frame.variant, arc)
    pts = frame.points
    body = [f'<path id="lemniscate" d="{_path(loop)}" stroke="gray"/>']
    for a, b in frame.segments:
        pa, pb = pts[a], pts[b]
        body.append(
            f'<line id="{a}{b}" x1="{_f(pa.x)}" y1="{_f(pa.y)}" x2="{_f(pb.x)}" y2="{_f(pb.y)}"/>'
        )
    for name, p in pts.items():
        body.append(f'<circle cx="{_f(p.x)}" cy="{_f(p.y)}" r="0.012" fill="black"/>')
    # labels sit outside the flipped group so the text stays upright
    labels = [
        f'<text x="{_f(p.x + 0.02)}" y="{_f(-p.y - 0.02)}" font-size="0.06">{name}</text>'
        for name, p in pts.items()
    ]
    return (
        _SVG_HEAD
        + '<g transform="scale(1,-1)" fill="none" stroke="black" stroke-width="0.006">\n'
        + "\n".join(body)
        + "\n</g>\n"
        + "\n".join(labels)
        + "\n</svg>\n"
    )


def verify_report(tolerance: float, samples: int) -> tuple[str, bool]:
    if not tolerance > 0:
        raise UsageError("--tolerance must be > 0")
    if samples < 1:
        raise UsageError("--samples must be >= 1")
    reports = suite.run_all(samples)
    width = max(len(r.name) for r in reports)
    lines = []
    ok = True
    for r in reports:
        passed = r.passed(tolerance)
        ok &= passed
        lines.append(f"{r.name.ljust(width)}  {r.max_abs_residual:.3e}  {'PASS' if passed else 'FAIL'}")
    lines.append(f"{'ALL PASS' if ok else 'FAILED'} (tolerance {tolerance:g}, samples {samples})")
    return "\n".join(lines) + "\n", ok


def _variant(text: str) -> geo.LemniscateVariant:
    try:
        return geo.LemniscateVariant(text)
    except ValueError:
        raise argparse.ArgumentTypeError("variant must be 'horizontal' or 'diagonal'") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lemnileaf", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def out_flag(sp):
        sp.add_argument("--out", type=Path, default=None, help="output file (default stdout)")

    t = sub.add_parser("table", help="arc length / angle / leaf function table")
    t.add_argument("--variant", type=_variant, default=geo.LemniscateVariant.HORIZONTAL,
                   help="horizontal (angle from cleaf) or diagonal (angle from sleaf)")
    t.add_argument("--start", default="0.0")
    t.add_argument("--end", default="1.3")
    t.add_argument("--step", default="0.1")
    t.add_argument("--precision", type=int, default=5,
                   help="decimals kept (truncated); degrees get one fewer")
    t.add_argument("--format", choices=["text", "csv"], default="text")
    out_flag(t)

    c = sub.add_parser("constants", help="table of pi_n")
    c.add_argument("--n-max", type=int, default=3)
    c.add_argument("--precision", type=int, default=4)
    c.add_argument("--format", choices=["text", "csv"], default="text")
    out_flag(c)

    cv = sub.add_parser("curve", help="sample the principal arc (csv) or draw the curve (svg)")
    cv.add_argument("--variant", type=_variant, default=geo.LemniscateVariant.HORIZONTAL)
    cv.add_argument("--samples", type=int, default=100)
    cv.add_argument("--format", choices=["csv", "svg"], default="csv")
    out_flag(cv)

    f = sub.add_parser("frame", help="construction points at one phase")
    f.add_argument("--variant", type=_variant, default=geo.LemniscateVariant.HORIZONTAL)
    f.add_argument("--l", type=float, required=True, dest="phase")
    f.add_argument("--format", choices=["csv", "svg"], default="csv")
    out_flag(f)

    v = sub.add_parser("verify", help="run the identity and geometry residual checks")
    v.add_argument("--tolerance", type=float, default=1e-8)
    v.add_argument("--samples", type=int, default=100)
    out_flag(v)
    return p


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def run(args: argparse.Namespace) -> int:
    status = EXIT_OK
    if args.command == "table":
        table_id = TABLE1 if args.variant is geo.LemniscateVariant.HORIZONTAL else TABLE2
        spec = TableSpec(table_id, args.start, args.end, args.step, args.precision)
        text = format_table(spec, args.format)
    elif args.command == "constants":
        if args.precision < 1:
            raise UsageError("--precision must be >= 1")
        text = format_constants(args.n_max, args.precision, args.format)
    elif args.command == "curve":
        if args.samples < 2:
            raise UsageError("--samples must be >= 2")
        if args.format == "csv":
            text = curve_csv(args.variant, args.samples)
        else:
            text = curve_svg(args.variant, args.samples)
    elif args.command == "frame":
        frame = build_frame(args.variant, args.phase)
        text = frame_csv(frame) if args.format == "csv" else frame_svg(frame)
    else:
        text, ok = verify_report(args.tolerance, args.samples)
        status = EXIT_OK if ok else EXIT_FAIL
    _emit(text, args.out)
    return status


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except UsageError as exc:
        print(f"lemnileaf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"lemnileaf: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

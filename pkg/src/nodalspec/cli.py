"""Command line front end: parse a polynomial and its nodes, run the pipeline and
print the degree tables with k as the header row.

    nodalspec --poly 'x^2*y^2 + x^2*z^2 + y^2*z^2' --points nodes.txt
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .exactla import Arithmetic, ModularUncertified
from .koszul import KoszulComplex, default_window
from .polyring import HomPoly
from .singular import (
    VARIANTS,
    certify_condition_A,
    defect,
    parse_points,
    search_nodes,
    wotzlaw_proven,
    wotzlaw_quotient_dim,
)
from .spectra import CHECKS, CheckContext, IdentityReport, CheckResult, collect, identity_suite

SCHEMA = "nodalspec.report/1"

VAR_ALIASES = {"x": 0, "y": 1, "z": 2, "w": 3}


# ---------------------------------------------------------------------------
# polynomial parsing


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotHomogeneous(ValueError):
    def __init__(self, a: int, b: int):
        super().__init__(f"polynomial mixes degrees {a} and {b}")
        self.degrees = (a, b)


Poly = dict  # sorted ((var, exp), ...) -> Fraction


def _mono_mul(a: tuple, b: tuple) -> tuple:
    acc = dict(a)
    for v, e in b:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(acc.items()))


def _pmul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = _mono_mul(m1, m2)
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _padd(p: Poly, q: Poly, sign: int = 1) -> Poly:
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, 0) + sign * c
    return {m: c for m, c in out.items() if c}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def peek(self) -> str:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.i)
        self.i += 1

    def expr(self) -> Poly:
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.i += 1
        acc = _padd({}, self.term(), sign)
        while self.peek() in ("+", "-") and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.i += 1
            acc = _padd(acc, self.term(), sign)
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek() in ("*", "/") and self.peek():
            op = self.peek()
            pos = self.i
            self.i += 1
            rhs = self.factor()
            if op == "*":
                acc = _pmul(acc, rhs)
            else:
                if set(rhs) - {()} or not rhs.get(()):
                    raise ParseError("can only divide by a nonzero constant", pos)
                acc = {m: c / rhs[()] for m, c in acc.items()}
        return acc

    def factor(self) -> Poly:
        base = self.base()
        if self.peek() == "^":
            self.i += 1
            self.peek()
            start = self.i
            while self.i < len(self.text) and self.text[self.i].isdigit():
                self.i += 1
            if start == self.i:
                raise ParseError("expected a nonnegative integer exponent", start)
            e = int(self.text[start:self.i])
            out: Poly = {(): Fraction(1)}
            for _ in range(e):
                out = _pmul(out, base)
            return out
        return base

    def base(self) -> Poly:
        ch = self.peek()
        start = self.i
        if ch == "(":
            self.i += 1
            inner = self.expr()
            self.expect(")")
            return inner
        if ch.isdigit() or ch == ".":
            while self.i < len(self.text) and (self.text[self.i].isdigit() or self.text[self.i] == "."):
                self.i += 1
            try:
                return {(): Fraction(self.text[start:self.i])}
            except ValueError:
                raise ParseError("malformed number", start) from None
        if ch in VAR_ALIASES or ch == "x":
            self.i += 1
            if ch == "x" and self.i < len(self.text) and self.text[self.i].isdigit():
                s = self.i
                while self.i < len(self.text) and self.text[self.i].isdigit():
                    self.i += 1
                var = int(self.text[s:self.i])
            else:
                var = VAR_ALIASES[ch]
            if self.i < len(self.text) and (self.text[self.i].isalpha() or self.text[self.i] == "_"):
                raise ParseError("unknown identifier", start)
            return {((var, 1),): Fraction(1)}
        if not ch:
            raise ParseError("unexpected end of input", start)
        raise ParseError(f"unexpected character {ch!r}", start)


def parse_polynomial(text: str, num_vars: int | None = None) -> HomPoly:
    """Expand ``text`` into a homogeneous polynomial.

    Variables are x, y, z, w (= x0..x3) or x<i>; products, integer powers,
    rational constants and parentheses are allowed.
    """
    p = _Parser(text)
    poly = p.expr()
    if p.peek():
        raise ParseError(f"unexpected character {p.peek()!r}", p.i)
    if not poly:
        raise ParseError("polynomial is zero", 0)
    degrees = []
    for m in poly:
        deg = sum(e for _, e in m)
        if degrees and deg != degrees[0]:
            raise NotHomogeneous(degrees[0], deg)
        degrees.append(deg)
    deg = degrees[0]
    if deg < 1:
        raise ParseError("polynomial is constant", 0)
    top = max((v for m in poly for v, _ in m), default=0) + 1
    nv = max(top, 2) if num_vars is None else num_vars
    if nv < top:
        raise ParseError(f"uses x{top - 1} but only {nv} variables were requested", 0)
    terms = []
    for m, c in poly.items():
        e = [0] * nv
        for v, k in m:
            e[v] = k
        terms.append((tuple(e), c))
    return HomPoly(nv, deg, tuple(terms))


def read_text_or_file(arg: str) -> str:
    p = Path(arg)
    if p.is_file():
        return p.read_text()
    return arg


# ---------------------------------------------------------------------------
# jobs and reports


@dataclass(frozen=True)
class JobSpec:
    poly: str
    points: str | None = None
    find_nodes: bool = False
    kmax: int | None = None
    checks: tuple[str, ...] | None = None
    arith: Arithmetic = Arithmetic()
    emit: str = "table"
    wotzlaw: str = "both"
    workers: int = 1
    num_vars: int | None = None


class StageError(Exception):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause


ROWS = ("gamma", "mu", "sn", "mu2", "sn2", "sp_pole", "sp")
ROW_LABELS = {"gamma": "γ_k", "mu": "μ_k", "sn": "sν_k", "mu2": "μ2_k", "sn2": "sν2_k",
              "sp_pole": "Sp_P", "sp": "Sp"}


@dataclass
class WotzlawRow:
    q: int
    variant: str
    degree: int
    quotient: int
    hodge: int
    proven: bool


@dataclass
class Report:
    polynomial: str
    n: int
    d: int
    tau: int
    kmax: int
    mode: str
    points: list[str]
    rows: dict[str, dict[int, int]]
    defects: dict[int, int]
    wotzlaw: list[WotzlawRow]
    spectra: dict[str, str]
    identities: IdentityReport = field(default_factory=IdentityReport)

    @property
    def ok(self) -> bool:
        return self.identities.ok


def _stage(name, fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except Exception as exc:
        raise StageError(name, exc) from exc


def run(job: JobSpec) -> Report:
    f = _stage("parse", parse_polynomial, read_text_or_file(job.poly), job.num_vars)
    n, d = f.n, f.degree
    if job.points is not None:
        pts = _stage("points", parse_points, read_text_or_file(job.points))
    elif job.find_nodes:
        pts = search_nodes(f)
    else:
        pts = []
    cert = _stage("certify", certify_condition_A, f, pts, job.arith)
    pts = list(cert.points)
    window_top = max(default_window(n, d)[1], (n + 1) * d)
    kmax = job.kmax if job.kmax is not None else window_top
    K = KoszulComplex(f, job.arith)
    data = _stage("spectra", collect, K, cert, max(kmax, window_top), job.workers)

    wrows: list[WotzlawRow] = []
    variants = VARIANTS if job.wotzlaw == "both" else (() if job.wotzlaw == "none" else (job.wotzlaw,))
    for q in range(0, n + 1):
        for v in variants:
            qd = _stage("wotzlaw", wotzlaw_quotient_dim, f, pts, q, v)
            wrows.append(WotzlawRow(q, v, (q + 1) * d - n - 1, qd,
                                    data.refined.sp0[(q + 1) * d], wotzlaw_proven(n, d, q, v)))

    ctx = CheckContext(K, cert, data, tuple(pts), wotzlaw=wrows or None)
    names = None if job.checks is None else list(job.checks)
    idr = _stage("identities", identity_suite, ctx, names)

    ks = range(1, kmax + 1)
    rows = {
        "gamma": {k: data.gamma.get(k, 0) for k in ks},
        "mu": {k: data.mu[k] for k in ks},
        "sn": {k: data.sn[k] for k in ks},
        "mu2": {k: data.mu2[k] for k in ks},
        "sn2": {k: data.sn2[k] for k in ks},
        "sp_pole": {k: data.sp_pole[k] for k in ks},
        "sp": {k: data.sp[k] for k in ks},
    }
    defects = {k: defect(pts, k, job.arith) for k in range(0, max(n * d - n - 1, 0) + 1)}
    spectra = {
        "Sp": data.sp.lines(),
        "Sp_P": data.sp_pole.lines(),
        "Sp0": data.refined.sp0.lines(),
        "Sp1": data.refined.sp1.lines(),
        "Sp_P0": data.refined.sp_pole0.lines(),
    }
    return Report(
        polynomial=str(f), n=n, d=d, tau=cert.tau, kmax=kmax, mode=job.arith.mode,
        points=[str(p) for p in pts], rows=rows, defects=defects, wotzlaw=wrows,
        spectra=spectra, identities=idr,
    )


# ---------------------------------------------------------------------------
# output


def _cell(v: int) -> str:
    return "" if v == 0 else str(v)


def _grid(header: list[str], body: list[list[str]]) -> str:
    table = [header] + body
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    lines = []
    for r in table:
        first = r[0].ljust(widths[0])
        rest = [c.rjust(w) for c, w in zip(r[1:], widths[1:])]
        lines.append(" ".join([first] + rest).rstrip())
    return "\n".join(lines) + "\n"


def emit_table(r: Report) -> str:
    out = [f"f = {r.polynomial}", f"n = {r.n}  d = {r.d}  tau = {r.tau}  mode = {r.mode}"]
    if r.points:
        out.append("nodes: " + " ".join(r.points))
    out.append("")
    ks = list(range(1, r.kmax + 1))
    body = [[ROW_LABELS[name]] + [_cell(r.rows[name][k]) for k in ks] for name in ROWS]
    out.append(_grid(["k"] + [str(k) for k in ks], body))
    dk = sorted(r.defects)
    if dk:
        out.append("defects")
        out.append(_grid(["k"] + [str(k) for k in dk], [["def_k"] + [_cell(r.defects[k]) for k in dk]]))
    if r.wotzlaw:
        out.append("wotzlaw quotients")
        body = [[str(w.q), w.variant, str(w.degree), str(w.quotient), str(w.hodge),
                 "proven" if w.proven else "open"] for w in r.wotzlaw]
        out.append(_grid(["q", "variant", "degree", "quotient", "n0_(q+1)", "status"], body))
    out.append("checks")
    for c in r.identities.results:
        wit = "" if not c.witnesses else "  at " + ",".join(str(k) for k in c.witnesses)
        out.append(f"  {c.status:<15}{c.name}{wit}")
    return "\n".join(out) + "\n"


def report_to_json(r: Report) -> dict:
    s = str
    return {
        "schema": SCHEMA,
        "input": {"polynomial": r.polynomial, "n": s(r.n), "d": s(r.d), "tau": s(r.tau),
                  "kmax": s(r.kmax), "mode": r.mode, "points": r.points},
        "tables": {name: {s(k): s(v) for k, v in r.rows[name].items()} for name in ROWS},
        "defects": {s(k): s(v) for k, v in r.defects.items()},
        "wotzlaw": [{"q": s(w.q), "variant": w.variant, "degree": s(w.degree), "quotient": s(w.quotient),
                     "hodge": s(w.hodge), "proven": w.proven} for w in r.wotzlaw],
        "spectra": r.spectra,
        "identities": [{"name": c.name, "status": c.status, "witnesses": [s(k) for k in c.witnesses],
                        "detail": c.detail} for c in r.identities.results],
    }


def report_from_json(obj: dict) -> Report:
    if obj.get("schema") != SCHEMA:
        raise ValueError(f"unsupported report schema {obj.get('schema')!r}")
    i = int
    inp = obj["input"]
    return Report(
        polynomial=inp["polynomial"], n=i(inp["n"]), d=i(inp["d"]), tau=i(inp["tau"]),
        kmax=i(inp["kmax"]), mode=inp["mode"], points=list(inp["points"]),
        rows={name: {i(k): i(v) for k, v in t.items()} for name, t in obj["tables"].items()},
        defects={i(k): i(v) for k, v in obj["defects"].items()},
        wotzlaw=[WotzlawRow(i(w["q"]), w["variant"], i(w["degree"]), i(w["quotient"]), i(w["hodge"]), w["proven"])
                 for w in obj["wotzlaw"]],
        spectra=dict(obj["spectra"]),
        identities=IdentityReport([CheckResult(c["name"], c["status"], tuple(i(k) for k in c["witnesses"]),
                                               c["detail"]) for c in obj["identities"]]),
    )


def emit_csv(r: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    ks = list(range(1, r.kmax + 1))
    w.writerow(["row"] + ks)
    for name in ROWS:
        w.writerow([name] + [r.rows[name][k] for k in ks])
    return buf.getvalue()


def emit(r: Report, fmt: str) -> bytes:
    if fmt == "table":
        text = emit_table(r)
    elif fmt == "json":
        text = json.dumps(report_to_json(r), indent=2, sort_keys=False) + "\n"
    elif fmt == "csv":
        text = emit_csv(r)
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    return text.encode("utf-8")


# ---------------------------------------------------------------------------
# entry point


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgParser(prog="nodalspec", description="Koszul cohomology and spectra of nodal hypersurfaces.")
    ap.add_argument("--poly", required=True, help="polynomial expression or a file containing one")
    ap.add_argument("--points", help="file (or inline text) with one node per line, e.g. 0:1:-1")
    ap.add_argument("--find-nodes", action="store_true",
                    help="heuristic: look for nodes with coordinates in {0, ±1, ±2, ±1/2}")
    ap.add_argument("--vars", type=int, dest="num_vars", help="number of variables (default: highest used)")
    ap.add_argument("--kmax", type=int, help="last degree shown in the tables")
    ap.add_argument("--mode", choices=("rational", "modular"), default="rational")
    ap.add_argument("--primes", type=int, default=3, help="agreeing primes required in modular mode")
    ap.add_argument("--emit", choices=("table", "json", "csv"), default="table")
    ap.add_argument("--checks", default="all", help="'all' or a comma separated list of check names")
    ap.add_argument("--wotzlaw", choices=("powers", "symbolic", "both", "none"), default="both")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for slice ranks")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.checks == "all":
        checks = None
    else:
        checks = tuple(c.strip() for c in args.checks.split(",") if c.strip())
        unknown = [c for c in checks if c not in CHECKS]
        if unknown:
            print(f"nodalspec: unknown checks {', '.join(unknown)}; known: {', '.join(CHECKS)}", file=sys.stderr)
            return 1
    if args.primes < 1:
        print("nodalspec: --primes must be positive", file=sys.stderr)
        return 1
    job = JobSpec(
        poly=args.poly, points=args.points, find_nodes=args.find_nodes, kmax=args.kmax, checks=checks,
        arith=Arithmetic(args.mode, primes=args.primes), emit=args.emit, wotzlaw=args.wotzlaw,
        workers=args.jobs, num_vars=args.num_vars,
    )
    try:
        report = run(job)
    except StageError as exc:
        print(f"nodalspec: {exc}", file=sys.stderr)
        if exc.stage in ("parse", "points"):
            return 1
        if exc.stage == "certify" or isinstance(exc.cause, ModularUncertified):
            return 2
        return 3
    sys.stdout.buffer.write(emit(report, job.emit))
    sys.stdout.flush()
    return 0 if report.ok else 3


if __name__ == "__main__":
    sys.exit(main())

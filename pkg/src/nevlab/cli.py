"""Problem-file parsing, command dispatch, and report emission.

One plain-text input format with named sections drives the whole laboratory:

    [variety]         M = ..., n = ..., then one homogeneous generator per line
    [hypersurfaces]   lines `degree <d>: <polynomial>` with Q(z) coefficients
    [curve]           M+1 entire expressions in z, one per line
    [options]         key = value defaults (N, epsilon, r_min, ..., seed)

Polynomials use variables x0..x9, integer and rational literals p/q,
coefficient literals `{...}` holding rational-function expressions in z, the
operators + - * ^, and parentheses.  Curve expressions allow rational
constants, z, + - * ^, exp(...) and parentheses (no division: components are
entire).

Exit codes: 0 success, 2 parse error, 3 precondition failure (e.g. a
non-admissible system), 4 numeric guard trip (overflow, ambiguous winding).
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

import numpy as np

from . import filtration as filt
from . import gradedgeom as gg
from . import nevanlinna as nev
from .algebra import (
    RATIONAL,
    RATIONAL_FUNCTION,
    InhomogeneousInput,
    MultiPoly,
    PoleAtPoint,
    RationalFunction,
    normalize_degrees,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_NUMERIC = 4


class ProblemSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class DegreeMismatchError(ValueError):
    pass


class ArityMismatchError(ValueError):
    pass


class PreconditionError(RuntimeError):
    pass


class UnknownCommand(ValueError):
    pass


class UnsupportedFormat(ValueError):
    pass


# ---------------------------------------------------------------------------
# Tokenizer and recursive-descent parsers.
# ---------------------------------------------------------------------------

@dataclass
class _Token:
    kind: str  # NUM, NAME, or a single symbol
    value: str
    line: int
    col: int


_SYMBOLS = set("+-*/^(){}")


def _tokenize(text: str, line_offset: int = 1) -> list[_Token]:
    tokens = []
    line = line_offset
    col = 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("NUM", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("NAME", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token(ch, ch, line, col))
            col += 1
            i += 1
            continue
        raise ProblemSyntaxError(f"unexpected character {ch!r}", line, col)
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], end_line: int):
        self.tokens = tokens
        self.pos = 0
        self.end_line = end_line

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ProblemSyntaxError("unexpected end of input", self.end_line, 1)
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ProblemSyntaxError(f"expected {kind!r}, found {tok.value!r}",
                                     tok.line, tok.col)
        return tok

    def at(self, kind: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == kind

    def done(self) -> bool:
        return self.pos >= len(self.tokens)

    def error(self, message: str):
        tok = self.peek()
        if tok is None:
            raise ProblemSyntaxError(message, self.end_line, 1)
        raise ProblemSyntaxError(message, tok.line, tok.col)


def _parse_nat(p: _Parser) -> int:
    return int(p.expect("NUM").value)


def _parse_rational(p: _Parser) -> Fraction:
    num = int(p.expect("NUM").value)
    if p.at("/") and p.pos + 1 < len(p.tokens) and p.tokens[p.pos + 1].kind == "NUM":
        p.next()
        den = int(p.expect("NUM").value)
        if den == 0:
            p.error("zero denominator in rational literal")
        return Fraction(num, den)
    return Fraction(num)


# -- scalar (rational-function) expressions over z --------------------------

def _scalar_expr(p: _Parser) -> RationalFunction:
    acc = _scalar_term(p)
    while p.at("+") or p.at("-"):
        op = p.next().kind
        rhs = _scalar_term(p)
        acc = acc + rhs if op == "+" else acc - rhs
    return acc


def _scalar_term(p: _Parser) -> RationalFunction:
    acc = _scalar_factor(p)
    while p.at("*") or p.at("/"):
        op = p.next().kind
        rhs = _scalar_factor(p)
        if op == "*":
            acc = acc * rhs
        else:
            if rhs.is_zero:
                p.error("division by zero in coefficient")
            acc = acc / rhs
    return acc


def _scalar_factor(p: _Parser) -> RationalFunction:
    base = _scalar_atom(p)
    if p.at("^"):
        p.next()
        k = _parse_nat(p)
        base = base ** k
    return base


def _scalar_atom(p: _Parser) -> RationalFunction:
    tok = p.peek()
    if tok is None:
        p.error("unexpected end of coefficient")
    if tok.kind == "NUM":
        return RationalFunction.from_fraction(_parse_rational(p))
    if tok.kind == "NAME":
        if tok.value == "z":
            p.next()
            return RationalFunction.z()
        p.error(f"unexpected name {tok.value!r} in coefficient (only z is allowed)")
    if tok.kind == "(":
        p.next()
        inner = _scalar_expr(p)
        p.expect(")")
        return inner
    if tok.kind == "-":
        p.next()
        return -_scalar_factor(p)
    p.error(f"unexpected token {tok.value!r} in coefficient")


# -- polynomials in x0..x9 ---------------------------------------------------

def _poly_expr(p: _Parser, nvars: int, ftag: str) -> MultiPoly:
    acc = _poly_term(p, nvars, ftag)
    while p.at("+") or p.at("-"):
        op = p.next().kind
        rhs = _poly_term(p, nvars, ftag)
        acc = acc + rhs if op == "+" else acc - rhs
    return acc


def _poly_term(p: _Parser, nvars: int, ftag: str) -> MultiPoly:
    acc = _poly_factor(p, nvars, ftag)
    while p.at("*"):
        p.next()
        acc = acc * _poly_factor(p, nvars, ftag)
    return acc


def _poly_factor(p: _Parser, nvars: int, ftag: str) -> MultiPoly:
    base = _poly_atom(p, nvars, ftag)
    if p.at("^"):
        p.next()
        k = _parse_nat(p)
        base = base ** k
    return base


def _poly_atom(p: _Parser, nvars: int, ftag: str) -> MultiPoly:
    tok = p.peek()
    if tok is None:
        p.error("unexpected end of polynomial")
    if tok.kind == "NUM":
        return MultiPoly.constant(nvars, _parse_rational(p), ftag)
    if tok.kind == "{":
        if ftag != RATIONAL_FUNCTION:
            p.error("coefficient literals {...} are not allowed here "
                    "(variety generators have rational constant coefficients)")
        p.next()
        value = _scalar_expr(p)
        p.expect("}")
        return MultiPoly.constant(nvars, value, ftag)
    if tok.kind == "NAME":
        name = tok.value
        if len(name) >= 2 and name[0] == "x" and name[1:].isdigit():
            idx = int(name[1:])
            if idx >= nvars:
                raise ArityMismatchError(
                    f"line {tok.line}, col {tok.col}: variable {name} exceeds "
                    f"the declared M = {nvars - 1}")
            p.next()
            return MultiPoly.variable(nvars, idx, ftag)
        p.error(f"unexpected name {name!r} in polynomial")
    if tok.kind == "(":
        p.next()
        inner = _poly_expr(p, nvars, ftag)
        p.expect(")")
        return inner
    if tok.kind == "-":
        p.next()
        return -_poly_factor(p, nvars, ftag)
    p.error(f"unexpected token {tok.value!r} in polynomial")


def parse_polynomial(text: str, nvars: int, ftag: str = RATIONAL_FUNCTION,
                     line: int = 1) -> MultiPoly:
    """Parse one polynomial in x0..x{M}; raises ProblemSyntaxError with position."""
    p = _Parser(_tokenize(text, line), line)
    poly = _poly_expr(p, nvars, ftag)
    if not p.done():
        p.error("trailing input after polynomial")
    return poly


# -- entire curve expressions -------------------------------------------------

def _curve_expr(p: _Parser) -> nev.Expr:
    acc = _curve_term(p)
    while p.at("+") or p.at("-"):
        op = p.next().kind
        rhs = _curve_term(p)
        acc = nev.add(acc, rhs) if op == "+" else nev.sub(acc, rhs)
    return acc


def _curve_term(p: _Parser) -> nev.Expr:
    acc = _curve_factor(p)
    while p.at("*"):
        p.next()
        acc = nev.mul(acc, _curve_factor(p))
    return acc


def _curve_factor(p: _Parser) -> nev.Expr:
    base = _curve_atom(p)
    if p.at("^"):
        p.next()
        base = nev.pow_(base, _parse_nat(p))
    return base


def _curve_atom(p: _Parser) -> nev.Expr:
    tok = p.peek()
    if tok is None:
        p.error("unexpected end of curve expression")
    if tok.kind == "NUM":
        return nev.Const(_parse_rational(p))
    if tok.kind == "NAME":
        if tok.value == "z":
            p.next()
            return nev.Z()
        if tok.value == "exp":
            p.next()
            p.expect("(")
            inner = _curve_expr(p)
            p.expect(")")
            return nev.Exp(inner)
        p.error(f"unexpected name {tok.value!r} in curve expression")
    if tok.kind == "(":
        p.next()
        inner = _curve_expr(p)
        p.expect(")")
        return inner
    if tok.kind == "-":
        p.next()
        return nev.neg(_curve_factor(p))
    p.error(f"unexpected token {tok.value!r} in curve expression")


def parse_curve_expression(text: str, line: int = 1) -> nev.Expr:
    p = _Parser(_tokenize(text, line), line)
    expr = _curve_expr(p)
    if not p.done():
        p.error("trailing input after curve expression")
    return expr


# ---------------------------------------------------------------------------
# Problem files.
# ---------------------------------------------------------------------------

DEFAULT_OPTIONS = {
    "N": 12,
    "epsilon": 0.5,
    "r_min": 5.0,
    "r_max": 30.0,
    "r_steps": 26,
    "kmax": 10,
    "window": 3,
    "seed": 17,
    "samples": 512,
    "smax": 8,
    "trials": 5,
    "zero_tol": 1e-6,
    "residual_tol": 1e-8,
}


@dataclass
class ProblemSpec:
    M: int
    n: int
    generators: list[MultiPoly]
    hypersurfaces: list[MultiPoly]
    declared_degrees: list[int]
    curve: nev.EntireCurve
    options: dict

    @property
    def nvars(self) -> int:
        return self.M + 1

    def ideal(self) -> gg.HomogeneousIdeal:
        return gg.HomogeneousIdeal(self.nvars, self.generators)


def parse_problem(text: str) -> ProblemSpec:
    """Parse a problem file; errors carry line/column positions."""
    section = None
    M: int | None = None
    n: int | None = None
    gen_lines: list[tuple[str, int]] = []
    hyp_lines: list[tuple[int, str, int]] = []
    curve_lines: list[tuple[str, int]] = []
    options: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            if section not in ("variety", "hypersurfaces", "curve", "options"):
                raise ProblemSyntaxError(f"unknown section [{section}]", lineno, 1)
            continue
        if section is None:
            raise ProblemSyntaxError("content before any [section] header", lineno, 1)
        if section == "variety":
            if "=" in line and line.split("=", 1)[0].strip() in ("M", "n"):
                key, value = (s.strip() for s in line.split("=", 1))
                try:
                    ivalue = int(value)
                except ValueError:
                    raise ProblemSyntaxError(f"{key} must be an integer", lineno, 1)
                if key == "M":
                    M = ivalue
                else:
                    n = ivalue
            else:
                gen_lines.append((line, lineno))
        elif section == "hypersurfaces":
            head, sep, body = line.partition(":")
            head = head.strip().lower()
            if not sep or not head.startswith("degree"):
                raise ProblemSyntaxError(
                    "hypersurface lines look like `degree <d>: <polynomial>`",
                    lineno, 1)
            try:
                declared = int(head[len("degree"):].strip())
            except ValueError:
                raise ProblemSyntaxError("bad declared degree", lineno, 1)
            hyp_lines.append((declared, body.strip(), lineno))
        elif section == "curve":
            curve_lines.append((line, lineno))
        elif section == "options":
            if "=" not in line:
                raise ProblemSyntaxError("options are `key = value` lines", lineno, 1)
            key, value = (s.strip() for s in line.split("=", 1))
            try:
                options[key] = int(value)
            except ValueError:
                try:
                    options[key] = float(value)
                except ValueError:
                    options[key] = value
    if M is None:
        raise ProblemSyntaxError("missing `M = ...` in [variety]", 1, 1)
    if n is None:
        raise ProblemSyntaxError("missing `n = ...` in [variety]", 1, 1)
    nvars = M + 1

    generators = []
    for text_line, lineno in gen_lines:
        poly = parse_polynomial(text_line, nvars, RATIONAL, line=lineno)
        if poly.is_zero:
            continue
        if not poly.is_homogeneous:
            raise DegreeMismatchError(
                f"line {lineno}: variety generator {text_line!r} is inhomogeneous")
        generators.append(poly)

    hypersurfaces = []
    declared_degrees = []
    for declared, body, lineno in hyp_lines:
        poly = parse_polynomial(body, nvars, RATIONAL_FUNCTION, line=lineno)
        d = poly.degree
        if d is None:
            raise DegreeMismatchError(
                f"line {lineno}: hypersurface {body!r} is inhomogeneous")
        if d != declared:
            raise DegreeMismatchError(
                f"line {lineno}: declared degree {declared} but parsed degree {d}")
        hypersurfaces.append(poly)
        declared_degrees.append(declared)

    if len(curve_lines) != nvars:
        raise ArityMismatchError(
            f"curve needs {nvars} component lines (M+1), found {len(curve_lines)}")
    components = tuple(parse_curve_expression(t, line=ln) for t, ln in curve_lines)

    merged = dict(DEFAULT_OPTIONS)
    merged.update(options)
    curve = nev.EntireCurve(components=components,
                            variety_residual_tol=float(merged["residual_tol"]))
    return ProblemSpec(M=M, n=n, generators=generators,
                       hypersurfaces=hypersurfaces,
                       declared_degrees=declared_degrees, curve=curve,
                       options=merged)


def load_problem(path: str) -> ProblemSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_problem(fh.read())


# ---------------------------------------------------------------------------
# Reports.
# ---------------------------------------------------------------------------

@dataclass
class RunReport:
    command: str
    inputs_echo: dict
    results: dict
    warnings: list[str] = dataclass_field(default_factory=list)
    table: tuple[list[str], list[list]] | None = None
    table_sep: str = ","


def _echo(spec: ProblemSpec) -> dict:
    return {
        "M": spec.M,
        "n": spec.n,
        "variety": [str(g) for g in spec.generators],
        "hypersurfaces": [f"degree {d}: {q}" for d, q in
                          zip(spec.declared_degrees, spec.hypersurfaces)],
        "curve": [str(c) for c in spec.curve.components],
    }


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def emit_report(report: RunReport, fmt: str) -> bytes:
    """Deterministic serialization: json, csv (tabular commands), or text."""
    if fmt == "json":
        payload = {
            "command": report.command,
            "inputs": report.inputs_echo,
            "results": report.results,
            "warnings": report.warnings,
        }
        return (json.dumps(payload, indent=2, default=str, sort_keys=True)
                + "\n").encode()
    if fmt == "csv":
        if report.table is None:
            raise UnsupportedFormat(
                f"command {report.command!r} has no tabular payload; use json or text")
        header, rows = report.table
        sep = report.table_sep
        buf = io.StringIO()
        buf.write(sep.join(header) + "\n")
        for row in rows:
            buf.write(sep.join(_fmt(v) for v in row) + "\n")
        return buf.getvalue().encode()
    if fmt == "text":
        buf = io.StringIO()
        buf.write(f"== {report.command} ==\n")
        for key, value in report.inputs_echo.items():
            buf.write(f"{key}: {value}\n")
        buf.write("--\n")
        for key, value in report.results.items():
            buf.write(f"{key}: {value}\n")
        if report.table is not None:
            header, rows = report.table
            buf.write("--\n")
            buf.write(report.table_sep.join(header) + "\n")
            for row in rows:
                buf.write(report.table_sep.join(_fmt(v) for v in row) + "\n")
        for w in report.warnings:
            buf.write(f"warning: {w}\n")
        return buf.getvalue().encode()
    raise UnsupportedFormat(f"unsupported format {fmt!r}")


# ---------------------------------------------------------------------------
# Commands.
# ---------------------------------------------------------------------------

def _opt(spec: ProblemSpec, flags: dict, key: str, cast=None):
    value = flags.get(key)
    if value is None:
        value = spec.options.get(key, DEFAULT_OPTIONS.get(key))
    return cast(value) if (cast and value is not None) else value


def _radius_grid(spec, flags) -> list[float]:
    r_min = _opt(spec, flags, "r_min", float)
    r_max = _opt(spec, flags, "r_max", float)
    steps = _opt(spec, flags, "r_steps", int)
    if steps < 1 or r_max < r_min or r_min <= 1:
        raise PreconditionError("radius grid needs 1 < r_min <= r_max and steps >= 1")
    return [float(r) for r in np.linspace(r_min, r_max, steps)]


def _cross_check_dimension(spec: ProblemSpec, kmax: int, window: int):
    J = spec.ideal()
    dim_v, deg_v = gg.variety_invariants(J, kmax, window)
    if dim_v != spec.n:
        raise PreconditionError(
            f"declared n = {spec.n} but the Hilbert data gives dim V = {dim_v}")
    return J, dim_v, deg_v


def _normalized_targets(spec: ProblemSpec):
    d, Qs = normalize_degrees(spec.hypersurfaces)
    return d, Qs


def cmd_hilbert(spec: ProblemSpec, flags: dict) -> RunReport:
    kmax = _opt(spec, flags, "kmax", int)
    window = _opt(spec, flags, "window", int)
    J = spec.ideal()
    rec = gg.hilbert_record(J, kmax, window)
    results = {"values": {str(k): v for k, v in sorted(rec.values.items())}}
    warnings = []
    if rec.dim_v is None:
        warnings.append(f"NotStabilized: no constant difference tail within kmax={kmax}")
    else:
        results["n"] = rec.dim_v
        results["degV"] = rec.deg_v
        if rec.dim_v != spec.n:
            warnings.append(
                f"declared n = {spec.n} differs from computed dim V = {rec.dim_v}")
    table = (["k", "H"], [[k, rec.values[k]] for k in sorted(rec.values)])
    return RunReport("hilbert", _echo(spec), results, warnings, table)


def cmd_admissible(spec: ProblemSpec, flags: dict) -> RunReport:
    trials = _opt(spec, flags, "trials", int)
    smax = _opt(spec, flags, "smax", int)
    seed = _opt(spec, flags, "seed", int)
    J = spec.ideal()
    d, Qs = _normalized_targets(spec)
    reports = gg.admissibility_check(J, Qs, spec.n, trials=trials, s_max=smax,
                                     seed=seed)
    rows = []
    warnings = []
    all_admissible = True
    for rep in reports:
        entry = {
            "subset": list(rep.subset),
            "status": rep.status,
            "witnesses": [str(w) for w in rep.witnesses_tried],
            "succeeded": rep.witnesses_succeeded,
            "s_values": [c.s for c in rep.certificates],
        }
        if rep.evidence_value is not None:
            entry["evidence_value"] = rep.evidence_value
        if rep.warning:
            warnings.append(f"subset {rep.subset}: {rep.warning}")
        if rep.status != gg.ADMISSIBLE:
            all_admissible = False
        rows.append(entry)
    results = {"common_degree": d, "subsets": rows, "all_admissible": all_admissible}
    table = (["subset", "status", "succeeded", "s_values"],
             [["|".join(map(str, r["subset"])), r["status"], r["succeeded"],
               "|".join(map(str, r["s_values"]))] for r in rows])
    return RunReport("admissible", _echo(spec), results, warnings, table)


def _scan_and_table(spec: ProblemSpec, flags: dict, N: int):
    kmax = _opt(spec, flags, "kmax", int)
    window = _opt(spec, flags, "window", int)
    J = spec.ideal()
    d, Qs = _normalized_targets(spec)
    Qn = Qs[: spec.n]  # the filtration runs on the first n targets
    scan = filt.stabilization_scan(J, Qn, kmax, window)
    table = filt.build_table(J, Qn, N, n0=scan.n0, kappa=scan.kappa)
    return J, Qn, scan, table


def cmd_filtration(spec: ProblemSpec, flags: dict) -> RunReport:
    N = _opt(spec, flags, "N", int)
    J, Qn, scan, table = _scan_and_table(spec, flags, N)
    warnings = []
    if N % table.d != 0:
        warnings.append(f"N = {N} is not divisible by d = {table.d}; "
                        "tau0 semantics assume d | N")
    results = {
        "N": N, "d": table.d, "n": table.n,
        "n0": scan.n0, "c": scan.c, "c_prime": scan.c_prime,
        "m_min": scan.m_min, "kappa": scan.kappa,
        "hilbert_value": table.hilbert_value,
        "sum_m": table.total_m(),
        "tau_count": len(table.tau),
        "tau0_count": len(table.tau0),
    }
    header = ["I", "normI", "m", "inTau0"]
    rows = [["(" + ",".join(map(str, I)) + ")", filt.tuple_norm(I),
             table.cells[I].m, int(I in table.tau0)] for I in table.tau]
    report = RunReport("filtration", _echo(spec), results, warnings,
                       (header, rows))
    report.table_sep = ";"
    return report


def cmd_basis(spec: ProblemSpec, flags: dict) -> RunReport:
    N = _opt(spec, flags, "N", int)
    J, Qn, scan, table = _scan_and_table(spec, flags, N)
    products = filt.filtration_basis(table)
    results = {
        "N": N,
        "hilbert_value": table.hilbert_value,
        "basis_count": len(products),
        "independent_mod_ideal": True,
        "basis": [str(p) for p in products],
    }
    return RunReport("basis", _echo(spec), results)


def cmd_product(spec: ProblemSpec, flags: dict) -> RunReport:
    N = _opt(spec, flags, "N", int)
    J, Qn, scan, table = _scan_and_table(spec, flags, N)
    deg_v = gg.variety_invariants(J, _opt(spec, flags, "kmax", int),
                                  _opt(spec, flags, "window", int))[1]
    pd = filt.product_decomposition(table)
    results = {
        "N": N,
        "exponents": pd.exponents,
        "e": pd.e,
        "degree_p": pd.degree_p,
        "degree_identity": pd.degree_identity,
        "leading_ratio": pd.leading_ratio(deg_v, table.d, table.n),
        "p_factor_count": len(pd.p_factors),
    }
    return RunReport("product", _echo(spec), results)


def cmd_tf(spec: ProblemSpec, flags: dict) -> RunReport:
    samples = _opt(spec, flags, "samples", int)
    grid = _radius_grid(spec, flags)
    values = [nev.characteristic_T(spec.curve, r, samples=samples) for r in grid]
    results = {"r": grid, "Tf": values}
    return RunReport("tf", _echo(spec), results,
                     table=(["r", "Tf"], [[r, t] for r, t in zip(grid, values)]))


def cmd_zeros(spec: ProblemSpec, flags: dict) -> RunReport:
    target = flags.get("target")
    if target is None:
        target = 0
    target = int(target)
    if not 0 <= target < len(spec.hypersurfaces):
        raise PreconditionError(f"target index {target} out of range")
    r = flags.get("r")
    r = float(r) if r is not None else _opt(spec, flags, "r_max", float)
    # default to the multiplicity-safe width; --tol tightens it for simple zeros
    tol = _opt(spec, flags, "tol", float)
    if tol is None:
        tol = _opt(spec, flags, "zero_tol", float)
    g = nev.compose_form(spec.hypersurfaces[target], spec.curve)
    zl = nev.locate_zeros(g, r, tol=tol)
    rows = [[z.real, z.imag, m] for z, m in zl.zeros]
    results = {
        "target": target, "r": r, "count": zl.total(),
        "zeros": [{"re": z.real, "im": z.imag, "mult": m} for z, m in zl.zeros],
    }
    return RunReport("zeros", _echo(spec), results,
                     table=(["re", "im", "mult"], rows))


def _require_admissible(spec: ProblemSpec, flags: dict):
    rep = cmd_admissible(spec, flags)
    if not rep.results["all_admissible"]:
        bad = [r for r in rep.results["subsets"] if r["status"] != gg.ADMISSIBLE]
        raise PreconditionError(
            "system is not verified admissible: "
            + "; ".join(f"subset {r['subset']} {r['status']}" for r in bad))
    return rep


def _require_on_variety(spec: ProblemSpec):
    residual = nev.curve_residual(spec.generators, spec.curve)
    if residual > spec.curve.variety_residual_tol:
        raise PreconditionError(
            f"curve residual {residual:.3g} exceeds tolerance "
            f"{spec.curve.variety_residual_tol:.3g}: the curve does not lie on V")
    return residual


def cmd_smt(spec: ProblemSpec, flags: dict) -> RunReport:
    epsilon = _opt(spec, flags, "epsilon", float)
    grid = _radius_grid(spec, flags)
    zero_tol = _opt(spec, flags, "zero_tol", float)
    _cross_check_dimension(spec, _opt(spec, flags, "kmax", int),
                           _opt(spec, flags, "window", int))
    adm = _require_admissible(spec, flags)
    residual = _require_on_variety(spec)
    sweep = nev.smt_margin(spec.curve, spec.hypersurfaces, spec.n, epsilon,
                           grid, zero_tol=zero_tol, admissibility_checked=True)
    q = sweep.q
    header = (["r", "Tf"] + [f"Nf_{j + 1}" for j in range(q)]
              + ["margin", "lemma23_diag"])
    rows = []
    for i, r in enumerate(sweep.radii):
        rows.append([r, sweep.Tf[i]] + [sweep.Nf[j][i] for j in range(q)]
                    + [sweep.margins[i], sweep.floor_values[i]])
    warnings = list(sweep.warnings)
    for r in sweep.violations:
        warnings.append(f"margin violation at r = {r}")
    if sweep.defect_sum > spec.n + 1:
        warnings.append(
            f"defect sum {sweep.defect_sum:.4f} exceeds n+1 = {spec.n + 1}")
    results = {
        "epsilon": epsilon,
        "q": q,
        "n": sweep.n,
        "degrees": sweep.degrees,
        "curve_residual": residual,
        "zero_counts": sweep.zero_counts,
        "defects": sweep.defects,
        "defect_sum": sweep.defect_sum,
        "violations": sweep.violations,
        "jensen_max": sweep.jensen_max,
        "fmt_constants": sweep.fmt_constants,
        "fmt_excess": sweep.fmt_excess,
        "floor_fit": {"c1": sweep.floor_fit.c1, "c2": sweep.floor_fit.c2,
                      "holds": sweep.floor_fit.holds},
        "admissibility": adm.results,
    }
    return RunReport("smt", _echo(spec), results, warnings, (header, rows))


def cmd_defects(spec: ProblemSpec, flags: dict) -> RunReport:
    grid = _radius_grid(spec, flags)
    zero_tol = _opt(spec, flags, "zero_tol", float)
    q = len(spec.hypersurfaces)
    defects = []
    traces = {}
    for j in range(q):
        delta, trace = nev.defect_estimate(spec.curve, spec.hypersurfaces[j],
                                           grid, zero_tol=zero_tol)
        defects.append(delta)
        traces[f"target_{j + 1}"] = [[r, v] for r, v in trace]
    results = {
        "defects": defects,
        "defect_sum": sum(defects),
        "n_plus_1": spec.n + 1,
        "traces": traces,
    }
    table = (["target", "defect"],
             [[j + 1, defects[j]] for j in range(q)])
    return RunReport("defects", _echo(spec), results, table=table)


COMMANDS = {
    "hilbert": cmd_hilbert,
    "admissible": cmd_admissible,
    "filtration": cmd_filtration,
    "basis": cmd_basis,
    "product": cmd_product,
    "tf": cmd_tf,
    "zeros": cmd_zeros,
    "smt": cmd_smt,
    "defects": cmd_defects,
}


def run_command(cmd: str, spec: ProblemSpec, flags: dict) -> RunReport:
    if cmd not in COMMANDS:
        raise UnknownCommand(f"unknown command {cmd!r}; "
                             f"expected one of {sorted(COMMANDS)}")
    return COMMANDS[cmd](spec, flags)


# ---------------------------------------------------------------------------
# Entry point.
# ---------------------------------------------------------------------------

def _build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nevlab",
        description="Exact graded-algebra checks and growth-inequality sweeps "
                    "for curves meeting moving hypersurface targets.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--input", required=True, help="problem file path")
    ap.add_argument("--N", type=int, default=None)
    ap.add_argument("--epsilon", type=float, default=None)
    ap.add_argument("--r-min", dest="r_min", type=float, default=None)
    ap.add_argument("--r-max", dest="r_max", type=float, default=None)
    ap.add_argument("--r-steps", dest="r_steps", type=int, default=None)
    ap.add_argument("--kmax", type=int, default=None)
    ap.add_argument("--window", type=int, default=None)
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--samples", type=int, default=None)
    ap.add_argument("--smax", type=int, default=None)
    ap.add_argument("--trials", type=int, default=None)
    ap.add_argument("--target", type=int, default=None)
    ap.add_argument("--r", type=float, default=None)
    ap.add_argument("--tol", type=float, default=None)
    ap.add_argument("--zero-tol", dest="zero_tol", type=float, default=None)
    ap.add_argument("--format", choices=("json", "csv", "text"), default="text")
    ap.add_argument("--out", default=None)
    return ap


def main(argv=None) -> int:
    args = _build_argparser().parse_args(argv)
    flags = {k: getattr(args, k) for k in
             ("N", "epsilon", "r_min", "r_max", "r_steps", "kmax", "window",
              "seed", "samples", "smax", "trials", "target", "r", "tol",
              "zero_tol")}
    try:
        spec = load_problem(args.input)
    except (ProblemSyntaxError, DegreeMismatchError, ArityMismatchError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        report = run_command(args.command, spec, flags)
        payload = emit_report(report, args.format)
    except (PreconditionError, gg.NotStabilized, InhomogeneousInput,
            PoleAtPoint, nev.IdenticallyZero, filt.DegreeMismatch) as exc:
        print(f"precondition failure: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (nev.OverflowGuard, nev.WindingAmbiguous) as exc:
        print(f"numeric guard: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UnknownCommand, UnsupportedFormat) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PARSE
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload.decode())
    if args.command == "admissible" and not report.results["all_admissible"]:
        return EXIT_PRECONDITION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

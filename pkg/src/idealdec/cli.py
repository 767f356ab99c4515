"""Command-line front end: ideal-file parsing, pipeline invocation, and
text / JSON reports.

File grammar: a `ring Q[X,Y,Z]` header naming the variables, then one
generator expression per line (`#` comments and blank lines allowed).
Expressions use + - * ^ ( ) with exact rational literals like 1/2.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from .arith import QQ
from .errors import (IdealDecError, InvalidPrimeOverride, ParseError,
                     RetryExhausted, UnsupportedDimension)
from .groebner import Ideal
from .modred import primitivize
from .mpoly import MultiPoly, TermOrder
from .pipeline import DecompositionReport, PipelineConfig, decompose

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
                    r"|(?P<op>[-+*^()/]))")
_HEADER = re.compile(r"^\s*ring\s+Q\s*\[\s*([^\]]*)\]\s*$")


@dataclass(frozen=True)
class IdealFile:
    """Parsed ideal file: the variable names and the generators."""

    names: tuple
    generators: tuple

    def to_ideal(self, c=1):
        return Ideal(tuple(self.generators), QQ, len(self.names), c)

    def render(self):
        lines = [f"ring Q[{','.join(self.names)}]"]
        order = TermOrder.deglex(len(self.names))
        for g in self.generators:
            lines.append(g.to_text(self.names, order))
        return "\n".join(lines) + "\n"


class _Tokens:
    def __init__(self, text, line_no):
        self.items = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                stripped = text[pos:].lstrip()
                if not stripped:
                    break
                raise ParseError(f"bad character {stripped[0]!r}",
                                 line=line_no, column=pos + 1)
            if m.lastgroup is not None:
                self.items.append((m.lastgroup, m.group(m.lastgroup),
                                   m.start(m.lastgroup) + 1))
            pos = m.end()
        self.line = line_no
        self.i = 0

    def peek(self):
        return self.items[self.i] if self.i < len(self.items) else (None, None, None)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok


class _ExprParser:
    def __init__(self, tokens, names):
        self.t = tokens
        self.names = {nm: i for i, nm in enumerate(names)}
        self.n = len(names)

    def parse(self):
        poly = self.expr()
        kind, val, col = self.t.peek()
        if kind is not None:
            raise ParseError(f"unexpected {val!r}", line=self.t.line, column=col)
        return poly

    def expr(self):
        kind, val, _ = self.t.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.t.next()
            negate = val == "-"
        poly = self.term()
        if negate:
            poly = -poly
        while True:
            kind, val, _ = self.t.peek()
            if kind == "op" and val in "+-":
                self.t.next()
                rhs = self.term()
                poly = poly - rhs if val == "-" else poly + rhs
            else:
                return poly

    def term(self):
        poly = self.power()
        while True:
            kind, val, _ = self.t.peek()
            if kind == "op" and val == "*":
                self.t.next()
                poly = poly * self.power()
            else:
                return poly

    def power(self):
        base = self.atom()
        kind, val, col = self.t.peek()
        if kind == "op" and val == "^":
            self.t.next()
            kind, ex, col = self.t.next()
            if kind != "num":
                raise ParseError("exponent must be an integer",
                                 line=self.t.line, column=col)
            return base ** int(ex)
        return base

    def atom(self):
        kind, val, col = self.t.next()
        if kind == "num":
            num = int(val)
            kind2, val2, _ = self.t.peek()
            if kind2 == "op" and val2 == "/":
                self.t.next()
                kind3, den, col3 = self.t.next()
                if kind3 != "num" or int(den) == 0:
                    raise ParseError("bad rational literal",
                                     line=self.t.line, column=col3)
                return MultiPoly.constant(Fraction(num, int(den)), QQ, self.n)
            return MultiPoly.constant(Fraction(num), QQ, self.n)
        if kind == "name":
            if val not in self.names:
                raise ParseError(f"unknown variable {val!r}",
                                 line=self.t.line, column=col)
            return MultiPoly.variable(self.names[val], QQ, self.n)
        if kind == "op" and val == "(":
            poly = self.expr()
            kind2, val2, col2 = self.t.next()
            if val2 != ")":
                raise ParseError("missing ')'", line=self.t.line, column=col2)
            return poly
        if kind == "op" and val == "-":
            return -self.atom()
        raise ParseError(f"unexpected {val!r}" if val else "unexpected end of line",
                         line=self.t.line, column=col)


def parse_ideal_file(text: str) -> IdealFile:
    lines = text.splitlines()
    names = None
    gens = []
    for no, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if names is None:
            m = _HEADER.match(line)
            if not m:
                raise ParseError("expected 'ring Q[...]' header", line=no)
            names = tuple(s.strip() for s in m.group(1).split(",") if s.strip())
            if not names or len(set(names)) != len(names):
                raise ParseError("variables must be distinct identifiers", line=no)
            for nm in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", nm):
                    raise ParseError(f"bad variable name {nm!r}", line=no)
            continue
        poly = _ExprParser(_Tokens(line, no), names).parse()
        if poly.is_zero():
            raise ParseError("zero generator", line=no)
        gens.append(primitivize(poly))
    if names is None:
        raise ParseError("empty file: missing ring header", line=1)
    if not gens:
        raise ParseError("no generators", line=len(lines))
    return IdealFile(names, tuple(gens))


def parse_ideal(text: str, c=1) -> Ideal:
    """Parse an ideal file into an Ideal with primitivized generators."""
    return parse_ideal_file(text).to_ideal(c)


# ---------------------------------------------------------------------------
# report rendering


def _mono_text(exps, names):
    parts = [f"{names[i]}^{k}" if k > 1 else names[i]
             for i, k in enumerate(exps) if k]
    return "*".join(parts) if parts else "1"


def _frac_str(x):
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def report_to_json_dict(report: DecompositionReport, names):
    order = TermOrder.deglex(len(names))
    comps = []
    for c in report.components:
        if c.initial_ideal is not None:
            init = [{"exponents": list(e), "text": _mono_text(e, names)}
                    for e in sorted(c.initial_ideal.gens, key=order.key,
                                    reverse=True)]
        else:
            init = []
        hv = list(c.hilbert.values) if c.hilbert else []
        hp = [_frac_str(v) for v in c.hilbert.polynomial] if c.hilbert else []
        iso = []
        if c.isolating_polys_mod_p:
            for fpoly in c.isolating_polys_mod_p:
                iso.append({
                    "text": fpoly.to_text(names, order),
                    "terms": [{"exponents": list(e), "coeff": int(v)}
                              for e, v in sorted(fpoly.terms.items())],
                })
        comps.append({
            "rational_degree": c.rational_degree,
            "multiplicity": c.multiplicity,
            "absolute_count": c.absolute_count,
            "absolute_degree": c.absolute_degree,
            "prime": c.prime,
            "initial_ideal": init,
            "hilbert_values": hv,
            "hilbert_polynomial": hp,
            "isolating_polys_mod_p": iso,
        })
    change = {
        "matrix": [[_int_or_str(v) for v in row] for row in report.coord_change.matrix],
        "translation": [_int_or_str(v) for v in report.coord_change.translation],
    }
    return {
        "s": report.s,
        "components": comps,
        "seed": report.seed,
        "coord_change": change,
        "total_degree": report.total_degree,
    }


def _int_or_str(v):
    f = Fraction(v)
    return int(f) if f.denominator == 1 else str(f)


def render_json(report, names):
    return json.dumps(report_to_json_dict(report, names), indent=2) + "\n"


def render_text(report, names):
    order = TermOrder.deglex(len(names))
    out = [f"s = {report.s} rational component(s); "
           f"total projected degree {report.total_degree}; seed {report.seed}"]
    for idx, c in enumerate(report.components, start=1):
        out.append(
            f"component {idx}: rational degree {c.rational_degree}, "
            f"multiplicity {c.multiplicity}, r = {c.absolute_count}, "
            f"absolute degree {c.absolute_degree}, prime {c.prime}")
        if c.initial_ideal is not None:
            monos = ", ".join(_mono_text(e, names)
                              for e in sorted(c.initial_ideal.gens,
                                              key=order.key, reverse=True))
            out.append(f"  initial ideal: ({monos})")
            out.append("  affine Hilbert function: "
                       + " ".join(str(v) for v in c.hilbert.values))
            out.append("  Hilbert polynomial coefficients: "
                       + " ".join(_frac_str(v) for v in c.hilbert.polynomial))
        if c.isolating_polys_mod_p:
            out.append("  isolating polynomials mod p:")
            for fpoly in c.isolating_polys_mod_p:
                out.append(f"    {fpoly.to_text(names, order)}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# driver


def build_parser():
    ap = argparse.ArgumentParser(
        prog="decompose",
        description="Modular decomposition data for an equidimensional curve ideal")
    ap.add_argument("--input", required=True, help="ideal file path")
    ap.add_argument("--dim", type=int, default=1,
                    help="declared equidimensional dimension (must be 1)")
    ap.add_argument("--seed", type=int, default=None,
                    help="64-bit seed (falls back to IDEALDEC_SEED, then 0)")
    ap.add_argument("--format", choices=("json", "text"), default="text")
    ap.add_argument("--order", choices=("deglex", "degrevlex"), default="deglex")
    ap.add_argument("--backend", choices=("groebner", "resultant", "auto"),
                    default="auto")
    ap.add_argument("--prime-override", type=int, default=None)
    ap.add_argument("--max-retries", type=int, default=5)
    ap.add_argument("--coeff-bound", type=int, default=10)
    return ap


def run(argv) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    seed = args.seed
    if seed is None:
        env = os.environ.get("IDEALDEC_SEED", "").strip()
        seed = int(env) if env else 0
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        ifile = parse_ideal_file(text)
        if args.dim != 1:
            raise UnsupportedDimension(f"--dim must be 1, got {args.dim}")
        cfg = PipelineConfig(
            seed=seed, coeff_bound=args.coeff_bound,
            max_coord_rounds=args.max_retries, order=args.order,
            backend=args.backend, prime_override=args.prime_override)
        report = decompose(ifile.to_ideal(c=1), cfg)
    except RetryExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        for line in exc.trace:
            print(f"  trace: {line}", file=sys.stderr)
        return 2
    except (ParseError, UnsupportedDimension, InvalidPrimeOverride,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except IdealDecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        sys.stdout.write(render_json(report, ifile.names))
    else:
        sys.stdout.write(render_text(report, ifile.names))
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

"""Definition-file format for user-supplied maps and ternary systems.

A definition file declares either a ternary operation or a two-component map
as rational-function expressions, so external systems can be verified without
touching the code.  Format (UTF-8, LF or CRLF, ``#`` starts a comment)::

    kind: ternary                # or: ybmap
    params: a1, b1               # first factor's components, then second's
    vars: a, b, c                # exactly 3 for ternary, exactly 2 for ybmap
    quasigroup: division         # optional builtin context
    mu = (a1*a*(b-c) + b1*c*(a-b)) / (a1*(b-c) + b1*(a-b))

A ybmap file instead supplies the two bodies ``u = ...`` and ``v = ...``.
The params line must list an even number of symbols: the first half binds to
the first factor's parameter vector and the second half to the second
factor's, so the parameter arity is half the declared count.

Expression grammar (whitespace insignificant)::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ['^' ['-'] digits]
    atom   := digits | symbol | '(' expr ')' | '-' atom

Subtraction and division associate to the left.  Exponents are integer
literals (negative allowed).  A bare unary minus must not be raised to a
power: write ``(-x)^2`` or ``-(x^2)``.  There are no rational literals;
write quotients such as ``1/2``.  By convention ``x^0`` evaluates to 1,
including ``0^0 = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .carrier import scalar_carrier
from .core import ParametricTernarySystem, ParametricYBMap
from .errors import (ArityMismatchError, ParseError, UnboundSymbolError,
                     UndeclaredSymbolError)

# --------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


Expression = object  # any of the node types above


def evaluate(expr, bindings: dict):
    """Exact evaluation under the given symbol bindings.

    Integer constants stay plain ints and coerce against field elements;
    a constant quotient like 1/2 becomes an exact ``Fraction``.  Raises
    ``ZeroDivisionError`` on poles and :class:`UnboundSymbolError` on free
    symbols.
    """
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Sym):
        try:
            return bindings[expr.name]
        except KeyError:
            raise UnboundSymbolError(expr.name) from None
    if isinstance(expr, Neg):
        return -evaluate(expr.operand, bindings)
    if isinstance(expr, Pow):
        base = evaluate(expr.base, bindings)
        if expr.exponent == 0:
            return 1  # includes 0^0 = 1
        if isinstance(base, int):
            base = Fraction(base)
        return base ** expr.exponent
    if isinstance(expr, BinOp):
        lhs = evaluate(expr.left, bindings)
        rhs = evaluate(expr.right, bindings)
        if expr.op == "+":
            return lhs + rhs
        if expr.op == "-":
            return lhs - rhs
        if expr.op == "*":
            return lhs * rhs
        if isinstance(lhs, int) and isinstance(rhs, int):
            return Fraction(lhs, rhs)  # raises ZeroDivisionError on rhs == 0
        return lhs / rhs
    raise TypeError(f"not an expression node: {expr!r}")


def symbols_of(expr) -> set:
    if isinstance(expr, Sym):
        return {expr.name}
    if isinstance(expr, Neg):
        return symbols_of(expr.operand)
    if isinstance(expr, Pow):
        return symbols_of(expr.base)
    if isinstance(expr, BinOp):
        return symbols_of(expr.left) | symbols_of(expr.right)
    return set()


# --------------------------------------------------------------------------
# printer (canonical form; parse(print(parse(t))) == parse(t))

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def print_expression(expr) -> str:
    return _print(expr, 0)


def _print(expr, parent_prec):
    if isinstance(expr, Const):
        return str(expr.value)
    if isinstance(expr, Sym):
        return expr.name
    if isinstance(expr, Neg):
        inner = _print(expr.operand, 3)
        text = f"-{inner}"
        return f"({text})" if parent_prec > 0 else text
    if isinstance(expr, Pow):
        base = _print(expr.base, 4)
        if not isinstance(expr.base, (Const, Sym)):
            base = f"({base})" if not base.startswith("(") else base
        return f"{base}^{expr.exponent}"
    if isinstance(expr, BinOp):
        prec = _PREC[expr.op]
        left = _print(expr.left, prec)
        # - and / are left-associative: parenthesize right subtrees of equal
        # precedence
        right = _print(expr.right, prec + 1)
        text = f"{left} {expr.op} {right}"
        return f"({text})" if parent_prec > prec else text
    raise TypeError(f"not an expression node: {expr!r}")


# --------------------------------------------------------------------------
# tokenizer / parser

_PUNCT = set("+-*/^(),:=")


@dataclass
class _Token:
    kind: str  # num | ident | punct | end
    text: str
    line: int
    col: int


def _tokenize_expr(text: str, line_no: int):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r":
            i += 1
            continue
        if ch == "#":
            break
        col = i + 1
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("num", text[i:j], line_no, col))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], line_no, col))
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(_Token("punct", ch, line_no, col))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line_no, col,
                         expected=("digit", "symbol", "operator"))
    tokens.append(_Token("end", "", line_no, len(text) + 1))
    return tokens


class _ExprParser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_punct(self, text):
        tok = self.peek()
        if tok.kind == "punct" and tok.text == text:
            return self.take()
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}",
                         tok.line, tok.col, expected=(text,))

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col,
                             expected=("end of line",))
        return node

    def expr(self):
        node = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "punct" and tok.text in "+-":
                self.take()
                node = BinOp(tok.text, node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "punct" and tok.text in "*/":
                self.take()
                node = BinOp(tok.text, node, self.factor())
            else:
                return node

    def factor(self):
        node, bare_neg = self.atom()
        tok = self.peek()
        if tok.kind == "punct" and tok.text == "^":
            if bare_neg:
                raise ParseError(
                    "a bare unary minus cannot be raised to a power; "
                    "write (-x)^k or -(x^k)", tok.line, tok.col)
            self.take()
            sign = 1
            tok = self.peek()
            if tok.kind == "punct" and tok.text == "-":
                self.take()
                sign = -1
            tok = self.peek()
            if tok.kind != "num":
                raise ParseError("exponent must be an integer literal",
                                 tok.line, tok.col, expected=("digits",))
            self.take()
            return Pow(node, sign * int(tok.text))
        return node

    def atom(self):
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            return Const(int(tok.text)), False
        if tok.kind == "ident":
            self.take()
            return Sym(tok.text), False
        if tok.kind == "punct" and tok.text == "(":
            self.take()
            node = self.expr()
            self.expect_punct(")")
            return node, False
        if tok.kind == "punct" and tok.text == "-":
            self.take()
            inner, _ = self.atom()
            return Neg(inner), True
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}",
                         tok.line, tok.col,
                         expected=("digits", "symbol", "(", "-"))


def parse_expression(text: str, line_no: int = 1):
    return _ExprParser(_tokenize_expr(text, line_no)).parse()


# --------------------------------------------------------------------------
# definition files


@dataclass(frozen=True)
class DefinitionFile:
    kind: str                    # "ternary" | "ybmap"
    param_names: tuple
    var_names: tuple
    bodies: dict                 # name -> Expression
    quasigroup: Optional[str] = None

    @property
    def param_arity(self) -> int:
        return len(self.param_names) // 2


_HEADER_KEYS = ("kind", "params", "vars", "quasigroup")
_BODY_NAMES = {"ternary": ("mu",), "ybmap": ("u", "v")}


def _is_identifier(s: str) -> bool:
    return s.isidentifier() and s.isascii()


def parse(text: str) -> DefinitionFile:
    """Parse a complete definition file; see the module docstring."""
    header: dict = {}
    bodies: dict = {}
    kind = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line and (":" not in line or line.index("=") < line.index(":")):
            name, _, body = line.partition("=")
            name = name.strip()
            if not _is_identifier(name):
                raise ParseError(f"bad body name {name!r}", line_no, 1)
            if name in bodies:
                raise ParseError(f"duplicate body {name!r}", line_no, 1)
            offset = raw.index("=") + 1
            expr_text = " " * offset + raw[offset:]
            bodies[name] = parse_expression(expr_text, line_no)
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in _HEADER_KEYS:
            raise ParseError(f"expected a header line or a body assignment, "
                             f"got {line!r}", line_no, 1,
                             expected=_HEADER_KEYS + ("name = expression",))
        if key in header:
            raise ParseError(f"duplicate header key {key!r}", line_no, 1)
        header[key] = value.strip()

    kind = header.get("kind")
    if kind not in ("ternary", "ybmap"):
        raise ParseError("missing or invalid 'kind:' line (ternary|ybmap)",
                         1, 1, expected=("ternary", "ybmap"))
    for required in ("params", "vars"):
        if required not in header:
            raise ParseError(f"missing '{required}:' line", 1, 1)

    def split_names(value, what):
        names = tuple(s.strip() for s in value.split(",") if s.strip())
        for s in names:
            if not _is_identifier(s):
                raise ParseError(f"bad {what} name {s!r}", 1, 1)
        if len(set(names)) != len(names):
            raise ParseError(f"duplicate {what} names", 1, 1)
        return names

    params = split_names(header["params"], "parameter")
    varnames = split_names(header["vars"], "variable")

    if len(params) % 2 != 0:
        raise ArityMismatchError(
            f"params must pair into two factor vectors; got {len(params)} names")
    expected_vars = 3 if kind == "ternary" else 2
    if len(varnames) != expected_vars:
        raise ParseError(f"{kind} files declare exactly {expected_vars} "
                         f"variables; got {len(varnames)}", 1, 1)

    needed = _BODY_NAMES[kind]
    missing = [b for b in needed if b not in bodies]
    if missing:
        raise ParseError(f"missing body {missing[0]!r} for kind {kind}", 1, 1)
    extra = [b for b in bodies if b not in needed]
    if extra:
        raise ParseError(f"unexpected body {extra[0]!r} for kind {kind}", 1, 1)

    declared = set(params) | set(varnames)
    for name, expr in bodies.items():
        undeclared = symbols_of(expr) - declared
        if undeclared:
            raise UndeclaredSymbolError(
                f"body {name!r} uses undeclared symbol "
                f"{sorted(undeclared)[0]!r}", 1, 1)

    return DefinitionFile(kind=kind, param_names=params, var_names=varnames,
                          bodies=bodies, quasigroup=header.get("quasigroup"))


def parse_file(path) -> DefinitionFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def print_definition(df: DefinitionFile) -> str:
    """Canonical text form; parsing it back yields an equal DefinitionFile."""
    lines = [f"kind: {df.kind}",
             f"params: {', '.join(df.param_names)}",
             f"vars: {', '.join(df.var_names)}"]
    if df.quasigroup:
        lines.append(f"quasigroup: {df.quasigroup}")
    for name in _BODY_NAMES[df.kind]:
        lines.append(f"{name} = {print_expression(df.bodies[name])}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# adapters to evaluable objects

_NONZERO_CONTEXTS = {"multiplicative", "division"}


def _bind(df: DefinitionFile, alpha, beta, values):
    arity = df.param_arity
    first = (alpha,) if arity == 1 else tuple(alpha)
    second = (beta,) if arity == 1 else tuple(beta)
    bindings = dict(zip(df.param_names[:arity], first))
    bindings.update(zip(df.param_names[arity:], second))
    bindings.update(zip(df.var_names, values))
    return bindings


def to_ternary(df: DefinitionFile, name: str = "dsl-ternary") -> ParametricTernarySystem:
    if df.kind != "ternary":
        raise ValueError("definition file is not a ternary")
    mu = df.bodies["mu"]
    nonzero = df.quasigroup in _NONZERO_CONTEXTS

    def func(alpha, beta, a, b, c):
        return evaluate(mu, _bind(df, alpha, beta, (a, b, c)))

    return ParametricTernarySystem(
        name=name, param_arity=df.param_arity, func=func,
        carrier=scalar_carrier(1, nonzero=nonzero), source="DSL")


def to_yb_map(df: DefinitionFile, name: str = "dsl-map") -> ParametricYBMap:
    if df.kind != "ybmap":
        raise ValueError("definition file is not a ybmap")
    u_expr, v_expr = df.bodies["u"], df.bodies["v"]
    nonzero = df.quasigroup in _NONZERO_CONTEXTS

    def func(x, alpha, y, beta):
        bindings = _bind(df, alpha, beta, (x, y))
        return evaluate(u_expr, bindings), evaluate(v_expr, bindings)

    return ParametricYBMap(
        name=name, dim=1, param_arity=df.param_arity, func=func,
        carrier=scalar_carrier(1, nonzero=nonzero), source="DSL")

"""
Dirac-notation input.

Grammar (ASCII, whitespace insignificant)::

    expr   := [sign] term { ("+" | "-") term }
    term   := [coeff ["*"]] factor { ["*" | "(x)"] factor }
    factor := ket | "(" expr ")"
    ket    := "|" (bits | "+" | "-") ">"
    coeff  := scalar { ("*" | "/") scalar | scalar }
    scalar := number | "sqrt(" number ")" | "i" | "w" ["^" integer]
            | "(" [sign] coeff { ("+" | "-") coeff } ")"

``w`` is ``exp(2 pi i / 3)``; ``|+>`` and ``|->`` are ``(|0> +- |1>)/sqrt(2)``.
A parenthesised group is a factor when it contains a ket and a scalar
otherwise.  Coefficients stay exact (sympy) until the final conversion to
doubles.

>>> evaluate(parse("1/sqrt(2)(|00> + |11>)")).amps.round(3)
array([0.707+0.j, 0.   +0.j, 0.   +0.j, 0.707+0.j])
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np
import sympy

from .errors import BadPermutation, MixedArity, NotNormalized, SegreCubeError, ZeroState
from .state import StateVector, from_amplitudes

OMEGA = sympy.Rational(-1, 2) + sympy.sqrt(3) * sympy.I / 2
_HALF_SQRT2 = sympy.sqrt(2) / 2
EVAL_NORM_TOL = 1e-9


class ParseError(SegreCubeError, ValueError):
    def __init__(self, text: str, position: int, expected: str, found: str):
        self.text = text
        self.position = position
        self.expected = expected
        self.found = found
        line = text.count("\n", 0, position) + 1
        col = position - (text.rfind("\n", 0, position) + 1) + 1
        self.line, self.col = line, col
        super().__init__(f"{line}:{col} expected {expected} found {found}")


# --- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class BasisKet:
    bits: str


@dataclass(frozen=True)
class NamedKet:
    sign: str  # "+" or "-"


@dataclass(frozen=True)
class Tensor:
    factors: tuple


@dataclass(frozen=True)
class Scale:
    coeff: sympy.Expr
    node: object


@dataclass(frozen=True)
class Sum:
    terms: tuple  # (sign, node) pairs, sign in {+1, -1}


Node = Union[BasisKet, NamedKet, Tensor, Scale, Sum]


@dataclass(frozen=True)
class KetExpression:
    text: str
    ast: Node

    def amplitudes(self) -> tuple[int, dict[int, sympy.Expr]]:
        """Exact ``(n, {index: amplitude})`` with zero amplitudes dropped."""
        n, amps = _expand(self.ast)
        out = {}
        for idx in sorted(amps):
            value = sympy.expand(amps[idx])
            if not _is_zero(value):
                out[idx] = value
        return n, out

    @property
    def n(self) -> int:
        return _expand(self.ast)[0]


# --- lexer -----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<tensor>\(x\))
  | (?P<ket>\|[^>]*>)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<sqrt>sqrt)
  | (?P<i>i)
  | (?P<w>w)
  | (?P<op>[()+\-*/^])
    """,
    re.VERBOSE,
)

_OP_KIND = {"(": "lparen", ")": "rparen", "+": "plus", "-": "minus", "*": "star", "/": "slash", "^": "caret"}

_DESCRIBE = {
    "ket": "ket", "num": "number", "sqrt": "'sqrt'", "i": "'i'", "w": "'w'", "tensor": "'(x)'",
    "lparen": "'('", "rparen": "')'", "plus": "'+'", "minus": "'-'", "star": "'*'",
    "slash": "'/'", "caret": "'^'", "eof": "end of input",
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens, pos = [], 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None and text[pos] == "|":
            raise ParseError(text, len(text), "'>' closing the ket", _DESCRIBE["eof"])
        if m is None:
            raise ParseError(text, pos, "ket, number, operator or parenthesis", repr(text[pos]))
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "ket":
            body = lexeme[1:-1]
            if not (body in ("+", "-") or (body and set(body) <= {"0", "1"})):
                raise ParseError(text, pos + 1, "bitstring of 0/1, '+' or '-'", repr(body))
        if kind == "op":
            kind = _OP_KIND[lexeme]
        if kind != "ws":
            tokens.append(Token(kind, lexeme, pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


# --- parser ----------------------------------------------------------------

_SCALAR_START = {"num", "sqrt", "i", "w"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self._paren_has_ket = self._scan_parens()

    def _scan_parens(self) -> dict[int, bool]:
        """Map each '(' token index to whether a ket occurs before its ')'."""
        found, stack = {}, []
        for idx, tok in enumerate(self.tokens):
            if tok.kind == "lparen":
                stack.append(idx)
                found[idx] = False
            elif tok.kind == "rparen" and stack:
                stack.pop()
            elif tok.kind == "ket":
                for open_idx in stack:
                    found[open_idx] = True
        return found

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def fail(self, expected: str):
        tok = self.tok
        found = _DESCRIBE["eof"] if tok.kind == "eof" else repr(tok.text)
        raise ParseError(self.text, tok.pos, expected, found)

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.fail(_DESCRIBE[kind])
        return self.advance()

    def _starts_scalar(self, offset: int = 0) -> bool:
        idx = self.i + offset
        tok = self.tokens[idx]
        if tok.kind in _SCALAR_START:
            return True
        return tok.kind == "lparen" and not self._paren_has_ket.get(idx, False)

    def _starts_factor(self, offset: int = 0) -> bool:
        idx = self.i + offset
        tok = self.tokens[idx]
        return tok.kind == "ket" or (tok.kind == "lparen" and self._paren_has_ket.get(idx, False))

    # grammar rules

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "eof":
            self.fail("'+', '-' or end of input")
        return node

    def expr(self) -> Node:
        sign = 1
        if self.tok.kind in ("plus", "minus"):
            sign = -1 if self.advance().kind == "minus" else 1
        terms = [(sign, self.term())]
        while self.tok.kind in ("plus", "minus"):
            sign = -1 if self.advance().kind == "minus" else 1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self) -> Node:
        coeff = None
        if self._starts_scalar():
            coeff = self.coeff()
            if self.tok.kind == "star":
                self.advance()
        factors = [self.factor()]
        while True:
            if self.tok.kind in ("star", "tensor"):
                self.advance()
                factors.append(self.factor())
            elif self._starts_factor():
                factors.append(self.factor())
            else:
                break
        node = factors[0] if len(factors) == 1 else Tensor(tuple(factors))
        return node if coeff is None else Scale(coeff, node)

    def factor(self) -> Node:
        tok = self.tok
        if tok.kind == "ket":
            self.advance()
            body = tok.text[1:-1]
            return NamedKet(body) if body in ("+", "-") else BasisKet(body)
        if self._starts_factor():
            self.advance()
            node = self.expr()
            self.expect("rparen")
            return node
        self.fail("ket or '('")

    def coeff(self) -> sympy.Expr:
        value = self.scalar()
        while True:
            if self.tok.kind == "slash":
                slash = self.advance()
                divisor = self.scalar()
                if divisor == 0:
                    raise ParseError(self.text, slash.pos, "nonzero divisor", "0")
                value = value / divisor
            elif self.tok.kind == "star" and self._starts_scalar(1):
                self.advance()
                value = value * self.scalar()
            elif self._starts_scalar():
                value = value * self.scalar()
            else:
                return value

    def scalar(self) -> sympy.Expr:
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return sympy.Rational(tok.text)
        if tok.kind == "sqrt":
            self.advance()
            self.expect("lparen")
            radicand = sympy.Rational(self.expect("num").text)
            self.expect("rparen")
            return sympy.sqrt(radicand)
        if tok.kind == "i":
            self.advance()
            return sympy.I
        if tok.kind == "w":
            self.advance()
            if self.tok.kind == "caret":
                self.advance()
                exponent = self.expect("num")
                if "." in exponent.text:
                    raise ParseError(self.text, exponent.pos, "integer exponent", repr(exponent.text))
                return sympy.expand(OMEGA ** int(exponent.text))
            return OMEGA
        if tok.kind == "lparen":
            self.advance()
            sign = 1
            if self.tok.kind in ("plus", "minus"):
                sign = -1 if self.advance().kind == "minus" else 1
            value = sign * self.coeff()
            while self.tok.kind in ("plus", "minus"):
                sign = -1 if self.advance().kind == "minus" else 1
                value = value + sign * self.coeff()
            self.expect("rparen")
            return value
        self.fail("number, 'sqrt', 'i', 'w' or '('")


def parse(text: str) -> KetExpression:
    if not text or not text.strip():
        raise ParseError(text or "", 0, "state expression", "end of input")
    return KetExpression(text, _Parser(text).parse())


# --- evaluation ------------------------------------------------------------


def _is_zero(value: sympy.Expr) -> bool:
    if value == 0:
        return True
    return abs(complex(sympy.N(value, 40))) < 1e-30


def _expand(node: Node) -> tuple[int, dict[int, sympy.Expr]]:
    if isinstance(node, BasisKet):
        return len(node.bits), {int(node.bits, 2): sympy.Integer(1)}
    if isinstance(node, NamedKet):
        sign = 1 if node.sign == "+" else -1
        return 1, {0: _HALF_SQRT2, 1: sign * _HALF_SQRT2}
    if isinstance(node, Scale):
        n, amps = _expand(node.node)
        return n, {k: node.coeff * v for k, v in amps.items()}
    if isinstance(node, Tensor):
        n, amps = _expand(node.factors[0])
        for factor in node.factors[1:]:
            m, other = _expand(factor)
            amps = {(i << m) | j: a * b for i, a in amps.items() for j, b in other.items()}
            n += m
        return n, amps
    if isinstance(node, Sum):
        n, total = None, {}
        for sign, sub in node.terms:
            m, amps = _expand(sub)
            if n is None:
                n = m
            elif m != n:
                raise MixedArity(f"cannot add {n}-qubit and {m}-qubit kets")
            for k, v in amps.items():
                total[k] = total.get(k, 0) + sign * v
        return n, total
    raise TypeError(f"unknown node {node!r}")


def evaluate(expr: KetExpression, normalize: bool = True) -> StateVector:
    """Assemble the amplitudes of ``expr`` as a :class:`StateVector`.

    With ``normalize`` on the exact amplitudes are divided by their exact
    norm before rounding.  With it off the norm must already be 1 to 1e-9.
    """
    n, amps = expr.amplitudes()
    if not amps:
        raise ZeroState(f"every amplitude of {expr.text!r} cancels")
    if normalize:
        norm2 = sympy.nsimplify(sum(sympy.expand(v * sympy.conjugate(v)) for v in amps.values()))
        scale = 1 / sympy.sqrt(norm2)
        amps = {k: sympy.expand(v * scale) for k, v in amps.items()}
    vec = np.zeros(2 ** n, dtype=complex)
    for k, v in amps.items():
        vec[k] = complex(sympy.N(v, 30))
    norm2 = float(np.vdot(vec, vec).real)
    if not normalize and abs(norm2 - 1.0) > EVAL_NORM_TOL:
        raise NotNormalized(f"norm^2 = {norm2!r}; pass normalize=True to rescale")
    # absorbs the last-ulp residue left by rounding each amplitude
    return from_amplitudes(vec, normalize=True)


def ket(text: str, normalize: bool = True) -> StateVector:
    """Shorthand for ``evaluate(parse(text), normalize)``."""
    return evaluate(parse(text), normalize)


# --- rendering -------------------------------------------------------------


def _format_rational(r: sympy.Rational) -> str:
    return str(r.p) if r.q == 1 else f"{r.p}/{r.q}"


def _format_monomial(term: sympy.Expr) -> tuple[int, str]:
    """Split ``term`` into a sign and an unsigned grammar string like ``3*sqrt(2)/4``."""
    coeff, rest = term.as_coeff_Mul()
    coeff = sympy.Rational(coeff)
    parts = []
    for factor in sorted(sympy.Mul.make_args(rest), key=sympy.default_sort_key):
        if factor == 1:
            continue
        if factor == sympy.I:
            parts.append("i")
        elif factor.is_Pow and factor.exp == sympy.Rational(1, 2) and factor.base.is_Integer:
            parts.append(f"sqrt({factor.base})")
        else:
            raise ValueError(f"cannot render coefficient factor {factor}")
    sign = -1 if coeff < 0 else 1
    num, den = abs(coeff.p), coeff.q
    if num != 1 or not parts:
        parts.insert(0, str(num))
    text = "*".join(parts)
    return sign, text if den == 1 else f"{text}/{den}"


def format_coefficient(value: sympy.Expr) -> tuple[int, str, bool]:
    """``(sign, text, compound)``; compound coefficients need parentheses."""
    terms = sorted(sympy.Add.make_args(sympy.expand(value)), key=sympy.default_sort_key)
    if len(terms) == 1:
        sign, text = _format_monomial(terms[0])
        return sign, text, False
    pieces = []
    for k, t in enumerate(terms):
        sign, text = _format_monomial(t)
        if k == 0:
            pieces.append(text if sign > 0 else f"-{text}")
        else:
            pieces.append(f"{'+' if sign > 0 else '-'} {text}")
    return 1, " ".join(pieces), True


def _join_terms(n: int, terms: list[tuple[int, int, str, bool]]) -> str:
    """Join ``(index, sign, text, compound)`` coefficient pieces into a ket sum."""
    out = []
    for idx, sign, text, compound in terms:
        bits = format(idx, f"0{n}b")
        if compound:
            body = f"({text})|{bits}>"
        elif text == "1":
            body = f"|{bits}>"
        else:
            body = f"{text}|{bits}>"
        if not out:
            out.append(body if sign > 0 else f"-{body}")
        else:
            out.append(f"{'+' if sign > 0 else '-'} {body}")
    return " ".join(out)


def _render_amplitudes(n: int, amps: dict[int, sympy.Expr]) -> str:
    return _join_terms(n, [(idx, *format_coefficient(amps[idx])) for idx in sorted(amps)])


def render(expr: KetExpression) -> str:
    """Canonical text of ``expr``: one exact coefficient per basis ket, ascending."""
    n, amps = expr.amplitudes()
    if not amps:
        raise ZeroState("nothing to render")
    return _render_amplitudes(n, amps)


def _exact_complex(z: complex) -> sympy.Expr:
    return sympy.Rational(Fraction(z.real)) + sympy.Rational(Fraction(z.imag)) * sympy.I


def render_state(psi: StateVector) -> str:
    """Exact text for a double-precision state; parses back bit for bit."""
    amps = {k: _exact_complex(complex(a)) for k, a in enumerate(psi.amps) if a != 0}
    return _render_amplitudes(psi.n, amps)


_SIMPLE_BOUND = 10_000


def recognize(x: float, tol: float = 1e-12) -> Optional[sympy.Expr]:
    """Small closed form ``p/q * sqrt(k)`` within ``tol`` of ``x``, else ``None``."""
    if abs(x) < tol:
        return sympy.Integer(0)
    guess = sympy.nsimplify(x, tolerance=tol, rational=False)
    if len(sympy.Add.make_args(guess)) != 1 or abs(float(guess) - x) > tol:
        return None
    coeff, rest = guess.as_coeff_Mul()
    if not coeff.is_Rational or max(abs(coeff.p), coeff.q) > _SIMPLE_BOUND:
        return None
    if rest != 1 and not (rest.is_Pow and rest.exp == sympy.Rational(1, 2)
                          and rest.base.is_Integer and rest.base <= _SIMPLE_BOUND):
        return None
    return guess


def _decimal(x: float) -> str:
    return np.format_float_positional(x, unique=True, trim="-")


def _pretty_coefficient(z: complex, tol: float) -> Optional[tuple[int, str, bool]]:
    re_, im = recognize(z.real, tol), recognize(z.imag, tol)
    if re_ is not None and im is not None:
        value = re_ + im * sympy.I
        return None if value == 0 else format_coefficient(value)
    re_t = "" if abs(z.real) < tol else _decimal(abs(z.real))
    im_t = "" if abs(z.imag) < tol else _decimal(abs(z.imag))
    if not im_t:
        return (1 if z.real > 0 else -1), re_t, False
    if not re_t:
        return (1 if z.imag > 0 else -1), f"{im_t}*i", False
    text = f"{'-' if z.real < 0 else ''}{re_t} {'+' if z.imag > 0 else '-'} {im_t}*i"
    return 1, text, True


def pretty_scalar(z: complex, tol: float = 1e-12) -> str:
    """Readable, parseable form of a complex number; decimals when no small closed form fits."""
    piece = _pretty_coefficient(complex(z), tol)
    if piece is None:
        return "0"
    sign, text, compound = piece
    if compound:
        return f"({text})"
    return text if sign > 0 else f"-{text}"


def pretty_state(psi: StateVector, tol: float = 1e-12) -> str:
    """Human-oriented rendering using closed forms where they are recognized."""
    terms = []
    for k, a in enumerate(psi.amps):
        piece = _pretty_coefficient(complex(a), tol)
        if piece is not None:
            terms.append((k, *piece))
    return _join_terms(psi.n, terms)


# --- qubit reordering ------------------------------------------------------


def _check_permutation(perm: Sequence[int], n: int) -> tuple[int, ...]:
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise BadPermutation(f"{perm} is not a permutation of 1..{n}")
    return perm


def invert_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for j, p in enumerate(perm, start=1):
        inv[p - 1] = j
    return tuple(inv)


def compose_permutations(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``p o q``: apply ``q`` first."""
    return tuple(p[qj - 1] for qj in q)


def permute_qubits(psi: StateVector, perm: Sequence[int]) -> StateVector:
    """Move original qubit ``j`` to position ``perm[j-1]`` (both 1-based)."""
    perm = _check_permutation(perm, psi.n)
    order = invert_permutation(perm)  # order[k] = original qubit now at position k+1
    tensor = psi.amps.reshape((2,) * psi.n)
    moved = np.transpose(tensor, [o - 1 for o in order]).reshape(-1)
    return from_amplitudes(moved, normalize=False)


def parse_order(spec: Union[str, Sequence[int]], n: int) -> tuple[int, ...]:
    """Turn a reading order into the ``perm`` taken by :func:`permute_qubits`.

    ``spec`` lists the original qubits in their new order, either as letters
    (``"ACB"``, A = qubit 1) or as 1-based integers (``"1,3,2"``).
    """
    if isinstance(spec, str):
        text = spec.strip()
        if re.fullmatch(r"[A-Za-z]+", text):
            order = [ord(ch.upper()) - ord("A") + 1 for ch in text]
        else:
            try:
                order = [int(tok) for tok in re.split(r"[,\s]+", text) if tok]
            except ValueError:
                raise BadPermutation(f"cannot read order {spec!r}") from None
    else:
        order = [int(o) for o in spec]
    if len(order) != n:
        raise BadPermutation(f"order {spec!r} has {len(order)} entries for {n} qubits")
    return invert_permutation(_check_permutation(order, n))

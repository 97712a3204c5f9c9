"""Homogeneous polynomials in x, y, z with exact coefficients.

Monomials are exponent triples (a, b, c).  The fixed term order is
graded lexicographic with x > y > z: compare total degree first, then
the exponent triple lexicographically.  All graded bases enumerate
monomials in this order, descending, so matrix layouts are stable
across runs.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .fields import Element, Field

Monomial = tuple[int, int, int]

VARS = ("x", "y", "z")


class PolynomialError(ValueError):
    pass


class ParseError(PolynomialError):
    """Syntax error; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class NonHomogeneousError(PolynomialError):
    """Input mixed two total degrees after expansion."""

    def __init__(self, deg_a: int, deg_b: int):
        super().__init__(
            f"polynomial is not homogeneous: degrees {deg_a} and {deg_b} present"
        )
        self.degrees = (deg_a, deg_b)


def monomial_degree(m: Monomial) -> int:
    return m[0] + m[1] + m[2]


@lru_cache(maxsize=None)
def monomial_basis(k: int) -> tuple[Monomial, ...]:
    """All degree-k monomials, graded-lex descending (x^k first, z^k last)."""
    if k < 0:
        return ()
    out = []
    for a in range(k, -1, -1):
        for b in range(k - a, -1, -1):
            out.append((a, b, k - a - b))
    return tuple(out)


@lru_cache(maxsize=None)
def basis_index(k: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomial_basis(k))}


def basis_dimension(k: int) -> int:
    # dim S_k = C(k+2, 2)
    if k < 0:
        return 0
    return (k + 2) * (k + 1) // 2


class TernaryForm:
    """A homogeneous form in x, y, z over a fixed field.

    terms maps monomials to nonzero coefficients; the zero form keeps
    an explicit degree so graded bookkeeping stays total.
    """

    __slots__ = ("field", "degree", "terms")

    def __init__(self, field: Field, degree: int, terms: dict[Monomial, Element]):
        if degree < 0:
            raise PolynomialError("degree must be nonnegative")
        for m, c in terms.items():
            if monomial_degree(m) != degree:
                raise NonHomogeneousError(degree, monomial_degree(m))
            if field.is_zero(c):
                raise PolynomialError("terms must carry nonzero coefficients")
        self.field = field
        self.degree = degree
        self.terms = dict(terms)

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, field: Field, degree: int) -> "TernaryForm":
        return cls(field, degree, {})

    @classmethod
    def from_integer_terms(
        cls, field: Field, terms: dict[Monomial, int]
    ) -> "TernaryForm":
        """Build from integer coefficients, embedding into the field."""
        if not terms:
            raise PolynomialError("need at least one term")
        degrees = {monomial_degree(m) for m in terms}
        if len(degrees) > 1:
            a, b = sorted(degrees)[:2]
            raise NonHomogeneousError(a, b)
        embedded = {}
        for m, n in terms.items():
            c = field.embed_integer(n)
            if not field.is_zero(c):
                embedded[m] = c
        return cls(field, degrees.pop(), embedded)

    # -- structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TernaryForm):
            return NotImplemented
        return (
            self.field.config == other.field.config
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.field.config, self.degree, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[Monomial, Element]]:
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "TernaryForm") -> "TernaryForm":
        if other.degree != self.degree:
            raise NonHomogeneousError(self.degree, other.degree)
        f = self.field
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = f.add(terms.get(m, f.zero()), c)
            if f.is_zero(s):
                terms.pop(m, None)
            else:
                terms[m] = s
        return TernaryForm(f, self.degree, terms)

    def __neg__(self) -> "TernaryForm":
        f = self.field
        return TernaryForm(f, self.degree, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "TernaryForm") -> "TernaryForm":
        return self + (-other)

    def __mul__(self, other: "TernaryForm") -> "TernaryForm":
        f = self.field
        out: dict[Monomial, Element] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                prod = f.mul(c1, c2)
                s = f.add(out.get(m, f.zero()), prod)
                if f.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return TernaryForm(f, self.degree + other.degree, out)

    def scale(self, c: Element) -> "TernaryForm":
        f = self.field
        if f.is_zero(c):
            return TernaryForm.zero(f, self.degree)
        return TernaryForm(f, self.degree, {m: f.mul(c, v) for m, v in self.terms.items()})

    def monomial_shift(self, shift: Monomial) -> "TernaryForm":
        """Multiply by a single monomial (no coefficient work)."""
        return TernaryForm(
            self.field,
            self.degree + monomial_degree(shift),
            {
                (m[0] + shift[0], m[1] + shift[1], m[2] + shift[2]): c
                for m, c in self.terms.items()
            },
        )

    def partial(self, var: int) -> "TernaryForm":
        """Partial derivative with respect to variable index 0, 1 or 2.

        Exponent factors k <= degree are embedded into the field, which
        is exact as long as the characteristic exceeds the degree (the
        prime-selection policy guarantees this)."""
        if self.degree == 0:
            raise PolynomialError("derivative of a constant form is degree -1")
        f = self.field
        out: dict[Monomial, Element] = {}
        for m, c in self.terms.items():
            e = m[var]
            if e == 0:
                continue
            lowered = list(m)
            lowered[var] = e - 1
            coeff = f.mul(f.embed_integer(e), c)
            if not f.is_zero(coeff):
                out[tuple(lowered)] = coeff
        return TernaryForm(f, self.degree - 1, out)

    def gradient(self) -> tuple["TernaryForm", "TernaryForm", "TernaryForm"]:
        return (self.partial(0), self.partial(1), self.partial(2))

    def euler_combination(self) -> "TernaryForm":
        """x*f_x + y*f_y + z*f_z; equals degree * f for homogeneous f."""
        fx, fy, fz = self.gradient()
        return (
            fx.monomial_shift((1, 0, 0))
            + fy.monomial_shift((0, 1, 0))
            + fz.monomial_shift((0, 0, 1))
        )

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        return format_form(self)

    def __repr__(self) -> str:
        return f"TernaryForm({self!s})"


def _format_coefficient(field: Field, c: Element) -> str:
    if field.kind == "gfp":
        return str(c)
    q = Fraction(c)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_form(f: TernaryForm) -> str:
    """Canonical text form; format_form and parse_form are inverse.

    Terms in graded-lex descending order, explicit '*' between factors,
    '^' for exponents > 1, coefficient printed only when needed.
    """
    if f.is_zero():
        return "0"
    parts: list[str] = []
    for mono, coeff in f.sorted_terms():
        factors = []
        for var, e in zip(VARS, mono):
            if e == 1:
                factors.append(var)
            elif e > 1:
                factors.append(f"{var}^{e}")
        coeff_str = _format_coefficient(f.field, coeff)
        negative = coeff_str.startswith("-")
        magnitude = coeff_str[1:] if negative else coeff_str
        if not factors:
            body = magnitude
        elif magnitude == "1":
            body = "*".join(factors)
        else:
            body = "*".join([magnitude] + factors)
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# Parser.  Tokens: x y z, integer literals, + - * / ^ ( ).  '^' binds
# tightest and takes a literal nonnegative integer exponent; there is no
# implicit multiplication; '/' requires a constant divisor.  Whitespace
# is ignored.
# ---------------------------------------------------------------------------


class _Token:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind: str, value, pos: int):
        self.kind = kind
        self.value = value
        self.pos = pos


def _tokenize(text: str) -> Iterator[_Token]:
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()":
            yield _Token(ch, ch, i)
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            yield _Token("int", int(text[i:j]), i)
            i = j
            continue
        if ch in VARS:
            yield _Token("var", ch, i)
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    yield _Token("end", None, n)


class _MixedPoly:
    """Parser accumulator: possibly inhomogeneous, degree-graded terms."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, Element]):
        self.terms = terms


class _Parser:
    def __init__(self, text: str, field: Field):
        self.field = field
        self.tokens = list(_tokenize(text))
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.take()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.kind!r}", tok.pos)
        return tok

    # expression := ['-'] term (('+'|'-') term)*
    def expression(self) -> _MixedPoly:
        if self.peek().kind == "-":
            self.take()
            value = self._negate(self.term())
        else:
            value = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            rhs = self.term()
            if op == "-":
                rhs = self._negate(rhs)
            value = self._add(value, rhs)
        return value

    # term := power (('*'|'/') power)*
    def term(self) -> _MixedPoly:
        value = self.power()
        while self.peek().kind in ("*", "/"):
            op = self.take()
            rhs = self.power()
            if op.kind == "*":
                value = self._multiply(value, rhs)
            else:
                value = self._divide(value, rhs, op.pos)
        return value

    # power := atom ['^' int]
    def power(self) -> _MixedPoly:
        value = self.atom()
        if self.peek().kind == "^":
            self.take()
            tok = self.expect("int")
            if tok.value < 0:
                raise ParseError("negative exponent", tok.pos)
            value = self._power(value, tok.value)
        return value

    # atom := int | var | '(' expression ')'
    def atom(self) -> _MixedPoly:
        tok = self.take()
        f = self.field
        if tok.kind == "int":
            c = f.embed_integer(tok.value)
            return _MixedPoly({} if f.is_zero(c) else {(0, 0, 0): c})
        if tok.kind == "var":
            mono = tuple(1 if v == tok.value else 0 for v in VARS)
            return _MixedPoly({mono: f.one()})
        if tok.kind == "(":
            inner = self.expression()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {tok.kind!r}", tok.pos)

    # -- accumulator arithmetic (field-exact, inhomogeneous) -----------

    def _add(self, a: _MixedPoly, b: _MixedPoly) -> _MixedPoly:
        f = self.field
        terms = dict(a.terms)
        for m, c in b.terms.items():
            s = f.add(terms.get(m, f.zero()), c)
            if f.is_zero(s):
                terms.pop(m, None)
            else:
                terms[m] = s
        return _MixedPoly(terms)

    def _negate(self, a: _MixedPoly) -> _MixedPoly:
        f = self.field
        return _MixedPoly({m: f.neg(c) for m, c in a.terms.items()})

    def _multiply(self, a: _MixedPoly, b: _MixedPoly) -> _MixedPoly:
        f = self.field
        out: dict[Monomial, Element] = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                s = f.add(out.get(m, f.zero()), f.mul(c1, c2))
                if f.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return _MixedPoly(out)

    def _divide(self, a: _MixedPoly, b: _MixedPoly, pos: int) -> _MixedPoly:
        f = self.field
        if list(b.terms.keys()) not in ([], [(0, 0, 0)]):
            raise ParseError("division is only allowed by a nonzero constant", pos)
        if not b.terms:
            raise ParseError("division by zero", pos)
        inv = f.inv(b.terms[(0, 0, 0)])
        return _MixedPoly({m: f.mul(c, inv) for m, c in a.terms.items()})

    def _power(self, a: _MixedPoly, e: int) -> _MixedPoly:
        result = _MixedPoly({(0, 0, 0): self.field.one()})
        base = a
        while e:
            if e & 1:
                result = self._multiply(result, base)
            base = self._multiply(base, base)
            e >>= 1
        return result


def parse_form(text: str, field: Field) -> TernaryForm:
    """Parse a homogeneous form; raise on syntax or mixed degrees."""
    parser = _Parser(text, field)
    mixed = parser.expression()
    parser.expect("end")
    if not mixed.terms:
        raise PolynomialError("polynomial expanded to zero")
    degrees = sorted({monomial_degree(m) for m in mixed.terms})
    if len(degrees) > 1:
        raise NonHomogeneousError(degrees[0], degrees[1])
    return TernaryForm(field, degrees[0], mixed.terms)

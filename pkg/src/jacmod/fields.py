"""Exact coefficient fields: prime fields GF(p) and the rationals.

Elements are kept as plain Python values (canonical int in [0, p) for
GF(p), fractions.Fraction for the rationals); a Field object supplies
the arithmetic.  This keeps hot loops cheap and lets matrix code store
coefficients directly in numpy arrays.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Element = Union[int, Fraction]

PRIME_LOW = 2**30
PRIME_HIGH = 2**31


class FieldError(ValueError):
    """Invalid field construction or illegal element operation."""


class BadPrimeError(FieldError):
    """The chosen prime collides with the input (divides a denominator).

    Callers are expected to reselect a prime and retry; with 30-bit
    random primes this is effectively a theoretical code path.
    """


@dataclass(frozen=True)
class FieldConfig:
    """Declarative description of a coefficient field.

    kind is "gfp" or "rational"; modulus is the prime for "gfp" and
    None otherwise.
    """

    kind: str
    modulus: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("gfp", "rational"):
            raise FieldError(f"unknown field kind {self.kind!r}")
        if self.kind == "gfp":
            if self.modulus is None or self.modulus < 2:
                raise FieldError("gfp field needs a prime modulus")
        elif self.modulus is not None:
            raise FieldError("rational field takes no modulus")


class Field:
    """Arithmetic over one FieldConfig.

    All operations are exact.  Division by zero and bad-prime
    embeddings raise instead of returning wrong values.
    """

    def __init__(self, config: FieldConfig):
        self.config = config
        self.kind = config.kind
        self.p = config.modulus

    # -- constants ---------------------------------------------------

    def zero(self) -> Element:
        return 0 if self.kind == "gfp" else Fraction(0)

    def one(self) -> Element:
        return 1 if self.kind == "gfp" else Fraction(1)

    # -- ring operations ---------------------------------------------

    def add(self, a: Element, b: Element) -> Element:
        if self.kind == "gfp":
            return (a + b) % self.p
        return a + b

    def sub(self, a: Element, b: Element) -> Element:
        if self.kind == "gfp":
            return (a - b) % self.p
        return a - b

    def mul(self, a: Element, b: Element) -> Element:
        if self.kind == "gfp":
            return (a * b) % self.p
        return a * b

    def neg(self, a: Element) -> Element:
        if self.kind == "gfp":
            return (-a) % self.p
        return -a

    def inv(self, a: Element) -> Element:
        """Multiplicative inverse; raises FieldError on zero."""
        if self.is_zero(a):
            raise FieldError("inverse of zero")
        if self.kind == "gfp":
            # Fermat: a^(p-2) mod p.
            return pow(a, self.p - 2, self.p)
        return 1 / a

    def div(self, a: Element, b: Element) -> Element:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: Element) -> bool:
        return a == 0

    # -- embeddings ---------------------------------------------------

    def embed_integer(self, n: int) -> Element:
        if self.kind == "gfp":
            return n % self.p
        return Fraction(n)

    def embed_fraction(self, q: Fraction) -> Element:
        if self.kind == "gfp":
            if q.denominator % self.p == 0:
                raise BadPrimeError(
                    f"prime {self.p} divides denominator {q.denominator}"
                )
            return (q.numerator * pow(q.denominator, self.p - 2, self.p)) % self.p
        return q

    def __repr__(self) -> str:
        if self.kind == "gfp":
            return f"Field(GF({self.p}))"
        return "Field(QQ)"


def rational_field() -> Field:
    return Field(FieldConfig("rational"))


def prime_field(p: int) -> Field:
    return Field(FieldConfig("gfp", p))


def _is_prime(n: int) -> bool:
    # sympy's isprime is deterministic in this range; imported lazily
    # because sympy start-up cost is noticeable for CLI use.
    from sympy import isprime

    return bool(isprime(n))


def random_prime(rng: random.Random, low: int = PRIME_LOW, high: int = PRIME_HIGH) -> int:
    """Draw a uniform random prime in [low, high) from rng."""
    while True:
        candidate = rng.randrange(low | 1, high, 2)
        if _is_prime(candidate):
            return candidate


def prime_pair(seed: int, max_degree: int = 256) -> tuple[int, int]:
    """Two distinct random primes for independent verification runs.

    Both exceed 3*max_degree so that no derivative coefficient k <= d
    or classification constant 3(d-1) can vanish spuriously mod p.
    The default 30-bit range satisfies this for any realistic degree;
    the bound is still checked so explicit small primes cannot sneak
    past validation elsewhere.
    """
    rng = random.Random(seed)
    p1 = random_prime(rng)
    p2 = random_prime(rng)
    while p2 == p1:
        p2 = random_prime(rng)
    for p in (p1, p2):
        if p <= 3 * max_degree:
            raise FieldError(f"prime {p} too small for degree cap {max_degree}")
    return p1, p2


def validate_prime_for_degree(p: int, degree: int) -> None:
    """Reject composite moduli and primes small enough to corrupt
    degree-d bookkeeping."""
    if not _is_prime(p):
        raise BadPrimeError(f"{p} is not prime")
    if p <= 3 * degree:
        raise FieldError(
            f"prime {p} must exceed 3*degree = {3 * degree} for exact results"
        )

"""Exact coefficient fields: arbitrary-precision rationals and prime fields.

Every check in this library evaluates a rational-function identity at random
points and compares both sides exactly; nothing is ever rounded.  Two field
realizations are provided:

* ``q``  -- exact rationals (``fractions.Fraction``), for spot confirmation;
* ``fp`` -- the prime field Z/p, default p = 2**61 - 1 (Mersenne), for bulk
  testing.

Over ``fp`` a nonzero rational function of total degree at most D vanishes at
a uniformly random point with probability at most D/p (the Schwartz-Zippel
bound), so a Pass verdict carries a quantified false-accept probability.
Over ``q`` evaluation is exact, and any mismatch is definitive; rational
sampling keeps numerators and denominators small (``sample_bound``) so that
intermediate fractions stay manageable.

Field elements are immutable and mix freely with ``int`` and ``Fraction``
constants, so map formulas can be written once, generically, and run under
either realization.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import SamplingExhausted

RATIONAL = "q"
PRIME = "fp"

#: Default modulus: the Mersenne prime 2**61 - 1.
DEFAULT_MODULUS = (1 << 61) - 1

#: Retries per element before sampling gives up.
SAMPLE_RETRY_BUDGET = 1000

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for all n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FpElement:
    """Residue in the prime field Z/p, stored in [0, p-1].

    Arithmetic accepts ``int`` and ``Fraction`` operands (a Fraction n/d is
    read as n * d**-1 mod p; a denominator divisible by p raises
    ``ZeroDivisionError``).
    """

    __slots__ = ("val", "p")

    def __init__(self, val: int, p: int):
        self.val = val % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise TypeError("mixing elements of different prime fields")
            return other.val
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            num, den = other.numerator, other.denominator
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator {den} is 0 mod {self.p}")
            return num * pow(den, self.p - 2, self.p) % self.p
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpElement(self.val + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpElement(self.val - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpElement(v - self.val, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpElement(self.val * v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if v == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return FpElement(self.val * pow(v, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if self.val == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return FpElement(v * pow(self.val, self.p - 2, self.p), self.p)

    def __neg__(self):
        return FpElement(-self.val, self.p)

    def __pow__(self, exp):
        if not isinstance(exp, int):
            return NotImplemented
        if exp < 0:
            if self.val == 0:
                raise ZeroDivisionError(f"0**{exp} in GF({self.p})")
            return FpElement(pow(pow(self.val, self.p - 2, self.p), -exp, self.p), self.p)
        return FpElement(pow(self.val, exp, self.p), self.p)

    def __eq__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self.val == v

    def __hash__(self):
        return hash((self.val, self.p))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return str(self.val)


@dataclass(frozen=True)
class FieldConfig:
    """Which field to verify over, plus the sampling parameters.

    ``kind`` is ``"q"`` (exact rationals) or ``"fp"`` (prime field with the
    given ``modulus``).  ``rng_seed`` fully determines every sample drawn by
    a verifier, so identical configurations reproduce identical reports.
    """

    kind: str = PRIME
    modulus: int = DEFAULT_MODULUS
    rng_seed: int = 1
    sample_bound: int = 100

    def __post_init__(self):
        if self.kind not in (RATIONAL, PRIME):
            raise ValueError(f"unknown field kind {self.kind!r} (use 'q' or 'fp')")
        if self.kind == PRIME and not is_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")
        if self.sample_bound < 1:
            raise ValueError("sample_bound must be at least 1")


class Field:
    """Handle for one field realization: constants plus element sampling."""

    def __init__(self, cfg: FieldConfig):
        self.cfg = cfg
        self.kind = cfg.kind
        self.p = cfg.modulus if cfg.kind == PRIME else None

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        if self.kind == PRIME:
            return FpElement(n, self.p)
        return Fraction(n)

    def describe(self) -> str:
        return f"fp:{self.p}" if self.kind == PRIME else "q"

    def sample(self, rng: random.Random, avoid=None):
        """One random element; ``avoid`` is a rejection predicate.

        Rationals are drawn as n/d with ``|n| <= sample_bound``,
        ``1 <= d <= sample_bound``; prime-field elements uniformly in
        [0, p-1].  Raises :class:`SamplingExhausted` after the retry budget.
        """
        bound = self.cfg.sample_bound
        for _ in range(SAMPLE_RETRY_BUDGET):
            if self.kind == PRIME:
                x = FpElement(rng.randrange(self.p), self.p)
            else:
                x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
            if avoid is None or avoid(x):
                return x
        raise SamplingExhausted(
            f"no element of {self.describe()} passed the avoid-predicate "
            f"in {SAMPLE_RETRY_BUDGET} tries"
        )

    def sample_nonzero(self, rng: random.Random):
        return self.sample(rng, avoid=lambda v: v != 0)


def make_field(cfg: FieldConfig) -> Field:
    return Field(cfg)


def sample(cfg: FieldConfig, count: int, avoid=None) -> list:
    """Draw ``count`` elements, deterministically from ``cfg.rng_seed``."""
    if count < 1:
        raise ValueError("count must be at least 1")
    field = make_field(cfg)
    rng = random.Random(cfg.rng_seed)
    return [field.sample(rng, avoid) for _ in range(count)]


def derive_rng(seed: int, stream: int) -> random.Random:
    """Independent deterministic stream for worker ``stream``.

    Streams never share state; mixing keeps distinct (seed, stream) pairs on
    distinct generator seeds for all realistic inputs.
    """
    return random.Random((seed * 1_000_003 + stream) & 0xFFFFFFFFFFFFFFFF)

"""Quasigroup structures: a carrier, a binary operation, and left division.

A left quasigroup is a set with an operation where u * v = w has a unique
solution v for given u, w; that solution is the left division u \\ w.  All
constructions in this library take place on one of a handful of such
structures over the active field:

============== ====================== ================= ===============
name           operation              left division     left identity
============== ====================== ================= ===============
additive       a * b = a + b          u \\ w = w - u     0
multiplicative a * b = a b            u \\ w = w / u     1
division       a * b = b / a          u \\ w = u w       1
subtraction    a * b = b - a          u \\ w = u + w     0
matrix (rev.)  A * B = B A            U \\ W = W U^-1    I
============== ====================== ================= ===============

Structures are field-independent: operations are written against the generic
scalar protocol and identities are plain integers (or integer matrices),
which coerce against whichever field realization is active.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Optional

from .carrier import Carrier, matrix_carrier, scalar_carrier
from .errors import IncompatibleStructureError, UnknownQuasigroupError
from .matrix import SquareMatrix


@dataclass(frozen=True)
class QuasigroupStructure:
    name: str
    op: Callable
    ldiv: Callable
    left_identity: object  # int, SquareMatrix of ints, or None
    carrier: Carrier
    is_group: bool = False
    is_abelian: bool = False
    is_loop: bool = False

    def inv(self, a):
        """Group inverse a^-1 = a \\ e; only meaningful when is_group."""
        if not self.is_group or self.left_identity is None:
            raise IncompatibleStructureError(f"{self.name} is not a group")
        return self.ldiv(a, self.left_identity)


BUILTIN_NAMES = ("additive", "multiplicative", "division", "subtraction_loop",
                 "matrix_reversed(n)")

_MATRIX_RE = re.compile(r"^matrix_reversed\((\d+)\)$")


def builtin(name: str) -> QuasigroupStructure:
    """Builtin structure by name; matrix order given as matrix_reversed(2)."""
    if name == "additive":
        return QuasigroupStructure(
            "additive", op=lambda a, b: a + b, ldiv=lambda u, w: w - u,
            left_identity=0, carrier=scalar_carrier(1),
            is_group=True, is_abelian=True, is_loop=True)
    if name == "multiplicative":
        return QuasigroupStructure(
            "multiplicative", op=lambda a, b: a * b, ldiv=lambda u, w: w / u,
            left_identity=1, carrier=scalar_carrier(1, nonzero=True),
            is_group=True, is_abelian=True, is_loop=True)
    if name == "division":
        # left quasigroup with left identity 1 only; not associative
        return QuasigroupStructure(
            "division", op=lambda a, b: b / a, ldiv=lambda u, w: u * w,
            left_identity=1, carrier=scalar_carrier(1, nonzero=True))
    if name == "subtraction_loop":
        # b - a has left identity 0 but no right identity
        return QuasigroupStructure(
            "subtraction_loop", op=lambda a, b: b - a, ldiv=lambda u, w: u + w,
            left_identity=0, carrier=scalar_carrier(1))
    m = _MATRIX_RE.match(name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise UnknownQuasigroupError(name)
        return QuasigroupStructure(
            f"matrix_reversed({n})",
            op=lambda a, b: b * a,
            ldiv=lambda u, w: w * u.inverse(),
            left_identity=SquareMatrix.identity(n),
            carrier=matrix_carrier(n),
            is_group=True, is_abelian=False, is_loop=True)
    raise UnknownQuasigroupError(name)


def reversed_group(q: QuasigroupStructure) -> QuasigroupStructure:
    """a * b = b a^-1 over a group: a quasigroup with left identity e and
    left division a \\ b = a b."""
    if not q.is_group:
        raise IncompatibleStructureError("reversed structure needs a group")
    return QuasigroupStructure(
        f"reversed({q.name})",
        op=lambda a, b: q.op(b, q.inv(a)),
        ldiv=lambda u, w: q.op(u, w),
        left_identity=q.left_identity,
        carrier=q.carrier)


@dataclass
class LawCheck:
    law: str
    passed: bool
    witness: Optional[str] = None


def check_axioms(q: QuasigroupStructure, samples: int, cfg) -> list[LawCheck]:
    """Sampled verification of the defining laws and the structure flags.

    Every law is tested regardless of the flags, so the report also shows
    e.g. where associativity breaks on a genuine (non-group) quasigroup.
    """
    from .core import format_value, run_cases  # local import avoids a cycle

    def law(name, nargs, test):
        def case(field, rng):
            args = tuple(q.carrier.sample(field, rng) for _ in range(nargs))
            lhs, rhs = test(*args)
            inputs = ", ".join(format_value(a) for a in args)
            return lhs == rhs, (inputs, format_value(lhs), format_value(rhs))
        rep = run_cases(name, cfg, samples, case)
        witness = None
        if rep.failures:
            f = rep.failures[0]
            witness = f"inputs=({f.inputs}) lhs={f.lhs} rhs={f.rhs}"
        return LawCheck(name, rep.verdict == "Pass", witness)

    checks = [
        law("op-ldiv cancellation: u*(u\\w) = w", 2,
            lambda u, w: (q.op(u, q.ldiv(u, w)), w)),
        law("ldiv-op cancellation: u\\(u*v) = v", 2,
            lambda u, v: (q.ldiv(u, q.op(u, v)), v)),
    ]
    if q.left_identity is not None:
        checks.append(law("left identity: e*u = u", 1,
                          lambda u: (q.op(q.left_identity, u), u)))
    checks.append(law("associativity: (a*b)*c = a*(b*c)", 3,
                      lambda a, b, c: (q.op(q.op(a, b), c), q.op(a, q.op(b, c)))))
    checks.append(law("commutativity: a*b = b*a", 2,
                      lambda a, b: (q.op(a, b), q.op(b, a))))
    if q.left_identity is not None:
        checks.append(law("right identity: u*e = u", 1,
                          lambda u: (q.op(u, q.left_identity), u)))
    return checks


def flags_consistent(q: QuasigroupStructure, checks: list[LawCheck]) -> bool:
    """True when every flag's implied law passed in ``checks``."""
    by_law = {c.law.split(":")[0]: c.passed for c in checks}
    if q.is_group and not (by_law.get("associativity", False)
                           and by_law.get("left identity", False)):
        return False
    if q.is_abelian and not by_law.get("commutativity", False):
        return False
    if q.is_loop and not (by_law.get("left identity", False)
                          and by_law.get("right identity", False)):
        return False
    return True

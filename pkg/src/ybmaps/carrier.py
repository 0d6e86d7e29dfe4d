"""Sampling domains for map and ternary-system arguments.

A carrier knows how to draw one random point of the evolution space:

* scalar carriers return a bare field element for dimension 1 and a tuple of
  elements for dimension >= 2, with an optional per-coordinate nonzero
  restriction (for spaces like the punctured line);
* matrix carriers return a random invertible ``SquareMatrix``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SamplingExhausted
from .field import SAMPLE_RETRY_BUDGET
from .matrix import SquareMatrix

SCALAR = "scalar"
MATRIX = "matrix"


@dataclass(frozen=True)
class Carrier:
    kind: str
    dim: int
    nonzero: tuple = ()

    def sample(self, field, rng):
        if self.kind == MATRIX:
            return _sample_invertible(field, rng, self.dim)
        coords = tuple(
            field.sample_nonzero(rng) if nz else field.sample(rng)
            for nz in self.nonzero
        )
        return coords[0] if self.dim == 1 else coords

    def describe(self) -> str:
        if self.kind == MATRIX:
            return f"GL{self.dim}"
        marks = "".join("*" if nz else "." for nz in self.nonzero)
        return f"scalar^{self.dim}[{marks}]"


def scalar_carrier(dim: int = 1, nonzero=False) -> Carrier:
    """``nonzero`` is a bool for all coordinates or a per-coordinate tuple."""
    if isinstance(nonzero, bool):
        mask = tuple(nonzero for _ in range(dim))
    else:
        mask = tuple(nonzero)
        if len(mask) != dim:
            raise ValueError("nonzero mask length must equal dim")
    return Carrier(SCALAR, dim, mask)


def matrix_carrier(order: int = 2) -> Carrier:
    return Carrier(MATRIX, order)


def _sample_invertible(field, rng, n) -> SquareMatrix:
    for _ in range(SAMPLE_RETRY_BUDGET):
        m = SquareMatrix(tuple(
            tuple(field.sample(rng) for _ in range(n)) for _ in range(n)
        ))
        if m.det() != 0:
            return m
    raise SamplingExhausted(f"no invertible {n}x{n} matrix found")

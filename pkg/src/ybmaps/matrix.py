"""Small dense square matrices over an exact field.

Entries are whatever scalar type the active field uses (``Fraction`` or
``FpElement``); plain ``int`` entries are accepted and coerce on contact with
field elements, which lets identity matrices and integer-entried constants
stay field-generic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import SingularMatrixError


def _exact(v):
    # int entries must not fall into float division during elimination
    return Fraction(v) if isinstance(v, int) else v


@dataclass(frozen=True)
class SquareMatrix:
    rows: tuple

    def __post_init__(self):
        n = len(self.rows)
        if n < 1 or any(len(r) != n for r in self.rows):
            raise ValueError("rows must form a nonempty square grid")
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))

    @property
    def order(self) -> int:
        return len(self.rows)

    @staticmethod
    def from_rows(rows) -> "SquareMatrix":
        return SquareMatrix(tuple(tuple(r) for r in rows))

    @staticmethod
    def identity(n: int, field=None) -> "SquareMatrix":
        one = field.one if field is not None else 1
        zero = field.zero if field is not None else 0
        return SquareMatrix(tuple(
            tuple(one if i == j else zero for j in range(n)) for i in range(n)
        ))

    @staticmethod
    def diagonal(entries) -> "SquareMatrix":
        entries = tuple(entries)
        n = len(entries)
        return SquareMatrix(tuple(
            tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)
        ))

    def __add__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        self._check_order(other)
        return SquareMatrix(tuple(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)
        ))

    def __sub__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        self._check_order(other)
        return SquareMatrix(tuple(
            tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)
        ))

    def __neg__(self):
        return SquareMatrix(tuple(tuple(-a for a in r) for r in self.rows))

    def __mul__(self, other):
        """Matrix product; use ``scale`` or ``c * M`` for scalar multiples."""
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        self._check_order(other)
        n = self.order
        cols = tuple(zip(*other.rows))
        return SquareMatrix(tuple(
            tuple(sum(self.rows[i][k] * cols[j][k] for k in range(n)) for j in range(n))
            for i in range(n)
        ))

    def __rmul__(self, scalar):
        if isinstance(scalar, SquareMatrix):
            return NotImplemented
        return self.scale(scalar)

    def scale(self, c) -> "SquareMatrix":
        return SquareMatrix(tuple(tuple(c * a for a in r) for r in self.rows))

    def trace(self):
        return sum(self.rows[i][i] for i in range(self.order))

    def det(self):
        n = self.order
        r = self.rows
        if n == 1:
            return r[0][0]
        if n == 2:
            return r[0][0] * r[1][1] - r[0][1] * r[1][0]
        if n == 3:
            return (r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                    - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                    + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]))
        return self._det_gauss()

    def _det_gauss(self):
        n = self.order
        m = [[_exact(v) for v in row] for row in self.rows]
        det = None
        sign = 1
        for col in range(n):
            pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
            if pivot is None:
                return m[0][0] - m[0][0]  # field zero
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                sign = -sign
            pv = m[col][col]
            det = pv if det is None else det * pv
            for i in range(col + 1, n):
                f = m[i][col] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
        if sign < 0:
            det = -det
        return det

    def inverse(self) -> "SquareMatrix":
        """Gauss-Jordan inverse; raises SingularMatrixError when det = 0."""
        n = self.order
        m = [[_exact(v) for v in row] for row in self.rows]
        aug = [m[i] + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
               for i, _ in enumerate(m)]
        # replace the int/Fraction identity block with field scalars on contact
        for col in range(n):
            pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
            if pivot is None:
                raise SingularMatrixError(f"matrix of order {n} is singular")
            if pivot != col:
                aug[col], aug[pivot] = aug[pivot], aug[col]
            pv = aug[col][col]
            aug[col] = [a / pv for a in aug[col]]
            for i in range(n):
                if i != col and aug[i][col] != 0:
                    f = aug[i][col]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
        return SquareMatrix(tuple(tuple(row[n:]) for row in aug))

    def _check_order(self, other):
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __repr__(self):
        inner = ", ".join("[" + ", ".join(str(v) for v in r) + "]" for r in self.rows)
        return f"[{inner}]"

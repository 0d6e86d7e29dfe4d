"""Quadrirational YB maps on pairs of invertible 2x2 matrices.

Given a d-parametric family K of commuting matrices, write the coefficients
of the characteristic-style polynomial

    det(X - zeta K_a) = f2(X) zeta^2 - f1(X) zeta + f0(X)

(the signs fixed by that convention).  The map

    U = (f2(X) Y X - f0(X) K_a K_b) (f2(X) (Y K_a + K_b X) - f1(X) K_a K_b)^-1 K_a
    V = K_a^-1 (Y K_a + K_b X - U K_b)

is a parametric YB map on matrix pairs.  It satisfies two invariant
conditions, both verifiable here:

    (U - zeta K_a)(V - zeta K_b) = (Y - zeta K_b)(X - zeta K_a)   in zeta,
    f_i^a(U) = f_i^a(X) and f_i^b(V) = f_i^b(Y) for i = 0, 1, 2,

and the induced ternary operation

    mu_{a,b}(A, B, C) = V_{a,b}(B A^-1, C B^-1) A

is a 3D-compatible system on invertible matrices: it is exactly the inverse
construction applied over the reversed matrix quasigroup A * B = B A, on
which the first invariant condition at zeta = 0 reads V * U = U V = Y X =
X * Y.

Only order 2 is implemented; the data model permits n x n carriers but the
map constructor refuses them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .carrier import matrix_carrier
from .core import (ParametricTernarySystem, ParametricYBMap,
                   VerificationReport, format_inputs, format_value, run_cases,
                   sample_params)
from .errors import SingularMatrixError, UnsupportedOrderError
from .field import FieldConfig
from .matrix import SquareMatrix

GL_DEGREE_HINT = 256


@dataclass(frozen=True)
class CommutingFamily:
    """alpha -> K_alpha with K_alpha K_beta = K_beta K_alpha for all alpha,
    beta (sampled, not assumed)."""

    name: str
    arity: int
    order: int
    func: Callable  # (alpha,) -> SquareMatrix

    def __call__(self, alpha):
        return self.func(alpha)


def diagonal_family() -> CommutingFamily:
    return CommutingFamily(
        "diagonal", arity=2, order=2,
        func=lambda alpha: SquareMatrix.diagonal((alpha[0], alpha[1])))


def polynomial_family(j_entries=(0, 1, 1, 0)) -> CommutingFamily:
    """K_alpha = alpha1 I + alpha2 J for a fixed integer matrix J."""
    a, b, c, d = j_entries

    def func(alpha):
        a1, a2 = alpha
        return SquareMatrix(((a1 + a2 * a, a2 * b), (a2 * c, a1 + a2 * d)))

    return CommutingFamily(f"polynomial_in_J{tuple(j_entries)}", arity=2,
                           order=2, func=func)


@dataclass(frozen=True)
class CharCoeffs:
    f2: object
    f1: object
    f0: object


def char_coeffs(x: SquareMatrix, k: CommutingFamily, alpha) -> CharCoeffs:
    """Coefficients of det(X - zeta K_alpha) = f2 z^2 - f1 z + f0.

    Extracted exactly by evaluating the determinant at zeta in {0, 1, -1}
    and interpolating the quadratic.
    """
    ka = k(alpha)
    p0 = x.det()
    p_plus = (x - ka).det()
    p_minus = (x + ka).det()
    f2 = (p_plus + p_minus) / 2 - p0
    f1 = (p_minus - p_plus) / 2
    return CharCoeffs(f2=f2, f1=f1, f0=p0)


def gl_yb_map(k: CommutingFamily) -> ParametricYBMap:
    """The matrix-pair YB map attached to a commuting family (order 2 only)."""
    if k.order != 2:
        raise UnsupportedOrderError(
            f"matrix map formulas are implemented for order 2, not {k.order}")

    def func(x, alpha, y, beta):
        ka, kb = k(alpha), k(beta)
        cc = char_coeffs(x, k, alpha)
        mixed = y * ka + kb * x
        denom = cc.f2 * mixed - cc.f1 * (ka * kb)
        u = (cc.f2 * (y * x) - cc.f0 * (ka * kb)) * denom.inverse() * ka
        v = ka.inverse() * (mixed - u * kb)
        return u, v

    return ParametricYBMap(
        name=f"gl2_map[{k.name}]", dim=2, param_arity=k.arity, func=func,
        carrier=matrix_carrier(2), degree_hint=GL_DEGREE_HINT,
        label=f"matrix-pair YB map for the {k.name} commuting family")


def gl_ternary(k: CommutingFamily) -> ParametricTernarySystem:
    """mu_{a,b}(A, B, C) = V_{a,b}(B A^-1, C B^-1) A on invertible matrices."""
    r = gl_yb_map(k)

    def func(alpha, beta, a, b, c):
        _, v = r(b * a.inverse(), alpha, c * b.inverse(), beta)
        return v * a

    return ParametricTernarySystem(
        name=f"gl2_ternary[{k.name}]", param_arity=k.arity, func=func,
        carrier=matrix_carrier(2), degree_hint=GL_DEGREE_HINT,
        label=f"matrix ternary system for the {k.name} commuting family")


# ---------------------------------------------------------------------------
# the family-specific invariants


def check_commutation(k: CommutingFamily, samples: int,
                      cfg: FieldConfig) -> VerificationReport:
    def case(fld, rng):
        pa = sample_params(fld, rng, k.arity)
        pb = sample_params(fld, rng, k.arity)
        lhs = k(pa) * k(pb)
        rhs = k(pb) * k(pa)
        detail = (format_inputs(alpha=pa, beta=pb),
                  format_value(lhs), format_value(rhs))
        return lhs == rhs, detail

    return run_cases(f"commutation({k.name})", cfg, samples, case,
                     degree_hint=GL_DEGREE_HINT)


def check_matrix_invariant(k: CommutingFamily, samples: int, cfg: FieldConfig,
                           *, zeta_values: int = 3) -> VerificationReport:
    """(U - z K_a)(V - z K_b) = (Y - z K_b)(X - z K_a), degree 2 in zeta,
    checked at ``zeta_values`` distinct points including zero."""
    r = gl_yb_map(k)

    def case(fld, rng):
        x = r.carrier.sample(fld, rng)
        y = r.carrier.sample(fld, rng)
        pa = sample_params(fld, rng, k.arity)
        pb = sample_params(fld, rng, k.arity)
        u, v = r(x, pa, y, pb)
        ka, kb = k(pa), k(pb)
        zetas = [fld.zero]
        while len(zetas) < zeta_values:
            z = fld.sample_nonzero(rng)
            if all(z != seen for seen in zetas):
                zetas.append(z)
        for z in zetas:
            lhs = (u - z * ka) * (v - z * kb)
            rhs = (y - z * kb) * (x - z * ka)
            if lhs != rhs:
                detail = (format_inputs(x=x, y=y, alpha=pa, beta=pb, zeta=z),
                          format_value(lhs), format_value(rhs))
                return False, detail
        return True, None

    return run_cases(f"matrix-invariant({k.name})", cfg, samples, case,
                     degree_hint=GL_DEGREE_HINT)


def check_spectral_invariants(k: CommutingFamily, samples: int,
                              cfg: FieldConfig) -> VerificationReport:
    """f_i^a(U) = f_i^a(X) and f_i^b(V) = f_i^b(Y) for i = 0, 1, 2."""
    r = gl_yb_map(k)

    def case(fld, rng):
        x = r.carrier.sample(fld, rng)
        y = r.carrier.sample(fld, rng)
        pa = sample_params(fld, rng, k.arity)
        pb = sample_params(fld, rng, k.arity)
        u, v = r(x, pa, y, pb)
        cu, cx = char_coeffs(u, k, pa), char_coeffs(x, k, pa)
        cv, cy = char_coeffs(v, k, pb), char_coeffs(y, k, pb)
        lhs = (cu.f0, cu.f1, cu.f2, cv.f0, cv.f1, cv.f2)
        rhs = (cx.f0, cx.f1, cx.f2, cy.f0, cy.f1, cy.f2)
        detail = (format_inputs(x=x, y=y, alpha=pa, beta=pb),
                  format_value(lhs), format_value(rhs))
        return lhs == rhs, detail

    return run_cases(f"spectral-invariants({k.name})", cfg, samples, case,
                     degree_hint=GL_DEGREE_HINT)

"""Lax matrices with spectral parameter, refactorization, and strongness.

A Lax matrix of a parametric YB map R is a matrix-valued function
L(x; alpha; zeta), polynomial of bounded degree in the spectral parameter
zeta, with

    L(u; alpha) L(v; beta) = L(y; beta) L(x; alpha)    for (u, v) = R(x, y).

Both sides are matrices whose entries are polynomials of degree at most
2*deg(L) in zeta, so agreement at 2*deg(L) + 1 distinct zeta values is
equivalent to the polynomial identity; the checkers also evaluate at one
extra random zeta and always include zeta = 0 among the test points.

A Lax matrix is *strong* when the refactorization determines (u, v)
uniquely.  ``check_strongness`` gathers falsification evidence for that: it
confirms the true (u, v) satisfies the identity while randomly perturbed
candidates (u + delta, v) and (u, v + delta) violate it.  A Pass is
necessary-condition evidence, not a uniqueness proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import (ParametricYBMap, VerificationReport, format_inputs,
                   format_value, run_cases, sample_params)
from .field import FieldConfig


@dataclass(frozen=True)
class LaxMatrix:
    name: str
    order: int
    degree: int  # degree in zeta
    func: Callable  # (x, alpha, zeta) -> SquareMatrix
    label: str = ""
    degree_hint: int = 64

    def __call__(self, x, alpha, zeta):
        return self.func(x, alpha, zeta)


def _zeta_points(fld, rng, count):
    """zeta = 0 plus ``count - 1`` distinct random nonzero values, plus one
    extra random point beyond the interpolation bound."""
    points = [fld.zero]
    while len(points) < count + 1:
        z = fld.sample_nonzero(rng)
        if all(z != p for p in points):
            points.append(z)
    return points


def check_refactorization(lax: LaxMatrix, r: ParametricYBMap, samples: int,
                          cfg: FieldConfig, *, zeta_points: int = 3,
                          jobs: int = 1) -> VerificationReport:
    """L(u;a)L(v;b) = L(y;b)L(x;a) identically in zeta, via point evaluation."""
    if zeta_points < 2 * lax.degree + 1:
        raise ValueError(
            f"zeta_points={zeta_points} cannot pin a degree-{2 * lax.degree} "
            f"polynomial identity; need at least {2 * lax.degree + 1}")

    def case(fld, rng):
        x = r.carrier.sample(fld, rng)
        y = r.carrier.sample(fld, rng)
        pa = sample_params(fld, rng, r.param_arity)
        pb = sample_params(fld, rng, r.param_arity)
        u, v = r(x, pa, y, pb)
        for z in _zeta_points(fld, rng, zeta_points):
            lhs = lax(u, pa, z) * lax(v, pb, z)
            rhs = lax(y, pb, z) * lax(x, pa, z)
            if lhs != rhs:
                detail = (format_inputs(x=x, y=y, alpha=pa, beta=pb, zeta=z),
                          format_value(lhs), format_value(rhs))
                return False, detail
        return True, None

    return run_cases(f"refactorization({lax.name}, {r.name})", cfg, samples,
                     case, jobs=jobs, degree_hint=lax.degree_hint,
                     label=lax.label)


def _perturb(point, delta, slot):
    if isinstance(point, tuple):
        i = slot % len(point)
        return point[:i] + (point[i] + delta,) + point[i + 1:]
    return point + delta


def check_strongness(lax: LaxMatrix, r: ParametricYBMap, samples: int,
                     cfg: FieldConfig, *, perturbations: int = 10,
                     zeta_points: int = 3, jobs: int = 1) -> VerificationReport:
    """Falsification protocol for uniqueness of the refactorization.

    Per sample: (a) the true (u, v) = R(x, y) must satisfy the identity at
    every zeta test point; (b) for each random nonzero offset delta, the
    candidates (u + delta, v) and (u, v + delta) must violate it at some
    test point.  On multi-coordinate carriers the offset lands on one
    coordinate, cycling so all coordinates get exercised.
    """
    if perturbations < 1:
        raise ValueError("perturbations must be at least 1")

    def satisfies(ut, vt, y, x, pa, pb, zetas):
        for z in zetas:
            if lax(ut, pa, z) * lax(vt, pb, z) != lax(y, pb, z) * lax(x, pa, z):
                return False
        return True

    def case(fld, rng):
        x = r.carrier.sample(fld, rng)
        y = r.carrier.sample(fld, rng)
        pa = sample_params(fld, rng, r.param_arity)
        pb = sample_params(fld, rng, r.param_arity)
        u, v = r(x, pa, y, pb)
        zetas = _zeta_points(fld, rng, zeta_points)
        if not satisfies(u, v, y, x, pa, pb, zetas):
            detail = (format_inputs(x=x, y=y, alpha=pa, beta=pb),
                      "true (u, v) violates the refactorization",
                      "expected it to hold")
            return False, detail
        for j in range(perturbations):
            for side in (0, 1):
                # pole hits inside a perturbed candidate get a fresh delta
                for _ in range(20):
                    delta = fld.sample_nonzero(rng)
                    cand = ((_perturb(u, delta, j), v) if side == 0
                            else (u, _perturb(v, delta, j)))
                    try:
                        good = satisfies(cand[0], cand[1], y, x, pa, pb, zetas)
                    except ZeroDivisionError:
                        continue
                    break
                else:
                    raise ZeroDivisionError("no evaluable perturbation found")
                if good:
                    which = "u" if side == 0 else "v"
                    detail = (format_inputs(x=x, y=y, alpha=pa, beta=pb,
                                            delta=delta),
                              f"perturbed {which} still satisfies the "
                              f"refactorization",
                              "expected a violation")
                    return False, detail
        return True, None

    return run_cases(f"strongness({lax.name}, {r.name})", cfg, samples, case,
                     jobs=jobs, degree_hint=lax.degree_hint, label=lax.label)

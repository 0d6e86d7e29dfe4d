"""Dimension reduction of YB maps through compatible constraints.

A parameter-dependent function f pins one coordinate of an n-dimensional
parametric YB map.  Writing x = (x_1, ..., x_n) and filling coordinate k with
f_alpha(x_1, .., x_{k-1}, x_{k+1}, .., x_n), the constraint is *compatible*
when the map reproduces it on both outputs:

    u_k = f_alpha(u_1, .., u_{k-1}, u_{k+1}, .., u_n)
    v_k = f_beta (v_1, .., v_{k-1}, v_{k+1}, .., v_n)

In that case dropping coordinate k yields an (n-1)-dimensional parametric YB
map, and substituting the constraint into a Lax matrix of the original map
yields a Lax matrix of the reduced one.  Both guarantees are test
obligations here, not assumptions.

The module also builds the concrete 2-dimensional matrix-product map this
pipeline is used on: a four-YB-parameter map on pairs (x_1, x_2) defined
through 2x2 matrix refactorization, whose constraint x_1 = y_1 = 0 reduces
it to the four-parametric map on the punctured line.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import dsl
from .carrier import scalar_carrier
from .core import (ParametricYBMap, VerificationReport, format_inputs,
                   format_value, run_cases, sample_params)
from .errors import ParseError, PreconditionFailedError
from .field import FieldConfig
from .lax import LaxMatrix
from .matrix import SquareMatrix

#: Sample budget for the strict-mode compatibility precheck.
PRECHECK_SAMPLES = 64


@dataclass(frozen=True)
class ConstraintFunction:
    """f: (alpha, free coordinates) -> constrained coordinate value."""

    name: str
    index: int      # 1-based constrained coordinate k
    arity: int      # number of free coordinates (map dim - 1)
    func: Callable  # (alpha, free: tuple) -> element

    def __call__(self, alpha, free):
        return self.func(alpha, free)


def zero_constraint(index: int, arity: int) -> ConstraintFunction:
    return ConstraintFunction("zero", index, arity, lambda alpha, free: 0)


def constant_constraint(value: int, index: int, arity: int) -> ConstraintFunction:
    return ConstraintFunction(f"constant({value})", index, arity,
                              lambda alpha, free: value)


def expression_constraint(text: str, index: int, arity: int,
                          param_arity: int) -> ConstraintFunction:
    """Constraint from a DSL expression in x1..x{arity} and a1..a{param_arity}."""
    expr = dsl.parse_expression(text)
    param_names = tuple(f"a{i + 1}" for i in range(param_arity))
    var_names = tuple(f"x{i + 1}" for i in range(arity))
    allowed = set(param_names) | set(var_names)
    free_syms = dsl.symbols_of(expr) - allowed
    if free_syms:
        raise ParseError(f"constraint uses unknown symbol "
                         f"{sorted(free_syms)[0]!r}; allowed: "
                         f"{', '.join(param_names + var_names)}")

    def func(alpha, free):
        avec = (alpha,) if param_arity == 1 else tuple(alpha)
        bindings = dict(zip(param_names, avec))
        bindings.update(zip(var_names, free))
        return dsl.evaluate(expr, bindings)

    return ConstraintFunction(f"expr({text})", index, arity, func)


def _as_tuple(point):
    return point if isinstance(point, tuple) else (point,)


def _from_tuple(coords):
    return coords[0] if len(coords) == 1 else tuple(coords)


def _fill(free, k, value):
    free = tuple(free)
    return free[:k - 1] + (value,) + free[k - 1:]


def _drop(point, k):
    point = _as_tuple(point)
    return point[:k - 1] + point[k:]


def check_compatibility(r: ParametricYBMap, f: ConstraintFunction,
                        samples: int, cfg: FieldConfig,
                        *, jobs: int = 1) -> VerificationReport:
    """Sampled two-sided check of both constraint-propagation conditions."""
    if r.dim < 2:
        raise ValueError("compatibility reduction needs dim >= 2")
    if f.arity != r.dim - 1:
        raise ValueError(f"constraint arity {f.arity} does not match "
                         f"map dimension {r.dim}")
    k = f.index

    def case(fld, rng):
        xf = _drop(r.carrier.sample(fld, rng), k)
        yf = _drop(r.carrier.sample(fld, rng), k)
        pa = sample_params(fld, rng, r.param_arity)
        pb = sample_params(fld, rng, r.param_arity)
        x = _fill(xf, k, f(pa, xf))
        y = _fill(yf, k, f(pb, yf))
        u, v = r(x, pa, y, pb)
        u, v = _as_tuple(u), _as_tuple(v)
        lhs = (u[k - 1], v[k - 1])
        rhs = (f(pa, _drop(u, k)), f(pb, _drop(v, k)))
        detail = (format_inputs(x=x, y=y, alpha=pa, beta=pb),
                  format_value(lhs), format_value(rhs))
        return lhs == rhs, detail

    return run_cases(f"compatibility({r.name}, {f.name}@{k})", cfg, samples,
                     case, jobs=jobs, degree_hint=r.degree_hint, label=r.label)


def reduce_map(r: ParametricYBMap, f: ConstraintFunction, cfg: FieldConfig,
               *, strict: bool = True,
               precheck_samples: int = PRECHECK_SAMPLES) -> ParametricYBMap:
    """Fill coordinate k with the constraint and project it away."""
    if strict:
        rep = check_compatibility(r, f, precheck_samples, cfg)
        if rep.verdict != "Pass":
            raise PreconditionFailedError(
                f"constraint {f.name} is not compatible with {r.name}", rep)
    k = f.index

    def func(xf, alpha, yf, beta):
        x = _fill(_as_tuple(xf), k, f(alpha, _as_tuple(xf)))
        y = _fill(_as_tuple(yf), k, f(beta, _as_tuple(yf)))
        u, v = r(x, alpha, y, beta)
        return _from_tuple(_drop(u, k)), _from_tuple(_drop(v, k))

    mask = tuple(nz for i, nz in enumerate(r.carrier.nonzero, start=1) if i != k)
    return ParametricYBMap(
        name=f"reduced({r.name}, {f.name}@{k})", dim=r.dim - 1,
        param_arity=r.param_arity, func=func,
        carrier=scalar_carrier(r.dim - 1, nonzero=mask),
        source="reduced", degree_hint=r.degree_hint,
        label=f"{r.name} constrained by {f.name} at coordinate {k}")


def reduce_lax(lax: LaxMatrix, f: ConstraintFunction,
               reduced_for: Optional[str] = None) -> LaxMatrix:
    """Substitute the constraint into a Lax matrix of the unreduced map."""
    k = f.index

    def func(xf, alpha, zeta):
        x = _fill(_as_tuple(xf), k, f(alpha, _as_tuple(xf)))
        return lax(_from_tuple(x) if len(x) == 1 else x, alpha, zeta)

    suffix = f" for {reduced_for}" if reduced_for else ""
    return LaxMatrix(
        name=f"reduced({lax.name}, {f.name}@{k})", order=lax.order,
        degree=lax.degree, func=func, degree_hint=lax.degree_hint,
        label=f"{lax.name} with coordinate {k} pinned by {f.name}{suffix}")


# ---------------------------------------------------------------------------
# parameter reindexing (the free-parameter substitutions)


def reindex_map_params(r: ParametricYBMap, new_arity: int, fn: Callable,
                       name: str, label: str = "") -> ParametricYBMap:
    """Wrap a map so its parameters are fn(new parameters); fn's output must
    match the wrapped map's arity.  Used for substitutions that trade YB
    parameters for free constants; the constants are not YB parameters."""

    def func(x, alpha, y, beta):
        return r(x, fn(alpha), y, fn(beta))

    return ParametricYBMap(
        name=name, dim=r.dim, param_arity=new_arity, func=func,
        carrier=r.carrier, source="constructed", degree_hint=r.degree_hint,
        label=label or f"{r.name} with reindexed parameters")


def reindex_lax_params(lax: LaxMatrix, fn: Callable, name: str,
                       label: str = "") -> LaxMatrix:
    return LaxMatrix(
        name=name, order=lax.order, degree=lax.degree,
        func=lambda x, alpha, zeta: lax(x, fn(alpha), zeta),
        degree_hint=lax.degree_hint,
        label=label or f"{lax.name} with reindexed parameters")


def spread_substitution(r_const: int) -> Callable:
    """Scalar parameter a becomes the pair (a - r, a + r), r a free constant."""
    return lambda a: (a - r_const, a + r_const)


def pin_first_substitution(c: int) -> Callable:
    """Pair parameter (c, a): first component pinned to a constant."""
    return lambda a: (c, a)


def pin_second_substitution(c: int) -> Callable:
    return lambda a: (a, c)


# ---------------------------------------------------------------------------
# the 2-dimensional matrix-product map and its binomial Lax matrix


def _structured_matrix(x1, x2, a1, a2) -> SquareMatrix:
    # entries rational in (x1, x2); needs a1, x2 nonzero
    return SquareMatrix((
        (x1, x2),
        ((a1 - a2 * x1 * x1) / (a1 * x2), -(a2 * x1) / a1),
    ))


def _param_diag(a1, a2) -> SquareMatrix:
    return SquareMatrix.diagonal((a1, a2))


def case_one_map() -> ParametricYBMap:
    """The dim-2, four-parameter YB map defined by 2x2 matrix refactorization.

    With Lbar the structured matrix of (x_1, x_2) and K the parameter
    diagonal, the outputs are the first rows of

        U = (Lbar(y;b) Lbar(x;a) + (1/(a1 a2)) K_a K_b)
            (Lbar(y;b) K_a + K_b Lbar(x;a))^-1 K_a
        V = K_a^-1 (Lbar(y;b) K_a + K_b Lbar(x;a) - U K_b)

    U and V land back in the structured family, so the first rows determine
    everything.  Requires a1, a2, x2 nonzero; a singular inverted combination
    raises and the verifier resamples.
    """

    def func(x, alpha, y, beta):
        x1, x2 = x
        y1, y2 = y
        a1, a2 = alpha
        b1, b2 = beta
        lx = _structured_matrix(x1, x2, a1, a2)
        ly = _structured_matrix(y1, y2, b1, b2)
        ka = _param_diag(a1, a2)
        kb = _param_diag(b1, b2)
        mixed = ly * ka + kb * lx
        u = (ly * lx + (1 / (a1 * a2)) * (ka * kb)) * mixed.inverse() * ka
        v = ka.inverse() * (mixed - u * kb)
        return ((u.rows[0][0], u.rows[0][1]), (v.rows[0][0], v.rows[0][1]))

    return ParametricYBMap(
        name="case1_map", dim=2, param_arity=2, func=func,
        carrier=scalar_carrier(2, nonzero=(False, True)),
        degree_hint=256,
        label="dim-2 quadrirational map from 2x2 binomial refactorization")


def case_one_lax() -> LaxMatrix:
    """Binomial Lax matrix Lbar(x_1, x_2; alpha) - zeta K_alpha."""

    def func(x, alpha, zeta):
        x1, x2 = x
        a1, a2 = alpha
        return _structured_matrix(x1, x2, a1, a2) - zeta * _param_diag(a1, a2)

    return LaxMatrix(name="case1_lax", order=2, degree=1, func=func,
                     degree_hint=256,
                     label="binomial Lax matrix of the dim-2 map")

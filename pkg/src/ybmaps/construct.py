"""The two-way bridge between 3D-compatible ternary systems and YB maps.

Forward direction: a 3D-compatible ternary operation mu with a suitable
symmetry yields a parametric YB map.  All five recipe kinds are instances of
one construction on a left quasigroup (L, *) with left identity e and left
division \\ :

    w = mu(e, x, x * y),    R(x, y) = (w \\ (x * y), e \\ w)

specialized as

    group            R = ((mu(e,x,xy))^-1 xy,  mu(e,x,xy))
    abelian_additive R = (x + y - mu(0,x,x+y), mu(0,x,x+y))
    division         R = ((y/x) mu(1,x,y/x),   mu(1,x,y/x))
    loop             R = (mu(0,x,y-x) + y - x, mu(0,x,y-x))
    abelian_general  R = (y x^-1 mu(e,x,yx^-1), mu(e,x,yx^-1))

Without a symmetry condition the same ternary still produces a *dynamical*
YB map R(lambda) on any left quasigroup:

    xi_l(x)(y)  = l \\ pi^-1(mu(pi(l), pi(lx), pi((lx)y)))
    eta_l(x)(y) = (l xi_l(y)(x)) \\ ((ly)x)
    R(lambda)(x, y) = (eta_l(y)(x), xi_l(x)(y))

and this family satisfies the dynamical YB equation exactly when mu is 3D
compatible, in both directions; the verifiers make both directions testable.

Inverse direction: a parametric YB map (u, v) on (L, *) with the invariance
v(x,y) * u(x,y) = x * y induces the 3D-compatible ternary

    mu(a, b, c) = a * v(a \\ b, b \\ c).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import (DynamicalYBMap, ParametricTernarySystem, ParametricYBMap,
                   VerificationReport, check_3d_consistency, check_invariance,
                   check_symmetry, maps_equal_pointwise,
                   ternaries_equal_pointwise)
from .errors import IncompatibleStructureError, PreconditionFailedError
from .field import FieldConfig
from .quasigroup import QuasigroupStructure, builtin, reversed_group

RECIPE_KINDS = ("group", "abelian_additive", "division", "loop",
                "abelian_general")

#: Sample budget for construction precondition checks.
PRECHECK_SAMPLES = 64


@dataclass(frozen=True)
class ConstructionRecipe:
    kind: str
    source: str
    precondition: str
    verdicts: tuple
    supported: bool


def construction_quasigroup(kind: str, q: Optional[QuasigroupStructure]) -> QuasigroupStructure:
    """The left quasigroup (L, *) a recipe kind builds on."""
    if kind == "group":
        if q is None or not q.is_group:
            raise IncompatibleStructureError("kind 'group' needs a group structure")
        return q
    if kind == "abelian_additive":
        return builtin("additive")
    if kind == "division":
        return builtin("division")
    if kind == "loop":
        return builtin("subtraction_loop")
    if kind == "abelian_general":
        if q is None or not (q.is_group and q.is_abelian):
            raise IncompatibleStructureError(
                "kind 'abelian_general' needs an Abelian group")
        return reversed_group(q)
    raise IncompatibleStructureError(f"unknown construction kind {kind!r}")


def _symmetry_for(kind: str, q: QuasigroupStructure):
    if kind in ("group", "abelian_additive"):
        base = q if kind == "group" else builtin("additive")
        return ("homogeneous", base)
    if kind == "division":
        return ("division", builtin("division"))
    if kind == "loop":
        return ("loop", builtin("subtraction_loop"))
    return ("abelian", q)


def yb_from_ternary(t: ParametricTernarySystem, kind: str,
                    q: Optional[QuasigroupStructure], cfg: FieldConfig,
                    *, strict: bool = True,
                    precheck_samples: int = PRECHECK_SAMPLES) -> ParametricYBMap:
    """Build the YB map a symmetric 3D-compatible ternary system induces.

    In strict mode the 3D-consistency check and the kind's symmetry check run
    first on ``precheck_samples`` samples and a Fail aborts with
    :class:`PreconditionFailedError`; with ``strict=False`` the construction
    proceeds regardless and the failing verdicts are recorded on the recipe
    (``supported=False``).
    """
    g = construction_quasigroup(kind, q)
    sym_kind, sym_q = _symmetry_for(kind, q if q is not None else g)

    verdicts = []
    reports = []
    for rep in (check_3d_consistency(t, precheck_samples, cfg),
                check_symmetry(t, sym_kind, sym_q, precheck_samples, cfg)):
        verdicts.append(f"{rep.identity}: {rep.verdict}")
        reports.append(rep)
    supported = all(r.verdict == "Pass" for r in reports)
    if strict and not supported:
        bad = next(r for r in reports if r.verdict != "Pass")
        raise PreconditionFailedError(
            f"precondition for kind {kind!r} failed: {bad.identity}", bad)

    e = g.left_identity

    def func(x, alpha, y, beta):
        s = g.op(x, y)
        w = t(alpha, beta, e, x, s)
        return g.ldiv(w, s), g.ldiv(e, w)

    recipe = ConstructionRecipe(
        kind=kind, source=t.name,
        precondition="3d-consistency and symmetry",
        verdicts=tuple(verdicts), supported=supported)
    return ParametricYBMap(
        name=f"{kind}({t.name})", dim=1 if g.carrier.kind == "scalar" else g.carrier.dim,
        param_arity=t.param_arity, func=func, carrier=g.carrier,
        source="constructed", degree_hint=t.degree_hint * 2,
        label=f"map induced by {t.name} via the {kind} recipe", recipe=recipe)


def dynamical_yb_from_ternary(t: ParametricTernarySystem,
                              q: QuasigroupStructure, pi=None,
                              cfg: Optional[FieldConfig] = None,
                              *, strict: bool = False,
                              precheck_samples: int = PRECHECK_SAMPLES) -> DynamicalYBMap:
    """The dynamical YB map a ternary system defines on a left quasigroup.

    ``pi`` is an optional bijection given as a (forward, inverse) pair of
    callables; it defaults to the identity.  The family satisfies the
    dynamical YB equation iff the ternary is 3D compatible, so strict mode is
    off by default: feeding a non-compatible ternary through is exactly how
    the only-if direction is exercised.
    """
    fwd, inv = pi if pi is not None else (lambda v: v, lambda v: v)
    supported = True
    verdicts = ()
    if strict:
        if cfg is None:
            raise ValueError("strict mode needs a FieldConfig for the precheck")
        rep = check_3d_consistency(t, precheck_samples, cfg)
        verdicts = (f"{rep.identity}: {rep.verdict}",)
        supported = rep.verdict == "Pass"
        if not supported:
            raise PreconditionFailedError("ternary is not 3D compatible", rep)

    def xi(lam, x, alpha, y, beta):
        lx = q.op(lam, x)
        return q.ldiv(lam, inv(t(alpha, beta, fwd(lam), fwd(lx), fwd(q.op(lx, y)))))

    def func(lam, x, alpha, y, beta):
        v = xi(lam, x, alpha, y, beta)
        u = q.ldiv(q.op(lam, v), q.op(q.op(lam, x), y))
        return u, v

    return DynamicalYBMap(
        name=f"dynamical({t.name}, {q.name})", quasigroup=q,
        param_arity=t.param_arity, func=func,
        label=f"dynamical map from {t.name} on {q.name}")


def ternary_from_yb(r: ParametricYBMap, q: QuasigroupStructure,
                    cfg: FieldConfig, *, strict: bool = True,
                    precheck_samples: int = PRECHECK_SAMPLES) -> ParametricTernarySystem:
    """mu(a, b, c) = a * v(a \\ b, b \\ c) from an invariant YB map.

    Requires the invariance v(x,y) * u(x,y) = x * y over ``q`` (checked on
    samples in strict mode).  The resulting ternary is 3D compatible; that
    claim is a test obligation, not an assumption.
    """
    rep = check_invariance(r, q, precheck_samples, cfg)
    supported = rep.verdict == "Pass"
    if strict and not supported:
        raise PreconditionFailedError(
            f"map {r.name} fails the invariance condition on {q.name}", rep)

    def func(alpha, beta, a, b, c):
        _, v = r(q.ldiv(a, b), alpha, q.ldiv(b, c), beta)
        return q.op(a, v)

    recipe = ConstructionRecipe(
        kind="inverse_theorem", source=r.name,
        precondition=f"invariance over {q.name}",
        verdicts=(f"{rep.identity}: {rep.verdict}",), supported=supported)
    return ParametricTernarySystem(
        name=f"ternary({r.name})", param_arity=r.param_arity, func=func,
        carrier=q.carrier, source="constructed", degree_hint=r.degree_hint * 2,
        label=f"ternary induced by {r.name} on {q.name}", recipe=recipe)


def ternary_from_dynamical(r: DynamicalYBMap) -> ParametricTernarySystem:
    """Inverse construction for a genuinely lambda-dependent family:
    mu(a, b, c) = a * xi_a(a \\ b)(b \\ c), reading xi off the second
    component of R(lambda)."""
    q = r.quasigroup

    def func(alpha, beta, a, b, c):
        _, v = r(a, q.ldiv(a, b), alpha, q.ldiv(b, c), beta)
        return q.op(a, v)

    return ParametricTernarySystem(
        name=f"ternary({r.name})", param_arity=r.param_arity, func=func,
        carrier=q.carrier, source="constructed",
        label=f"ternary induced by the dynamical family {r.name}")


def roundtrip_check(obj, q: Optional[QuasigroupStructure], kind: str,
                    samples: int, cfg: FieldConfig) -> VerificationReport:
    """ternary -> map -> ternary (or map -> ternary -> map) closes pointwise."""
    g = construction_quasigroup(kind, q)
    if isinstance(obj, ParametricTernarySystem):
        r = yb_from_ternary(obj, kind, q, cfg)
        back = ternary_from_yb(r, g, cfg)
        return ternaries_equal_pointwise(obj, back, samples, cfg)
    if isinstance(obj, ParametricYBMap):
        t = ternary_from_yb(obj, g, cfg)
        back = yb_from_ternary(t, kind, q, cfg)
        return maps_equal_pointwise(obj, back, samples, cfg)
    raise TypeError("roundtrip_check needs a ternary system or a YB map")

"""Central objects and verifier engines.

The objects are evaluable closures over exact field elements:

* :class:`ParametricYBMap` -- a map (x, alpha, y, beta) -> (u, v) on X x X,
  each factor carrying its own parameter vector;
* :class:`DynamicalYBMap` -- a family R(lambda) on a quasigroup, with the
  parameter shift phi(lambda, x) = lambda * x;
* :class:`ParametricTernarySystem` -- an operation (alpha, beta, a, b, c) -> w,
  the per-face rule of an equation on the consistency cube.

Each verifier samples random instances of its defining identity and compares
both sides exactly.  A pole hit (ZeroDivisionError, including singular-matrix
inversions) is not a failure: the whole tuple is resampled, up to a hard cap
per test case, after which that case counts as inconclusive.  Over a prime
field a Pass verdict carries the Schwartz-Zippel false-accept bound D/p,
where D is a conservative per-object total-degree estimate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Any, Callable, Optional

from .carrier import Carrier, scalar_carrier
from .errors import IncompatibleStructureError, SamplingExhausted
from .field import Field, FieldConfig, derive_rng, make_field
from .matrix import SquareMatrix
from .quasigroup import QuasigroupStructure, builtin

#: Resamples allowed per test case before it is declared inconclusive.
RESAMPLE_CAP = 50

#: Degree estimate used for DSL-supplied objects with no configured bound.
DEFAULT_DEGREE_HINT = 64

PASS, FAIL, INCONCLUSIVE = "Pass", "Fail", "Inconclusive"


# ---------------------------------------------------------------------------
# domain objects


@dataclass(frozen=True)
class ParametricYBMap:
    """Evaluable parametric map (x, alpha, y, beta) -> (u, v).

    Points are bare field elements for dim 1, tuples of elements for
    dim >= 2, and ``SquareMatrix`` values on matrix carriers.  Parameters are
    bare elements for param_arity 1 and tuples otherwise.  ``func`` must be
    pure; it may raise ZeroDivisionError off its domain.
    """

    name: str
    dim: int
    param_arity: int
    func: Callable
    carrier: Carrier
    source: str = "catalog"
    degree_hint: int = DEFAULT_DEGREE_HINT
    label: str = ""
    recipe: Any = None

    def __call__(self, x, alpha, y, beta):
        return self.func(x, alpha, y, beta)


@dataclass(frozen=True)
class ParametricTernarySystem:
    """Evaluable parametric ternary operation (alpha, beta, a, b, c) -> w."""

    name: str
    param_arity: int
    func: Callable
    carrier: Carrier
    source: str = "catalog"
    degree_hint: int = DEFAULT_DEGREE_HINT
    label: str = ""
    recipe: Any = None

    def __call__(self, alpha, beta, a, b, c):
        return self.func(alpha, beta, a, b, c)


@dataclass(frozen=True)
class DynamicalYBMap:
    """Family R(lambda)(x, y) = (u, v) on a quasigroup.

    The shift map phi is the quasigroup operation itself,
    phi(lambda, x) = lambda * x.
    """

    name: str
    quasigroup: QuasigroupStructure
    param_arity: int
    func: Callable  # (lam, x, alpha, y, beta) -> (u, v)
    label: str = ""

    def __call__(self, lam, x, alpha, y, beta):
        return self.func(lam, x, alpha, y, beta)

    def phi(self, lam, x):
        return self.quasigroup.op(lam, x)


# ---------------------------------------------------------------------------
# reports


@dataclass
class Failure:
    inputs: str
    lhs: str
    rhs: str

    def to_dict(self):
        return {"inputs": self.inputs, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class VerificationReport:
    identity: str
    field: str
    samples_requested: int
    samples_used: int
    resampled: int
    failures: list = dc_field(default_factory=list)
    verdict: str = PASS
    confidence: Optional[str] = None
    label: str = ""

    def to_dict(self):
        return {
            "identity": self.identity,
            "field": self.field,
            "samples": {
                "requested": self.samples_requested,
                "used": self.samples_used,
                "resampled": self.resampled,
            },
            "failures": [f.to_dict() for f in self.failures],
            "verdict": self.verdict,
            "confidence": self.confidence,
            "label": self.label,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def summary(self) -> str:
        parts = [f"[{self.verdict}] {self.identity}"]
        if self.label:
            parts.append(f"({self.label})")
        parts.append(f"field={self.field} samples={self.samples_used}/"
                     f"{self.samples_requested} resampled={self.resampled}")
        if self.confidence:
            parts.append(self.confidence)
        lines = ["  ".join(parts)]
        for f in self.failures[:3]:
            lines.append(f"    witness: {f.inputs}")
            lines.append(f"      lhs = {f.lhs}")
            lines.append(f"      rhs = {f.rhs}")
        return "\n".join(lines)


def format_value(v) -> str:
    if isinstance(v, tuple):
        return "(" + ", ".join(format_value(x) for x in v) + ")"
    return str(v)


def format_inputs(**named) -> str:
    return ", ".join(f"{k}={format_value(v)}" for k, v in named.items())


# ---------------------------------------------------------------------------
# the sampling engine


def split_budget(samples: int, jobs: int) -> list[int]:
    jobs = max(1, min(jobs, samples))
    base, extra = divmod(samples, jobs)
    return [base + (1 if i < extra else 0) for i in range(jobs)]


def run_cases(identity: str, cfg: FieldConfig, samples: int, case,
              *, jobs: int = 1, degree_hint: Optional[int] = None,
              label: str = "") -> VerificationReport:
    """Run ``case(field, rng) -> (ok, (inputs, lhs, rhs))`` ``samples`` times.

    The sample budget is split across ``jobs`` logical worker streams, each
    with an independent RNG derived from (cfg.rng_seed, stream); stream
    reports merge in order, so a given (seed, jobs) pair is fully
    deterministic.  Streams run sequentially: evaluation is pure Python and
    the engine favors reproducibility over wall-clock parallelism.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    fld = make_field(cfg)
    report = VerificationReport(
        identity=identity, field=fld.describe(), samples_requested=samples,
        samples_used=0, resampled=0, label=label)
    inconclusive = 0
    done = False
    for stream, quota in enumerate(split_budget(samples, jobs)):
        rng = derive_rng(cfg.rng_seed, stream)
        for _ in range(quota):
            attempts = 0
            while True:
                try:
                    ok, detail = case(fld, rng)
                except ZeroDivisionError:
                    attempts += 1
                    report.resampled += 1
                    if attempts > RESAMPLE_CAP:
                        inconclusive += 1
                        break
                    continue
                except SamplingExhausted:
                    inconclusive += 1
                    break
                report.samples_used += 1
                if not ok:
                    report.failures.append(Failure(*detail))
                    done = True  # first witness is enough
                break
            if done:
                break
        if done:
            break
    if report.failures:
        report.verdict = FAIL
    elif inconclusive:
        report.verdict = INCONCLUSIVE
    else:
        report.verdict = PASS
    if fld.kind == "fp" and report.verdict == PASS:
        d = degree_hint if degree_hint is not None else DEFAULT_DEGREE_HINT
        report.confidence = (f"Schwartz-Zippel: false-accept probability "
                             f"per sample <= {d}/{fld.p}")
    return report


def sample_params(fld: Field, rng, arity: int):
    """One parameter point: nonzero components, bare for arity 1."""
    vals = tuple(fld.sample_nonzero(rng) for _ in range(arity))
    return vals[0] if arity == 1 else vals


# ---------------------------------------------------------------------------
# Yang-Baxter verifiers


def _apply12(r, state, pa, pb):
    x, y, z = state
    u, v = r(x, pa, y, pb)
    return (u, v, z)


def _apply13(r, state, pa, pc):
    x, y, z = state
    u, w = r(x, pa, z, pc)
    return (u, y, w)


def _apply23(r, state, pb, pc):
    x, y, z = state
    v, w = r(y, pb, z, pc)
    return (x, v, w)


def check_yb(r: ParametricYBMap, samples: int, cfg: FieldConfig,
             *, equal_params: bool = False, jobs: int = 1) -> VerificationReport:
    """R23 R13 R12 = R12 R13 R23 on X^3, with per-factor parameters.

    Factor i carries parameter p_i and R_ij acts with the pair (p_i, p_j);
    ``equal_params`` restricts to p1 = p2 = p3 (the plain, non-parametric
    reading).
    """

    def case(fld, rng):
        x = r.carrier.sample(fld, rng)
        y = r.carrier.sample(fld, rng)
        z = r.carrier.sample(fld, rng)
        pa = sample_params(fld, rng, r.param_arity)
        pb = pa if equal_params else sample_params(fld, rng, r.param_arity)
        pc = pa if equal_params else sample_params(fld, rng, r.param_arity)
        lhs = _apply23(r, _apply13(r, _apply12(r, (x, y, z), pa, pb), pa, pc), pb, pc)
        rhs = _apply12(r, _apply13(r, _apply23(r, (x, y, z), pb, pc), pa, pc), pa, pb)
        ok = lhs == rhs
        detail = (format_inputs(x=x, y=y, z=z, alpha=pa, beta=pb, gamma=pc),
                  format_value(lhs), format_value(rhs))
        return ok, detail

    return run_cases(f"yb({r.name})", cfg, samples, case, jobs=jobs,
                     degree_hint=r.degree_hint, label=r.label)


def check_involution(r: ParametricYBMap, samples: int, cfg: FieldConfig,
                     *, jobs: int = 1) -> VerificationReport:
    """Pass means R o R = id at every sample; Fail carries the witness."""

    def case(fld, rng):
        x = r.carrier.sample(fld, rng)
        y = r.carrier.sample(fld, rng)
        pa = sample_params(fld, rng, r.param_arity)
        pb = sample_params(fld, rng, r.param_arity)
        u, v = r(x, pa, y, pb)
        uu, vv = r(u, pa, v, pb)
        ok = (uu, vv) == (x, y)
        detail = (format_inputs(x=x, y=y, alpha=pa, beta=pb),
                  format_value((uu, vv)), format_value((x, y)))
        return ok, detail

    return run_cases(f"involution({r.name})", cfg, samples, case, jobs=jobs,
                     degree_hint=r.degree_hint, label=r.label)


def check_invariance(r: ParametricYBMap, q: QuasigroupStructure, samples: int,
                     cfg: FieldConfig, *, jobs: int = 1) -> VerificationReport:
    """v(x,y) * u(x,y) = x * y in the quasigroup operation."""
    if r.carrier.kind != q.carrier.kind or (r.carrier.kind == "scalar" and r.dim != 1):
        raise IncompatibleStructureError(
            f"map {r.name} (carrier {r.carrier.describe()}) does not live on "
            f"quasigroup {q.name}")

    def case(fld, rng):
        x = q.carrier.sample(fld, rng)
        y = q.carrier.sample(fld, rng)
        pa = sample_params(fld, rng, r.param_arity)
        pb = sample_params(fld, rng, r.param_arity)
        u, v = r(x, pa, y, pb)
        lhs = q.op(v, u)
        rhs = q.op(x, y)
        detail = (format_inputs(x=x, y=y, alpha=pa, beta=pb),
                  format_value(lhs), format_value(rhs))
        return lhs == rhs, detail

    return run_cases(f"invariance({r.name}, {q.name})", cfg, samples, case,
                     jobs=jobs, degree_hint=r.degree_hint, label=r.label)


# ---------------------------------------------------------------------------
# ternary-system verifiers


def check_3d_consistency(t: ParametricTernarySystem, samples: int,
                         cfg: FieldConfig, *, jobs: int = 1) -> VerificationReport:
    """Both cube identities: w3 and w4 each agree along their two routes.

    With w1 = mu_{a,b}(A,B,C) and w2 = mu_{b,c}(B,C,D):
        w3: mu_{b,c}(A, w1, mu_{a,c}(w1, C, D)) = mu_{a,c}(A, B, w2)
        w4: mu_{a,b}(mu_{a,c}(A, B, w2), w2, D) = mu_{a,c}(w1, C, D)
    """

    def case(fld, rng):
        a = t.carrier.sample(fld, rng)
        b = t.carrier.sample(fld, rng)
        c = t.carrier.sample(fld, rng)
        d = t.carrier.sample(fld, rng)
        pa = sample_params(fld, rng, t.param_arity)
        pb = sample_params(fld, rng, t.param_arity)
        pc = sample_params(fld, rng, t.param_arity)
        w1 = t(pa, pb, a, b, c)
        w2 = t(pb, pc, b, c, d)
        w3_a = t(pb, pc, a, w1, t(pa, pc, w1, c, d))
        w3_b = t(pa, pc, a, b, w2)
        w4_a = t(pa, pb, t(pa, pc, a, b, w2), w2, d)
        w4_b = t(pa, pc, w1, c, d)
        ok = w3_a == w3_b and w4_a == w4_b
        detail = (format_inputs(a=a, b=b, c=c, d=d, alpha=pa, beta=pb, gamma=pc),
                  format_value((w3_a, w4_a)), format_value((w3_b, w4_b)))
        return ok, detail

    return run_cases(f"3d-consistency({t.name})", cfg, samples, case, jobs=jobs,
                     degree_hint=t.degree_hint, label=t.label)


SYMMETRY_KINDS = ("homogeneous", "division", "loop", "abelian")


def check_symmetry(t: ParametricTernarySystem, kind: str,
                   q: QuasigroupStructure, samples: int, cfg: FieldConfig,
                   *, jobs: int = 1) -> VerificationReport:
    """Sampled two-sided comparison of one symmetry identity.

    homogeneous: mu(l*a, l*b, l*c) = l * mu(a,b,c) in q's operation
    division:    l mu(a,b,c) = mu(a/l, l b, c/l)          (scalar field ops)
    loop:        l + mu(a,b,c) = mu(a-l, l+b, c-l)
    abelian:     l . mu(a,b,c) = mu(a . l^-1, l . b, c . l^-1) on an
                 Abelian group
    """
    if kind not in SYMMETRY_KINDS:
        raise IncompatibleStructureError(f"unknown symmetry kind {kind!r}")
    if kind == "abelian" and not (q.is_group and q.is_abelian):
        raise IncompatibleStructureError("abelian symmetry needs an Abelian group")
    if kind == "division" and q.name != "division":
        raise IncompatibleStructureError("division symmetry is stated on the "
                                         "division quasigroup")
    if kind == "loop" and q.name != "subtraction_loop":
        raise IncompatibleStructureError("loop symmetry is stated on the "
                                         "subtraction loop")

    def case(fld, rng):
        a = t.carrier.sample(fld, rng)
        b = t.carrier.sample(fld, rng)
        c = t.carrier.sample(fld, rng)
        lam = q.carrier.sample(fld, rng)
        pa = sample_params(fld, rng, t.param_arity)
        pb = sample_params(fld, rng, t.param_arity)
        if kind == "homogeneous":
            lhs = q.op(lam, t(pa, pb, a, b, c))
            rhs = t(pa, pb, q.op(lam, a), q.op(lam, b), q.op(lam, c))
        elif kind == "division":
            lhs = lam * t(pa, pb, a, b, c)
            rhs = t(pa, pb, a / lam, lam * b, c / lam)
        elif kind == "loop":
            lhs = lam + t(pa, pb, a, b, c)
            rhs = t(pa, pb, a - lam, lam + b, c - lam)
        else:  # abelian
            li = q.inv(lam)
            lhs = q.op(lam, t(pa, pb, a, b, c))
            rhs = t(pa, pb, q.op(a, li), q.op(lam, b), q.op(c, li))
        detail = (format_inputs(a=a, b=b, c=c, lam=lam, alpha=pa, beta=pb),
                  format_value(lhs), format_value(rhs))
        return lhs == rhs, detail

    return run_cases(f"symmetry[{kind}]({t.name}, {q.name})", cfg, samples,
                     case, jobs=jobs, degree_hint=t.degree_hint, label=t.label)


# ---------------------------------------------------------------------------
# dynamical Yang-Baxter verifier


def check_dynamical_yb(r: DynamicalYBMap, samples: int, cfg: FieldConfig,
                       *, jobs: int = 1,
                       degree_hint: Optional[int] = None) -> VerificationReport:
    """The dynamical YB equation with shifted dynamical parameters:

        R23(l) R13(phi(l, X2)) R12(l) = R12(phi(l, X3)) R13(l) R23(phi(l, X1))

    where X_i is the i-th coordinate of the tuple at the moment the factor
    acts, phi(l, x) = l * x, and factor i carries the YB parameter p_i.
    """
    q = r.quasigroup

    def case(fld, rng):
        x = q.carrier.sample(fld, rng)
        y = q.carrier.sample(fld, rng)
        z = q.carrier.sample(fld, rng)
        lam = q.carrier.sample(fld, rng)
        pa = sample_params(fld, rng, r.param_arity)
        pb = sample_params(fld, rng, r.param_arity)
        pc = sample_params(fld, rng, r.param_arity)

        # left side, innermost factor first
        x1, y1 = r(lam, x, pa, y, pb)
        x2, z1 = r(r.phi(lam, y1), x1, pa, z, pc)
        y2, z2 = r(lam, y1, pb, z1, pc)
        lhs = (x2, y2, z2)

        # right side
        y1r, z1r = r(r.phi(lam, x), y, pb, z, pc)
        x1r, z2r = r(lam, x, pa, z1r, pc)
        x2r, y2r = r(r.phi(lam, z2r), x1r, pa, y1r, pb)
        rhs = (x2r, y2r, z2r)

        detail = (format_inputs(lam=lam, x=x, y=y, z=z, alpha=pa, beta=pb, gamma=pc),
                  format_value(lhs), format_value(rhs))
        return lhs == rhs, detail

    return run_cases(f"dynamical-yb({r.name})", cfg, samples, case, jobs=jobs,
                     degree_hint=degree_hint, label=r.label)


def lift_to_dynamical(r: ParametricYBMap, q: QuasigroupStructure) -> DynamicalYBMap:
    """A plain parametric YB map read as a (constant in lambda) dynamical map."""
    return DynamicalYBMap(
        name=f"lift({r.name})", quasigroup=q, param_arity=r.param_arity,
        func=lambda lam, x, a, y, b: r(x, a, y, b), label=r.label)


# ---------------------------------------------------------------------------
# pointwise equality of evaluable objects


def maps_equal_pointwise(r1: ParametricYBMap, r2: ParametricYBMap,
                         samples: int, cfg: FieldConfig) -> VerificationReport:
    """Exact agreement of two maps at sampled (x, alpha, y, beta)."""
    if (r1.dim, r1.param_arity) != (r2.dim, r2.param_arity):
        raise IncompatibleStructureError(
            f"{r1.name} and {r2.name} have different shapes")

    def case(fld, rng):
        x = r1.carrier.sample(fld, rng)
        y = r1.carrier.sample(fld, rng)
        pa = sample_params(fld, rng, r1.param_arity)
        pb = sample_params(fld, rng, r1.param_arity)
        lhs = r1(x, pa, y, pb)
        rhs = r2(x, pa, y, pb)
        detail = (format_inputs(x=x, y=y, alpha=pa, beta=pb),
                  format_value(lhs), format_value(rhs))
        return lhs == rhs, detail

    return run_cases(f"pointwise({r1.name} == {r2.name})", cfg, samples, case,
                     degree_hint=max(r1.degree_hint, r2.degree_hint))


def ternaries_equal_pointwise(t1: ParametricTernarySystem,
                              t2: ParametricTernarySystem,
                              samples: int, cfg: FieldConfig) -> VerificationReport:
    if t1.param_arity != t2.param_arity:
        raise IncompatibleStructureError(
            f"{t1.name} and {t2.name} have different parameter arities")

    def case(fld, rng):
        a = t1.carrier.sample(fld, rng)
        b = t1.carrier.sample(fld, rng)
        c = t1.carrier.sample(fld, rng)
        pa = sample_params(fld, rng, t1.param_arity)
        pb = sample_params(fld, rng, t1.param_arity)
        lhs = t1(pa, pb, a, b, c)
        rhs = t2(pa, pb, a, b, c)
        detail = (format_inputs(a=a, b=b, c=c, alpha=pa, beta=pb),
                  format_value(lhs), format_value(rhs))
        return lhs == rhs, detail

    return run_cases(f"pointwise({t1.name} == {t2.name})", cfg, samples, case,
                     degree_hint=max(t1.degree_hint, t2.degree_hint))


def scalar_yb_map(name: str, func: Callable, *, param_arity: int = 1,
                  nonzero: bool = False, degree_hint: int = DEFAULT_DEGREE_HINT,
                  source: str = "catalog", label: str = "") -> ParametricYBMap:
    """Convenience constructor for one-component maps."""
    return ParametricYBMap(
        name=name, dim=1, param_arity=param_arity, func=func,
        carrier=scalar_carrier(1, nonzero=nonzero), source=source,
        degree_hint=degree_hint, label=label)


def scalar_ternary(name: str, func: Callable, *, param_arity: int = 1,
                   nonzero: bool = False, degree_hint: int = DEFAULT_DEGREE_HINT,
                   source: str = "catalog", label: str = "") -> ParametricTernarySystem:
    return ParametricTernarySystem(
        name=name, param_arity=param_arity, func=func,
        carrier=scalar_carrier(1, nonzero=nonzero), source=source,
        degree_hint=degree_hint, label=label)

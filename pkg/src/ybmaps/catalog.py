"""Named registry of the concrete maps, ternary systems, and Lax matrices.

Every entry records which checks it is expected to pass (or, for the
non-involutive maps, expected to fail), so ``run_all`` is the golden
regression sweep: it runs each expectation's verifier and compares verdicts.

Closed forms are hard-coded closures for speed; each scalar closed form also
exists as a definition-file fixture under ``tests/fixtures`` and the test
suite confirms the two agree pointwise, which guards transcription slips in
both directions.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .core import (ParametricTernarySystem, ParametricYBMap,
                   check_3d_consistency, check_invariance, check_involution,
                   check_symmetry, check_yb, scalar_ternary, scalar_yb_map)
from .errors import UnknownEntryError
from .field import FieldConfig
from .glmatrix import (check_commutation, check_matrix_invariant,
                       check_spectral_invariants, diagonal_family, gl_ternary,
                       gl_yb_map)
from .lax import check_refactorization, check_strongness
from .quasigroup import builtin
from .reduce import case_one_lax, case_one_map

#: Free constant used by the catalog's spread-substituted entries.
HOMOTOPY_R = 1


# ---------------------------------------------------------------------------
# closed forms


def make_adler():
    def func(x, a, y, b):
        s = (a - b) / (x + y)
        return y + s, x - s
    return scalar_yb_map("adler", func, degree_hint=32,
                         label="Adler map (discrete KdV on the line)")


def make_h2():
    def func(x, a, y, b):
        n1 = a * x * y + (b - a) * x - b
        n2 = b * x * y + (a - b) * y - a
        return y * n1 / n2, x * n2 / n1
    return scalar_yb_map("h2", func, nonzero=True, degree_hint=64,
                         label="H_II quadrirational map on the punctured line")


def make_f4():
    def func(x, a, y, b):
        t = 1 + (a - b) / (x - y)
        return y * t, x * t
    return scalar_yb_map("f4", func, nonzero=True, degree_hint=32,
                         label="F_IV quadrirational map")


def make_f5():
    def func(x, a, y, b):
        s = (a - b) / (x - y)
        return y + s, x + s
    return scalar_yb_map("f5", func, degree_hint=32,
                         label="F_V quadrirational map")


def make_fourparam():
    def func(x, alpha, y, beta):
        a1, a2 = alpha
        b1, b2 = beta
        phi = (b1 * x + a2 * y) / (a1 * x + b2 * y)
        return y * phi, x * phi
    return scalar_yb_map("fourparam", func, param_arity=2, nonzero=True,
                         degree_hint=64,
                         label="four-parameter non-involutive map on the "
                               "punctured line")


def make_fourparam_involution():
    def func(x, alpha, y, beta):
        a1, a2 = alpha
        b1, b2 = beta
        n = a1 + b2 * x * y
        d = b1 + a2 * x * y
        return y * n / d, x * d / n
    return scalar_yb_map("fourparam_involution", func, param_arity=2,
                         nonzero=True, degree_hint=64,
                         label="companion four-parameter involutive map")


def make_mkdv_toda_homotopy(r: int = HOMOTOPY_R):
    def func(x, a, y, b):
        phi = ((b - r) * x + (a + r) * y) / ((a - r) * x + (b + r) * y)
        return y * phi, x * phi
    return scalar_yb_map("mkdv_toda_homotopy", func, nonzero=True,
                         degree_hint=64,
                         label=f"spread-substituted four-parameter map "
                               f"(free constant r={r})")


def make_q1_additive_map():
    def func(x, a, y, b):
        d = b * x + a * y
        return a * y * (x + y) / d, b * x * (x + y) / d
    return scalar_yb_map("q1_additive", func, degree_hint=32,
                         label="map induced by the Q1 ternary on the "
                               "additive line")


def make_q1_ternary():
    def func(al, be, a, b, c):
        return (al * a * (b - c) + be * c * (a - b)) / (al * (b - c) + be * (a - b))
    return scalar_ternary("q1_ternary", func, degree_hint=32,
                          label="Q1 lattice equation solved for the fourth "
                                "vertex")


def make_dkdv_ternary():
    def func(al, be, a, b, c):
        return b - (al - be) / (c - a)
    return scalar_ternary("dkdv_ternary", func, degree_hint=32,
                          label="discrete KdV equation solved for the fourth "
                                "vertex")


def make_fourparam_ternary():
    def func(alpha, beta, a, b, c):
        a1, a2 = alpha
        b1, b2 = beta
        return b * (b1 * a + a2 * c) / (a1 * a + b2 * c)
    return scalar_ternary("fourparam_ternary", func, param_arity=2,
                          nonzero=True, degree_hint=64,
                          label="four-parameter quad-graph equation on the "
                                "punctured line")


def make_homotopy_ternary(r: int = HOMOTOPY_R):
    def func(al, be, a, b, c):
        return b * ((be - r) * a + (al + r) * c) / ((al - r) * a + (be + r) * c)
    return scalar_ternary("homotopy_ternary", func, nonzero=True,
                          degree_hint=64,
                          label=f"modified-KdV/Toda homotopy equation "
                                f"(free constant r={r})")


def make_fourparam_lax():
    from .matrix import SquareMatrix
    from .lax import LaxMatrix

    def func(x, alpha, zeta):
        a1, a2 = alpha
        return SquareMatrix(((-(a1 * zeta), x), (1 / x, -(a2 * zeta))))

    return LaxMatrix("fourparam_lax", order=2, degree=1, func=func,
                     degree_hint=64,
                     label="strong Lax matrix of the four-parameter map")


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Expectations:
    yb: Optional[bool] = None
    threed: Optional[bool] = None
    symmetry: tuple = ()      # (kind, quasigroup-name) pairs
    invariance: tuple = ()    # quasigroup names
    involution: Optional[bool] = None
    refactorization: Optional[str] = None  # partner map entry
    strongness: Optional[str] = None
    gl_invariants: bool = False


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str  # ybmap | ternary | lax | glmap | glternary
    obj: object
    param_arity: int
    contexts: tuple = ()
    expects: Expectations = dc_field(default_factory=Expectations)
    label: str = ""


def _entries() -> dict:
    diag = diagonal_family()
    table = [
        CatalogEntry("adler", "ybmap", make_adler(), 1, ("additive",),
                     Expectations(yb=True, invariance=("additive",),
                                  involution=True)),
        CatalogEntry("h2", "ybmap", make_h2(), 1, ("multiplicative",),
                     Expectations(yb=True, invariance=("multiplicative",),
                                  involution=True)),
        CatalogEntry("f4", "ybmap", make_f4(), 1, ("division",),
                     Expectations(yb=True, invariance=("division",),
                                  involution=True)),
        CatalogEntry("f5", "ybmap", make_f5(), 1, ("subtraction_loop",),
                     Expectations(yb=True, invariance=("subtraction_loop",),
                                  involution=True)),
        CatalogEntry("fourparam", "ybmap", make_fourparam(), 2, ("division",),
                     Expectations(yb=True, invariance=("division",),
                                  involution=False)),
        CatalogEntry("fourparam_involution", "ybmap",
                     make_fourparam_involution(), 2, ("multiplicative",),
                     Expectations(yb=True, invariance=("multiplicative",),
                                  involution=True)),
        CatalogEntry("mkdv_toda_homotopy", "ybmap", make_mkdv_toda_homotopy(),
                     1, ("division",),
                     Expectations(yb=True, invariance=("division",),
                                  involution=False)),
        CatalogEntry("q1_additive", "ybmap", make_q1_additive_map(), 1,
                     ("additive",),
                     Expectations(yb=True, invariance=("additive",),
                                  involution=True)),
        CatalogEntry("q1_ternary", "ternary", make_q1_ternary(), 1,
                     ("additive", "multiplicative"),
                     Expectations(threed=True,
                                  symmetry=(("homogeneous", "additive"),
                                            ("homogeneous", "multiplicative")))),
        CatalogEntry("dkdv_ternary", "ternary", make_dkdv_ternary(), 1,
                     ("additive", "division", "subtraction_loop"),
                     Expectations(threed=True,
                                  symmetry=(("homogeneous", "additive"),
                                            ("division", "division"),
                                            ("loop", "subtraction_loop")))),
        CatalogEntry("fourparam_ternary", "ternary", make_fourparam_ternary(),
                     2, ("division", "multiplicative"),
                     Expectations(threed=True,
                                  symmetry=(("division", "division"),
                                            ("homogeneous", "multiplicative")))),
        CatalogEntry("homotopy_ternary", "ternary", make_homotopy_ternary(),
                     1, ("division", "multiplicative"),
                     Expectations(threed=True,
                                  symmetry=(("division", "division"),
                                            ("homogeneous", "multiplicative")))),
        CatalogEntry("fourparam_lax", "lax", make_fourparam_lax(), 2,
                     ("division",),
                     Expectations(refactorization="fourparam",
                                  strongness="fourparam")),
        CatalogEntry("case1_map", "ybmap", case_one_map(), 2, (),
                     Expectations(yb=True)),
        CatalogEntry("case1_lax", "lax", case_one_lax(), 2, (),
                     Expectations(refactorization="case1_map",
                                  strongness="case1_map")),
        CatalogEntry("gl2_map", "glmap", gl_yb_map(diag), 2,
                     ("matrix_reversed(2)",),
                     Expectations(yb=True, invariance=("matrix_reversed(2)",),
                                  gl_invariants=True)),
        CatalogEntry("gl2_ternary", "glternary", gl_ternary(diag), 2, (),
                     Expectations(threed=True)),
    ]
    entries = {}
    for e in table:
        if e.name in entries:
            raise ValueError(f"duplicate catalog name {e.name}")
        label = e.label or getattr(e.obj, "label", "")
        entries[e.name] = CatalogEntry(e.name, e.kind, e.obj, e.param_arity,
                                       e.contexts, e.expects, label)
    return entries


_REGISTRY = _entries()

#: The commuting family behind the gl2 entries, for the family checks.
GL_FAMILY = diagonal_family()


def lookup(name: str) -> CatalogEntry:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownEntryError(
            f"no catalog entry {name!r}; see list_entries()") from None


def list_entries() -> list:
    return [_REGISTRY[k] for k in _REGISTRY]


def get_map(name: str) -> ParametricYBMap:
    e = lookup(name)
    if not isinstance(e.obj, ParametricYBMap):
        raise UnknownEntryError(f"{name} is a {e.kind}, not a map")
    return e.obj


def get_ternary(name: str) -> ParametricTernarySystem:
    e = lookup(name)
    if not isinstance(e.obj, ParametricTernarySystem):
        raise UnknownEntryError(f"{name} is a {e.kind}, not a ternary system")
    return e.obj


def get_lax(name: str):
    e = lookup(name)
    if e.kind != "lax":
        raise UnknownEntryError(f"{name} is a {e.kind}, not a Lax matrix")
    return e.obj


# ---------------------------------------------------------------------------
# the regression sweep


@dataclass
class RegressionRow:
    entry: str
    check: str
    expected: str
    verdict: str
    matched: bool
    report: object

    def to_dict(self):
        return {"entry": self.entry, "check": self.check,
                "expected": self.expected, "verdict": self.verdict,
                "matched": self.matched, "report": self.report.to_dict()}


def run_all(samples: int, cfg: FieldConfig, *, jobs: int = 1,
            zeta_points: int = 3) -> list:
    """Run every expected flag's verifier and compare against expectations."""
    rows = []

    def add(entry, check, report, expected_verdict):
        rows.append(RegressionRow(entry.name, check, expected_verdict,
                                  report.verdict,
                                  report.verdict == expected_verdict, report))

    for e in list_entries():
        x = e.expects
        if x.yb is not None:
            rep = check_yb(e.obj, samples, cfg, jobs=jobs)
            add(e, "yb", rep, "Pass" if x.yb else "Fail")
        if x.threed is not None:
            rep = check_3d_consistency(e.obj, samples, cfg, jobs=jobs)
            add(e, "3d-consistency", rep, "Pass" if x.threed else "Fail")
        for kind, qname in x.symmetry:
            rep = check_symmetry(e.obj, kind, builtin(qname), samples, cfg,
                                 jobs=jobs)
            add(e, f"symmetry[{kind}]@{qname}", rep, "Pass")
        for qname in x.invariance:
            rep = check_invariance(e.obj, builtin(qname), samples, cfg,
                                   jobs=jobs)
            add(e, f"invariance@{qname}", rep, "Pass")
        if x.involution is not None:
            rep = check_involution(e.obj, samples, cfg, jobs=jobs)
            add(e, "involution", rep, "Pass" if x.involution else "Fail")
        if x.refactorization:
            partner = get_map(x.refactorization)
            rep = check_refactorization(e.obj, partner, samples, cfg,
                                        zeta_points=max(zeta_points, 3),
                                        jobs=jobs)
            add(e, f"refactorization@{x.refactorization}", rep, "Pass")
        if x.strongness:
            partner = get_map(x.strongness)
            rep = check_strongness(e.obj, partner, min(samples, 100), cfg,
                                   perturbations=10,
                                   zeta_points=max(zeta_points, 3), jobs=jobs)
            add(e, f"strongness@{x.strongness}", rep, "Pass")
        if x.gl_invariants:
            add(e, "commutation", check_commutation(GL_FAMILY, samples, cfg),
                "Pass")
            add(e, "matrix-invariant",
                check_matrix_invariant(GL_FAMILY, samples, cfg), "Pass")
            add(e, "spectral-invariants",
                check_spectral_invariants(GL_FAMILY, samples, cfg), "Pass")
    return rows

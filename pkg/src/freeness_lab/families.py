"""Named curve families with their base-curve data and expected invariants.

``make_family(name, k)`` returns the defining polynomial (over Q by default,
or any other field), the geometry of the base curve needed for Kummer
predictions, and closed-form expectations used by the tests and the CLI.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .algebra import QQ, DivisionNotExact, Field, HomPoly, kummer_pullback
from .freeness import CurveClass
from .gb import SyzygyVector, make_vector
from .kummer import BaseCurve, BaseSingularity

__all__ = [
    "FAMILIES",
    "FamilyDescriptor",
    "ExpectedInvariants",
    "GoldenSyzygies",
    "make_family",
    "base_curve",
    "golden_syzygies",
    "twisted_syzygy_table",
    "stated_axis_discrepancies",
]

log = logging.getLogger(__name__)

FAMILIES = ("c5k", "c4k", "c2k", "c49", "c49gen", "d5")
FIXED = ("c49", "c49gen", "d5")
C49_PRIME = 1666666649


@dataclass(frozen=True)
class ExpectedInvariants:
    curve_class: Optional[CurveClass]
    exponents: Optional[tuple[int, ...]]
    tau: Optional[int]
    genus: Optional[int] = None
    components: Optional[int] = None
    branch_counts: dict = dc_field(default_factory=dict)
    relation_multidegree: Optional[tuple[int, int, int]] = None


@dataclass(frozen=True)
class FamilyDescriptor:
    name: str
    k: int
    poly: HomPoly
    base: Optional[BaseCurve]
    expected: ExpectedInvariants
    notes: tuple[str, ...] = ()

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def base_singularities(self) -> tuple[BaseSingularity, ...]:
        return self.base.points if self.base else ()

    @property
    def punctures(self) -> list[tuple[int, int, int]]:
        return self.base.punctures() if self.base else []


def _base_poly(name: str, field: Field) -> HomPoly:
    x, y, z = HomPoly.variables(field)
    c = lambda n: field(n)
    if name == "c5k":
        return (y * z - x * x) ** 2 * y - x ** 5
    if name == "c4k":
        return (y * z - x * x) ** 2 - x ** 3 * y
    if name == "c2k":
        return x * x + y * y + z * z - (x * y + x * z + y * z).scale(c(2))
    if name == "d5":
        return y ** 3 * z ** 2 - x ** 5
    raise ValueError(f"{name} is not a Kummer family")


def _c49_parts(field: Field):
    x, y, z = HomPoly.variables(field)
    f1 = x ** 3 * z + y ** 4
    f13 = f1 ** 3 * y + x ** 13
    f49 = (f13 ** 4 - f1 ** 13).divide_monomial((3, 0, 0))
    return f1, f13, f49


# Hand-stated axis intersection numbers for these curves.  They are only
# compared against the computed values; the computed ones are always used.
STATED_AXIS_DATA = {
    "c5k": {"A4 vertex": {"L_z": 5}},
}
_warned: set = set()


def stated_axis_discrepancies(curve: BaseCurve) -> list[tuple[str, str, int, int]]:
    """(label, axis, stated, computed) for each stated number that differs
    from the computed one; each difference is logged as a warning."""
    out = []
    stated = STATED_AXIS_DATA.get(curve.name, {})
    for p in curve.points:
        for axis, value in stated.get(p.label, {}).items():
            computed = dict(zip(p.location.axes, p.axis_mults)).get(axis, 0)
            if computed != value:
                if (curve.name, p.label, axis) not in _warned:
                    _warned.add((curve.name, p.label, axis))
                    log.warning("%s, %s: stated intersection with %s is %d, computed %d; using %d",
                                curve.name, p.label, axis, value, computed, computed)
                out.append((p.label, axis, value, computed))
    return out


def base_curve(name: str, field: Field = QQ) -> Optional[BaseCurve]:
    """Points of the k = 1 curve on the coordinate triangle and its singular
    points.  Milnor numbers are those of the named germs (A_2, A_4, E_8);
    intersection numbers with the axes are computed from the polynomial."""
    if name in ("c49", "c49gen"):
        return None
    f = _base_poly(name, field)
    on = BaseSingularity.on_curve
    if name == "c5k":
        pts = (
            on(f, (0, 1, 0), 4, label="A4 vertex"),
            on(f, (0, 0, 1), 8, label="E8 vertex"),
            on(f, (1, 1, 0), 0, label="transversal point on L_z"),
        )
    elif name == "c4k":
        pts = (
            on(f, (0, 0, 1), 4, label="A4 vertex"),
            on(f, (0, 1, 0), 2, label="A2 vertex"),
            on(f, (1, 1, 0), 0, label="transversal point on L_z"),
        )
    elif name == "c2k":
        pts = (
            on(f, (0, 1, 1), 0, label="tangency with L_x"),
            on(f, (1, 0, 1), 0, label="tangency with L_y"),
            on(f, (1, 1, 0), 0, label="tangency with L_z"),
        )
    else:  # d5
        pts = (
            on(f, (0, 0, 1), 8, label="E8 vertex"),
            on(f, (0, 1, 0), 4, label="A4 vertex"),
        )
    curve = BaseCurve(name, f.degree, pts)
    stated_axis_discrepancies(curve)
    return curve


def _odd_even(k: int, odd, even):
    return odd if k % 2 else even


def _expected(name: str, k: int) -> ExpectedInvariants:
    if name == "c5k":
        comps = _odd_even(k, 1, 2)
        genus = _odd_even(k, (k - 1) * (k - 2) // 2, (k - 2) ** 2 // 4)
        return ExpectedInvariants(
            CurveClass.FREE, (2 * k, 3 * k - 1), 19 * k * k - 8 * k + 1, genus, comps,
            {"A4 vertex": _odd_even(k, k, 2 * k), "E8 vertex": k},
        )
    if name == "c4k":
        comps = _odd_even(k, 1, 2)
        genus = _odd_even(k, (k - 1) * (k - 2) // 2, (k - 2) ** 2 // 4)
        return ExpectedInvariants(
            CurveClass.NEARLY_FREE, (2 * k,) * 3, 6 * k * (2 * k - 1), genus, comps,
            {"A4 vertex": _odd_even(k, k, 2 * k), "A2 vertex": k}, (1, 1, 1),
        )
    if name == "c2k":
        half = k // 2
        comps = _odd_even(k, 1, 4)
        genus = _odd_even(k, (k - 1) * (k - 2) // 2, (half - 1) * (half - 2) // 2)
        per_point = _odd_even(k, 1, 2)
        return ExpectedInvariants(
            CurveClass.NEARLY_FREE, (k,) * 3, 3 * k * (k - 1), genus, comps,
            {f"tangency with {a}": per_point for a in ("L_x", "L_y", "L_z")}, (1, 1, 1),
        )
    if name == "d5":
        return ExpectedInvariants(CurveClass.NEARLY_FREE, (1, 4, 4), 12, 0, 1, {"E8 vertex": 1, "A4 vertex": 1}, (4, 1, 1))
    if name == "c49gen":
        return ExpectedInvariants(CurveClass.NEARLY_FREE, (24, 25, 25), 1727, 0, 1, {}, (2, 1, 1))
    return ExpectedInvariants(None, None, None, 0, 1)


def make_family(name: str, k: int = 1, field: Optional[Field] = None) -> FamilyDescriptor:
    if name not in FAMILIES:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    if k < 1:
        raise ValueError("k must be a positive integer")
    if name in FIXED and k != 1:
        raise ValueError(f"{name} has no parameter; use k = 1")
    if field is None:
        field = QQ
    notes: tuple[str, ...] = ()
    if name in ("c49", "c49gen"):
        f1, f13, f49 = _c49_parts(field)
        poly = f49 if name == "c49" else f49 + f13 * f1 ** 9 * HomPoly.monomial((0, 0, 0), 13, field)
        notes = (
            "rational, single singular point at [0:0:1]",
            "multiplicity sequence at [0:0:1]: [36, 12_7, 4_6] (recorded, not computed)",
        )
        if name == "c49gen":
            notes += (f"reference computations use the prime {C49_PRIME}",
                      "four branches at the singular point (recorded, not computed)")
        base = None
    else:
        poly = kummer_pullback(_base_poly(name, field), k)
        base = base_curve(name, field)
    want = {"c5k": 5 * k, "c4k": 4 * k, "c2k": 2 * k, "d5": 5, "c49": 49, "c49gen": 49}[name]
    if poly.degree != want:
        raise AssertionError(f"{name}: degree {poly.degree}, expected {want}")
    return FamilyDescriptor(name, k, poly, base, _expected(name, k), notes)


# ---------------------------------------------------------------------------
# explicit syzygies


@dataclass(frozen=True)
class GoldenSyzygies:
    vectors: tuple[SyzygyVector, ...]
    relation: Optional[tuple[HomPoly, HomPoly, HomPoly]] = None


def _c5_vectors(field: Field):
    x, y, z = HomPoly.variables(field)
    zero = HomPoly.zero(field)
    c = lambda n: field(n)
    first = (zero, y.scale(c(2)), x * x - (y * z).scale(c(3)))
    second = (
        (x * x - y * z).scale(c(2)),
        ((x * x).scale(c(5)) - (x * y).scale(c(4)) + (y * z).scale(c(15))).scale(c(2)),
        x.scale(c(8)) - z.scale(c(45)),
    )
    return first, second


def twisted_syzygy_table(field: Field = QQ) -> dict[str, tuple[tuple, list[list[HomPoly]]]]:
    """Syzygies of (u f_x, v f_y, w f_z) for f = f_5 and monomial twists.

    Maps a name to ((u, v, w), [first, second]) where each vector is the base
    vector multiplied entrywise by a diagonal of monomials.  Components may
    have different degrees; the relation is homogeneous after the twist.
    """
    x, y, z = HomPoly.variables(field)
    one = HomPoly.monomial((0, 0, 0), 1, field)
    first, second = _c5_vectors(field)
    diag = lambda vec, u, v, w: [a * b for a, b in zip(vec, (u, v, w))]
    rows = {
        "J": ((one, one, one), (one, y, one), (one, one, z)),
        "J_x": ((x, one, one), (one, y, one), (one, x, x * z)),
        "J_y": ((one, y, one), (one, one, one), (y, one, y * z)),
        "J_z": ((one, one, z), (one, y * z, one), (one, one, one)),
        "J_xy": ((x, y, one), (one, one, one), (y, x, x * y * z)),
        "J_xz": ((x, one, z), (one, y * z, one), (one, x, x)),
        "J_yz": ((one, y, z), (one, z, one), (y, one, y)),
        "J_xyz": ((x, y, z), (one, z, one), (y, x, x * y)),
    }
    return {name: (tw, [diag(first, *d1), diag(second, *d2)]) for name, (tw, d1, d2) in rows.items()}


def golden_syzygies(name: str, k: int = 1, field: Field = QQ) -> GoldenSyzygies:
    if k < 1:
        raise ValueError("k must be positive")
    x, y, z = HomPoly.variables(field)
    c = lambda n: field(n)
    if name == "c5k":
        if k != 1:
            raise ValueError("explicit c5k syzygies are only tabulated for k = 1")
        _, (a, b) = twisted_syzygy_table(field)["J"]
        return GoldenSyzygies(tuple(make_vector(v) for v in (a, b)))
    X, Y, Z = x ** k, y ** k, z ** k
    xm, ym, zm = x ** (k - 1), y ** (k - 1), z ** (k - 1)
    if name == "c4k":
        r1 = (
            Y * (X.scale(c(3)) - Z.scale(c(4))),
            (xm * y * (X.scale(c(4)) - Y.scale(c(3)))).scale(c(3)),
            xm * z * (Y.scale(c(9)) - X.scale(c(20))),
        )
        r2 = (
            -(x * ym * (X + Z.scale(c(2)))),
            -(X * X).scale(c(4)) + (X * Y).scale(c(3)) + (Y * Z).scale(c(10)),
            -(ym * z * (X.scale(c(3)) + Z.scale(c(10)))),
        )
        r3 = (
            x * Y * zm,
            (y ** (k + 1) * zm).scale(c(-3)),
            (X * X).scale(c(2)) + (Y * Z).scale(c(3)),
        )
        return GoldenSyzygies(tuple(make_vector(v) for v in (r1, r2, r3)), (x, y.scale(c(3)), z.scale(c(10))))
    if name == "c2k":
        r1 = (Y - Z, xm * y, -(xm * z))
        r2 = (-(x * ym), Z - X, ym * z)
        r3 = (x * zm, -(y * zm), X - Y)
        return GoldenSyzygies(tuple(make_vector(v) for v in (r1, r2, r3)), (x, y, z))
    raise ValueError(f"no explicit syzygies for {name!r}")

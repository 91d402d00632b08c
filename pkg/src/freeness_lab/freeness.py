"""Free / nearly free / neither, decided three ways.

Route A reads the shape of a minimal generating system of the relation
module.  Route B compares the total Tjurina number with the du Plessis-Wall
bound for the minimal relation degree.  Route C measures the torsion module
N(f) = I_f / J_f degree by degree.  A report is only produced when all three
verdicts coincide.
"""

from __future__ import annotations

import logging
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from enum import Enum
from math import comb
from typing import Callable, Optional

from . import oracle
from .algebra import HomPoly, ZeroPolynomial, gradient
from .gb import (
    GradedDims,
    NoRelation,
    RankTooHigh,
    Relation,
    SyzygyVector,
    buchberger,
    hilbert_function,
    module_syzygies,
    second_syzygy_relation,
    syzygy_generators,
    z_saturation_hilbert_function,
)

__all__ = [
    "CurveClass",
    "CurveReport",
    "NonReducedInput",
    "RoutesDisagree",
    "InconsistentResolution",
    "ResolutionVerdict",
    "tau_max",
    "classify_dpw",
    "classify_resolution",
    "classify_torsion",
    "total_tjurina",
    "torsion_profile",
    "analyze",
]

log = logging.getLogger(__name__)

KERNEL_MAX_DEGREE = 30


class CurveClass(str, Enum):
    FREE = "Free"
    NEARLY_FREE = "NearlyFree"
    NEITHER = "Neither"
    PENCIL = "PencilOfLines"

    def __str__(self):
        return self.value


class NonReducedInput(ValueError):
    pass


class InconsistentResolution(RuntimeError):
    pass


class RoutesDisagree(RuntimeError):
    def __init__(self, message: str, verdicts: dict, data: Optional[dict] = None):
        super().__init__(message)
        self.verdicts = verdicts
        self.data = data or {}


def tau_max(d: int, r: int) -> int:
    if not 0 <= r <= d - 1:
        raise ValueError(f"need 0 <= r <= d-1, got d={d}, r={r}")
    return (d - 1) * (d - r - 1) + r * r


def classify_dpw(d: int, r: int, tau: int) -> CurveClass:
    if r < 1 or tau < 0:
        raise ValueError("need r >= 1 and tau >= 0")
    top = tau_max(d, r)
    if 2 * r < d and tau == top:
        return CurveClass.FREE
    if 2 * r <= d and tau == top - 1:
        return CurveClass.NEARLY_FREE
    if 2 * r == d and tau == top:
        log.info("d=%d, r=%d: tau reaches the bound with 2r = d; classified Neither", d, r)
    return CurveClass.NEITHER


def exponents_from_dpw(d: int, r: int, cls: CurveClass) -> Optional[tuple[int, ...]]:
    if cls is CurveClass.FREE:
        return (r, d - 1 - r)
    if cls is CurveClass.NEARLY_FREE:
        return (r, d - r, d - r)
    return None


@dataclass(frozen=True)
class ResolutionVerdict:
    curve_class: CurveClass
    exponents: tuple[int, ...]
    generators: tuple[SyzygyVector, ...]
    relation: Optional[Relation] = None

    def __iter__(self):
        return iter((self.curve_class, self.exponents, self.relation))


def nearly_free_multidegree(d: int, d1: int, d2: int) -> tuple[int, int, int]:
    """Degrees of the coefficients of the unique relation among three
    generators of degrees d1, d2, d2 (b = d2 - d + 2)."""
    b = d2 - d + 2
    return tuple(b - di + d - 1 for di in (d1, d2, d2))


def classify_resolution(f: HomPoly, generators: Optional[list[SyzygyVector]] = None) -> ResolutionVerdict:
    d = f.degree
    gens = sorted(generators if generators is not None else syzygy_generators(f), key=lambda v: v.degree)
    degs = tuple(v.degree for v in gens)
    if degs and degs[0] == 0:
        return ResolutionVerdict(CurveClass.PENCIL, degs, tuple(gens))
    if len(gens) == 2 and sum(degs) == d - 1:
        if module_syzygies(gens):
            raise InconsistentResolution(f"two generators of degrees {degs} satisfy a relation")
        return ResolutionVerdict(CurveClass.FREE, degs, tuple(gens))
    if len(gens) == 3 and degs[0] + degs[1] == d and degs[1] == degs[2]:
        try:
            rel = second_syzygy_relation(gens)
        except (NoRelation, RankTooHigh) as exc:
            raise InconsistentResolution(f"generator degrees {degs}: {exc}") from exc
        want = nearly_free_multidegree(d, degs[0], degs[1])
        if tuple(rel.multidegree) != want:
            raise InconsistentResolution(f"relation multidegree {rel.multidegree}, expected {want}")
        return ResolutionVerdict(CurveClass.NEARLY_FREE, degs, tuple(gens), rel)
    return ResolutionVerdict(CurveClass.NEITHER, degs, tuple(gens))


def classify_torsion(d: int, profile: GradedDims) -> tuple[CurveClass, Optional[tuple[int, ...]]]:
    """Verdict read from the dimensions of N(f) alone."""
    if not profile:
        return CurveClass.FREE, None
    values = profile.as_dict()
    if max(values.values()) > 1:
        return CurveClass.NEITHER, None
    lo, hi = min(values), max(values)
    d1, d2 = lo - d + 3, hi - d + 3
    # gaps in the support would contradict the interval statement; report the
    # endpoints anyway so the exponent comparison exposes it
    if len(values) != hi - lo + 1:
        return CurveClass.NEARLY_FREE, (d1, d2, -1)
    return CurveClass.NEARLY_FREE, (d1, d2, d2)


def total_tjurina(f: HomPoly, basis=None) -> int:
    """Stable value of the Hilbert function of S/J_f, read at 3d-3 and
    checked at 3d-2 and 3d-1."""
    d = f.degree
    if basis is None:
        basis = buchberger([g for g in gradient(f) if g])
    vals = [hilbert_function(basis, m) for m in (3 * d - 3, 3 * d - 2, 3 * d - 1)]
    if len(set(vals)) != 1:
        raise NonReducedInput(f"Hilbert function of the Milnor algebra not stable: {vals}")
    return vals[0]


def _torsion_by_kernels(f: HomPoly, stab: int) -> tuple[list[int], list[int]]:
    return oracle.profiles(f, stab)


def _torsion_by_initial_ideal(f: HomPoly, stab: int, tau: int, attempts: int = 6) -> tuple[list[int], list[int]]:
    """Saturate by a linear form: J : l^oo equals I_f exactly when l misses the
    Jacobian scheme, which shows up as the plateau of S/(J : l^oo) being tau."""
    field = f.field
    rng = random.Random(2024)
    x, y, z = HomPoly.variables(field)
    g = f
    for attempt in range(attempts):
        if attempt:
            a, b = (rng.randrange(1, 97) for _ in range(2))
            g = f.substitute([x, y, z + x.scale(field(a)) + y.scale(field(b))])
        basis = buchberger([h for h in gradient(g) if h])
        if all(z_saturation_hilbert_function(basis, m) == tau for m in (stab, stab + 1)):
            ideal = [comb(m + 2, 2) - hilbert_function(basis, m) for m in range(stab + 1)]
            sat = [comb(m + 2, 2) - z_saturation_hilbert_function(basis, m) for m in range(stab + 1)]
            return ideal, sat
    raise RuntimeError("no coordinate line avoiding the singular locus was found")


def torsion_profile(f: HomPoly, stab: Optional[int] = None, method: str = "auto", tau: Optional[int] = None) -> tuple[list[int], list[int]]:
    """(dim (J_f)_m, dim (I_f)_m) for m = 0..stab.

    ``kernel`` uses the dense multiplication-map construction, ``initial``
    the leading-term saturation; ``auto`` picks the first up to degree 30.
    """
    d = f.degree
    if stab is None:
        stab = 3 * d - 3
    if method == "auto":
        method = "kernel" if d <= KERNEL_MAX_DEGREE else "initial"
    if method == "kernel":
        return _torsion_by_kernels(f, stab)
    if method == "initial":
        if tau is None:
            tau = total_tjurina(f)
        return _torsion_by_initial_ideal(f, stab, tau)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class CurveReport:
    degree: int
    mdr: int
    tau: int
    curve_class: CurveClass
    exponents: tuple[int, ...]
    n_profile: GradedDims
    rigid: Optional[bool] = None
    rigid_by_definition: Optional[bool] = None
    relation_multidegree: Optional[tuple[int, int, int]] = None
    b: Optional[int] = None
    generators: tuple[SyzygyVector, ...] = ()
    relation: Optional[Relation] = None
    timings: dict = dc_field(default_factory=dict, compare=False)

    def __post_init__(self):
        d, tau, e = self.degree, self.tau, self.exponents
        cls = self.curve_class
        if cls is CurveClass.FREE:
            _require(len(e) == 2 and e[0] + e[1] == d - 1, f"free exponents {e} for degree {d}")
            _require(tau == (d - 1) ** 2 - e[0] * e[1], f"free curve with tau {tau}")
            _require(not self.n_profile, "free curve with nonzero N(f)")
            _require(self.rigid is True, "free curve not rigid")
        elif cls is CurveClass.NEARLY_FREE:
            _require(len(e) == 3 and e[0] + e[1] == d and e[1] == e[2], f"nearly free exponents {e}")
            _require(tau == (d - 1) ** 2 - e[0] * (e[1] - 1) - 1, f"nearly free curve with tau {tau}")
            want = {m: 1 for m in range(d + e[0] - 3, d + e[1] - 2)}
            _require(self.n_profile.as_dict() == want, f"N(f) profile {self.n_profile.as_dict()}")
            _require(self.n_profile.total() == e[1] - e[0] + 1, "N(f) total")
            _require(self.rigid == (e[0] >= 4), "rigidity flag")
            _require(self.b == e[1] - d + 2, "b")


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise AssertionError(f"report invariant violated: {what}")


def _workers() -> int:
    raw = os.environ.get("FREENESS_LAB_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return max(1, min(n, 3))


def _timed(fn: Callable):
    start = time.perf_counter()
    out = fn()
    return out, int(round((time.perf_counter() - start) * 1000))


def analyze(f: HomPoly, *, saturation: str = "auto") -> CurveReport:
    if not f:
        raise ZeroPolynomial("the zero polynomial defines no curve")
    d = f.degree
    if d < 1:
        raise ValueError("a curve needs degree at least 1")
    partials = [g for g in gradient(f) if g]
    if not partials:
        raise NonReducedInput("all partial derivatives vanish")
    jbasis = buchberger(partials)
    tau = total_tjurina(f, jbasis)
    r = oracle.mdr_linear(f)
    stab = 3 * d - 3

    def route_a():
        gens = syzygy_generators(f)
        if r == 0:
            degs = tuple(sorted(v.degree for v in gens))
            return ResolutionVerdict(CurveClass.PENCIL, degs, tuple(gens))
        return classify_resolution(f, gens)

    def route_b():
        if r == 0:
            return CurveClass.PENCIL, None
        cls = classify_dpw(d, r, tau)
        return cls, exponents_from_dpw(d, r, cls)

    def route_c():
        return torsion_profile(f, stab, saturation, tau)

    jobs = {"a": route_a, "b": route_b, "c": route_c}
    results, timings = {}, {}
    if _workers() > 1:
        with ThreadPoolExecutor(max_workers=_workers()) as pool:
            futures = {k: pool.submit(_timed, fn) for k, fn in jobs.items()}
            for k, fut in futures.items():
                results[k], timings[f"route_{k}_ms"] = fut.result()
    else:
        for k, fn in jobs.items():
            results[k], timings[f"route_{k}_ms"] = _timed(fn)

    verdict_a: ResolutionVerdict = results["a"]
    cls_b, exps_b = results["b"]
    ideal_dims, sat_dims = results["c"]
    torsion = [s - j for s, j in zip(sat_dims, ideal_dims)]
    if any(n < 0 for n in torsion):
        raise AssertionError("saturation smaller than the ideal")
    profile = GradedDims.from_mapping(dict(enumerate(torsion)))
    # N(f) vanishes above stab, so the degree-d comparison is trivially equal there
    rigid_def = torsion[d] == 0 if d <= stab else True

    min_a = verdict_a.exponents[0] if verdict_a.exponents else None
    data = {"degree": d, "mdr": r, "tau": tau, "n_profile": profile.as_dict(), "generator_degrees": verdict_a.exponents}
    if min_a != r:
        raise RoutesDisagree(
            f"minimal relation degree {r} but smallest generator has degree {min_a}",
            {"A": (verdict_a.curve_class, verdict_a.exponents), "B": (cls_b, exps_b)},
            data,
        )

    if r == 0:
        cls = CurveClass.PENCIL
        verdicts = {"A": (verdict_a.curve_class, verdict_a.exponents), "B": (cls_b, None)}
        if verdict_a.curve_class is not cls:
            raise RoutesDisagree("pencil detection", verdicts, data)
        return CurveReport(
            d, r, tau, cls, verdict_a.exponents, profile, rigid=rigid_def, rigid_by_definition=rigid_def,
            generators=verdict_a.generators, timings=timings,
        )

    cls_c, exps_c = classify_torsion(d, profile)
    verdicts = {
        "A": (verdict_a.curve_class, verdict_a.exponents),
        "B": (cls_b, exps_b),
        "C": (cls_c, exps_c),
    }
    if not verdict_a.curve_class == cls_b == cls_c:
        raise RoutesDisagree("routes give different classes", verdicts, data)
    cls = cls_b
    if cls is not CurveClass.NEITHER and verdict_a.exponents != exps_b:
        raise RoutesDisagree("routes A and B give different exponents", verdicts, data)
    if cls is CurveClass.NEARLY_FREE and exps_c != exps_b:
        raise RoutesDisagree("routes B and C give different exponents", verdicts, data)

    exps = verdict_a.exponents
    rigid = rigid_def
    b = mdeg = None
    if cls is CurveClass.NEARLY_FREE:
        d1, d2 = exps[0], exps[1]
        rigid = d1 >= 4
        if d2 >= 3 and rigid != rigid_def:
            raise AssertionError(f"rigidity by definition {rigid_def} but d1 = {d1}")
        b = d2 - d + 2
        mdeg = tuple(verdict_a.relation.multidegree)
    return CurveReport(
        d, r, tau, cls, exps, profile,
        rigid=rigid, rigid_by_definition=rigid_def, relation_multidegree=mdeg, b=b,
        generators=verdict_a.generators, relation=verdict_a.relation, timings=timings,
    )

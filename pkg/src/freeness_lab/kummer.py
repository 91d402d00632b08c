"""Singularities, components and genus of Kummer pullbacks.

The map [x:y:z] -> [x^k:y^k:z^k] is a Galois cover with group (Z/k)^2,
branched along the coordinate triangle.  Given a base curve together with
its points on the triangle (and its singular points), this module predicts
the local invariants of the pulled-back curve and its global topology.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .algebra import AXES, HomPoly, axis_intersection_multiplicity
from .freeness import RoutesDisagree

__all__ = [
    "AxisPoint",
    "BaseSingularity",
    "BaseCurve",
    "PointPrediction",
    "KummerPrediction",
    "TypeTwoPoint",
    "NotLocallyIrreducible",
    "HypothesisViolated",
    "classify_point",
    "predict_singularity",
    "component_count",
    "genus_pullback",
    "predict_pullback",
]

AXIS_NAMES = ("L_x", "L_y", "L_z")


class TypeTwoPoint(ValueError):
    pass


class NotLocallyIrreducible(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


@dataclass(frozen=True)
class AxisPoint:
    coords: tuple
    ptype: int
    axes: tuple[str, ...]

    def preimages(self, k: int) -> int:
        return k ** self.ptype

    def __str__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"


def classify_point(p: Sequence) -> AxisPoint:
    coords = tuple(p)
    if len(coords) != 3 or not any(coords):
        raise ValueError(f"not a projective point: {p!r}")
    axes = tuple(name for name, c in zip(AXIS_NAMES, coords) if c == 0)
    return AxisPoint(coords, 3 - len(axes) - 1, axes)


@dataclass(frozen=True)
class BaseSingularity:
    """A point of the base curve that matters for the cover: a singular point
    or a point on the coordinate triangle.  ``axis_mults`` lists the local
    intersection numbers with the axes in ``location.axes``."""

    location: AxisPoint
    mu: int
    axis_mults: tuple[int, ...]
    locally_irreducible: bool = True
    branches: int = 1
    label: str = ""

    @classmethod
    def on_curve(cls, f: HomPoly, point: Sequence, mu: int, *, label: str = "",
                 locally_irreducible: bool = True, branches: int = 1) -> "BaseSingularity":
        """Intersection numbers with the axes are computed from ``f``."""
        loc = classify_point(point)
        mults = tuple(axis_intersection_multiplicity(f, axis, loc.coords) for axis in loc.axes)
        return cls(loc, mu, mults, locally_irreducible, branches, label)

    def puncture(self) -> tuple[int, int, int]:
        """Intersection numbers with (L_x, L_y, L_z), zero off the axis."""
        out = [0, 0, 0]
        for axis, m in zip(self.location.axes, self.axis_mults):
            out[AXES[axis]] = m
        return tuple(out)


@dataclass(frozen=True)
class BaseCurve:
    """Rational base curve with every point on the triangle and every
    singular point listed."""

    name: str
    degree: int
    points: tuple[BaseSingularity, ...]

    def punctures(self) -> list[tuple[int, int, int]]:
        return [p.puncture() for p in self.points if p.location.ptype < 2]


def predict_singularity(s: BaseSingularity, k: int) -> tuple[int, int]:
    """(Milnor number, branch count) at one preimage of the point."""
    if k < 1:
        raise ValueError("k must be positive")
    if s.location.ptype == 2:
        raise TypeTwoPoint(f"{s.location} is off the axes; the cover is a local isomorphism there")
    if k == 1:
        return s.mu, s.branches
    if not s.locally_irreducible:
        raise NotLocallyIrreducible(f"{s.location} has {s.branches} branches")
    if s.location.ptype == 1:
        (m,) = s.axis_mults
        return k * s.mu + (m - 1) * (k - 1), gcd(k, m)
    m1, m2 = s.axis_mults
    return k * k * (s.mu - 1) + k * (k - 1) * (m1 + m2) + 1, k * gcd(k, gcd(m1, m2))


@dataclass(frozen=True)
class PointPrediction:
    source: BaseSingularity
    mu_Q: int
    branches: int
    delta: int
    preimage_points: int

    @property
    def normalization_points(self) -> int:
        """Points of the normalized pullback lying over the source point."""
        return self.preimage_points * self.branches


def _predict_point(s: BaseSingularity, k: int) -> PointPrediction:
    if s.location.ptype == 2:
        mu, r = s.mu, s.branches
    else:
        mu, r = predict_singularity(s, k)
    if (mu + r - 1) % 2:
        raise AssertionError(f"odd mu + r - 1 at {s.location}: mu={mu}, r={r}")
    return PointPrediction(s, mu, r, (mu + r - 1) // 2, s.location.preimages(k))


def _lattice_index(vectors: Sequence[tuple[int, int]]) -> int:
    """Index in Z^2 of the lattice spanned by ``vectors`` (assumed of rank 2):
    the gcd of the 2x2 minors, i.e. the product of the Smith invariants."""
    g = 0
    for i, (a, b) in enumerate(vectors):
        for c, e in vectors[i + 1:]:
            g = gcd(g, a * e - b * c)
    if g == 0:
        raise ValueError("vectors span a lattice of rank < 2")
    return g


def component_count(punctures: Sequence[Sequence[int]], k: int,
                    points: Optional[Sequence[BaseSingularity]] = None) -> int:
    """Number of irreducible components of the pullback of an irreducible
    rational curve: the index in (Z/k)^2 of the subgroup generated by the
    local monodromies around the punctures."""
    if k < 1:
        raise ValueError("k must be positive")
    if points is not None:
        bad = [p for p in points if not p.locally_irreducible]
        if bad:
            raise HypothesisViolated(f"base point {bad[0].location} is not locally irreducible")
    vecs = [(k, 0), (0, k)]
    for mx, my, mz in punctures:
        vecs.append(((my - mx) % k, (mz - mx) % k))
    return _lattice_index(vecs)


@dataclass(frozen=True)
class KummerPrediction:
    k: int
    degree: int
    points: tuple[PointPrediction, ...]
    components: int
    genus_per_component: int
    genus_routes: tuple[Fraction, Fraction]
    euler_characteristic: int
    delta_total: int
    milnor_total: int
    tau_consistency: Optional[int] = None


def predict_pullback(base: BaseCurve, k: int) -> KummerPrediction:
    if k < 1:
        raise ValueError("k must be positive")
    bad = [p for p in base.points if not p.locally_irreducible]
    if bad:
        raise HypothesisViolated(f"base point {bad[0].location} is not locally irreducible")
    preds = tuple(_predict_point(p, k) for p in base.points)
    punct = base.punctures()
    comps = component_count(punct, k, base.points)

    # Riemann-Hurwitz on the normalization: the punctured P^1 has an
    # unramified cover of degree k^2, then the points over punctures are added
    chi = k * k * (2 - len(punct)) + sum(p.normalization_points for p in preds if p.source.location.ptype < 2)
    genus_rh = 1 - Fraction(chi, 2 * comps)

    # arithmetic genus minus the delta invariants, spread over the components
    dk = base.degree * k
    arithmetic = (dk - 1) * (dk - 2) // 2
    delta = sum(p.preimage_points * p.delta for p in preds)
    genus_dd = Fraction(arithmetic + comps - 1 - delta, comps)

    if genus_rh != genus_dd:
        raise RoutesDisagree(
            f"genus by Riemann-Hurwitz {genus_rh} but by degree and delta {genus_dd}",
            {"riemann_hurwitz": genus_rh, "degree_delta": genus_dd},
        )
    if genus_rh.denominator != 1 or genus_rh < 0:
        raise AssertionError(f"genus {genus_rh} is not a non-negative integer")
    milnor = sum(p.preimage_points * p.mu_Q for p in preds)
    # Brieskorn-Pham germs u^k = v^m are quasi-homogeneous, so there tau = mu
    qh = all(p.source.mu == 0 and p.source.location.ptype == 1 for p in preds)
    return KummerPrediction(
        k, dk, preds, comps, int(genus_rh), (genus_rh, genus_dd), chi, delta, milnor,
        tau_consistency=milnor if qh else None,
    )


def genus_pullback(base, k: int) -> tuple[int, int]:
    """(components, genus of each component); ``base`` is a BaseCurve or
    anything carrying one as ``.base``."""
    curve = base if isinstance(base, BaseCurve) else base.base
    if curve is None:
        raise HypothesisViolated("no base-curve data for this family")
    pred = predict_pullback(curve, k)
    return pred.components, pred.genus_per_component

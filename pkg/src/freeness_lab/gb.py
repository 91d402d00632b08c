"""Buchberger engine for homogeneous ideals of S = k[x, y, z] and graded
submodules of S^r, with cofactor tracking for syzygies.

Internally a term ``m * e_pos`` is packed into one integer whose natural
order is the module order (weighted degree, then grevlex, then lower
position first) and whose sum with a monomial code is the product.  Over
the rationals the engine works with primitive integer polynomials and
fraction-free reductions; over F_p elements are kept monic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence

from .algebra import QQ, Field, HomPoly, gradient

__all__ = [
    "GradedDims",
    "raw_syzygies",
    "IdealBasis",
    "ModuleBasis",
    "SyzygyVector",
    "NoRelation",
    "RankTooHigh",
    "buchberger",
    "normal_form",
    "module_normal_form",
    "hilbert_function",
    "syzygy_generators",
    "minimal_generators",
    "minimal_generator_degrees",
    "second_syzygy_relation",
    "module_syzygies",
    "s_polynomials_reduce_to_zero",
    "z_saturation_hilbert_function",
]

BITS = 16
BASE = 1 << BITS
MASK = BASE - 1


class NoRelation(ValueError):
    pass


class RankTooHigh(ValueError):
    pass


def encode(pos: int, ex: int, ey: int, ez: int, shift: int = 0) -> int:
    deg = ex + ey + ez
    return ((((deg + shift) << BITS) + deg) << (3 * BITS)) - (ez << (2 * BITS)) - (ey << BITS) - pos


def decode(code: int) -> tuple[int, int, int, int]:
    """Inverse of :func:`encode`, returns (pos, ex, ey, ez)."""
    pos = -code & MASK
    code = (code + pos) >> BITS
    ey = -code & MASK
    code = (code + ey) >> BITS
    ez = -code & MASK
    code = (code + ez) >> BITS
    deg = code & MASK
    return pos, deg - ey - ez, ey, ez


def weighted_degree(code: int) -> int:
    return (code + (1 << (3 * BITS)) - 1) >> (4 * BITS)


def mono_code(ex: int, ey: int, ez: int) -> int:
    return encode(0, ex, ey, ez)


# ---------------------------------------------------------------------------
# public value types


@dataclass(frozen=True)
class SyzygyVector:
    """Homogeneous triple (a, b, c) with a*f_x + b*f_y + c*f_z = 0."""

    a: HomPoly
    b: HomPoly
    c: HomPoly
    degree: int

    @property
    def components(self) -> tuple[HomPoly, HomPoly, HomPoly]:
        return (self.a, self.b, self.c)

    def dot(self, others: Sequence[HomPoly]) -> HomPoly:
        total = HomPoly.zero(self.a.field)
        for u, v in zip(self.components, others):
            if u and v:
                total = total + u * v
        return total

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c)

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


def make_vector(components: Sequence[HomPoly], degree: int | None = None) -> SyzygyVector:
    comps = list(components)
    if len(comps) != 3:
        raise ValueError("rank-3 vectors only")
    degs = {c.degree for c in comps if c}
    if len(degs) > 1:
        raise ValueError(f"components of mixed degrees {sorted(degs)}")
    if degs:
        deg = degs.pop()
        if degree is not None and degree != deg:
            raise ValueError("declared degree does not match components")
    else:
        if degree is None:
            raise ValueError("zero vector needs an explicit degree")
        deg = degree
    return SyzygyVector(comps[0], comps[1], comps[2], deg)


@dataclass(frozen=True)
class GradedDims:
    """Sparse table degree -> dimension; missing degrees read as 0."""

    dims: tuple[tuple[int, int], ...]

    @classmethod
    def from_mapping(cls, mapping) -> "GradedDims":
        return cls(tuple(sorted((int(m), int(v)) for m, v in dict(mapping).items() if v)))

    def __getitem__(self, m: int) -> int:
        return dict(self.dims).get(m, 0)

    def __bool__(self) -> bool:
        return bool(self.dims)

    def support(self) -> list[int]:
        return [m for m, _ in self.dims]

    def total(self) -> int:
        return sum(v for _, v in self.dims)

    def as_dict(self) -> dict[int, int]:
        return dict(self.dims)


@dataclass(frozen=True)
class IdealBasis:
    gens: tuple[HomPoly, ...]
    is_groebner: bool = False
    reduced: bool = False
    field: Field = QQ
    order: str = "grevlex"
    _engine: object = dc_field(default=None, repr=False, compare=False)


@dataclass(frozen=True)
class ModuleBasis:
    gens: tuple[tuple[HomPoly, ...], ...]
    rank: int
    is_groebner: bool = False
    reduced: bool = False
    field: Field = QQ
    order: str = "term-over-position grevlex"
    _engine: object = dc_field(default=None, repr=False, compare=False)


# ---------------------------------------------------------------------------
# conversion between HomPoly data and packed dicts


def _poly_to_codes(f: HomPoly, pos: int = 0, shift: int = 0) -> dict:
    return {encode(pos, *e, shift): c for e, c in f.as_dict().items()}


def _vector_to_codes(vec: Sequence[HomPoly], shifts: Sequence[int] | None = None) -> dict:
    out = {}
    for i, comp in enumerate(vec):
        if comp:
            out.update(_poly_to_codes(comp, i, shifts[i] if shifts else 0))
    return out


def _integralize(d: dict) -> tuple[dict, int]:
    """Clear denominators of a Fraction-valued dict; returns (int dict, scale)."""
    den = 1
    for v in d.values():
        den = den * v.denominator // gcd(den, v.denominator)
    return {c: int(v * den) for c, v in d.items()}, den


def _codes_to_components(d: dict, field: Field, rank: int, scale=None) -> list[HomPoly]:
    parts: list[dict] = [dict() for _ in range(rank)]
    for code, v in d.items():
        pos, ex, ey, ez = decode(code)
        if scale is not None:
            v = v * scale[pos]
        parts[pos][(ex, ey, ez)] = field(v)
    return [HomPoly({e: c for e, c in part.items() if c}, field, _trusted=True) for part in parts]


# ---------------------------------------------------------------------------
# the engine


class _Elem:
    __slots__ = ("terms", "lt", "lexp", "cof")

    def __init__(self, terms: dict, cof: dict | None):
        self.terms = terms
        self.lt = max(terms)
        self.lexp = decode(self.lt)
        self.cof = cof


def _content(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


class Engine:
    """Incremental homogeneous Buchberger completion.

    Inputs are queued and inserted in degree order; S-pairs of a given degree
    are always processed before inputs of that degree, so an input that
    top-reduces to zero lies in the submodule generated by earlier inputs.
    With ``track=True`` every element carries its cofactor vector with respect
    to the inputs, and cofactors of zero reductions are collected as syzygies.
    """

    def __init__(self, p: int, *, ideal: bool, track: bool = False, cof_shifts: Sequence[int] = ()):
        self.p = p
        self.ideal = ideal
        self.track = track
        self.cof_shifts = list(cof_shifts)
        self.basis: list[_Elem] = []
        self.pairs: list[tuple[int, int, int]] = []
        self.inputs: list[tuple[int, int, dict]] = []
        self.syzygies: list[dict] = []
        self.kept_inputs: list[int] = []
        self.redundant_inputs: list[int] = []
        self._n_inputs = 0
        self._reducer_cache: dict[int, int] = {}
        self.stats = {"pairs": 0, "zero": 0, "product": 0, "chain": 0}

    # -- element bookkeeping ---------------------------------------------
    def add_input(self, terms: dict) -> int:
        idx = self._n_inputs
        self._n_inputs += 1
        if terms:
            heapq.heappush(self.inputs, (weighted_degree(max(terms)), idx, terms))
        elif self.track:
            self.syzygies.append(self._unit_cofactor(idx))
            self.redundant_inputs.append(idx)
        else:
            self.redundant_inputs.append(idx)
        return idx

    def _unit_cofactor(self, idx: int) -> dict:
        return {encode(idx, 0, 0, 0, self.cof_shifts[idx]): 1}

    def _normalize(self, terms: dict, cof: dict | None):
        lc = terms[max(terms)]
        p = self.p
        if p:
            if lc != 1:
                inv = pow(lc, -1, p)
                terms = {c: v * inv % p for c, v in terms.items()}
                if cof is not None:
                    cof = {c: v * inv % p for c, v in cof.items()}
        else:
            vals = list(terms.values())
            if cof is not None:
                vals += list(cof.values())
            g = _content(vals)
            if lc < 0:
                g = -g
            if g != 1:
                terms = {c: v // g for c, v in terms.items()}
                if cof is not None:
                    cof = {c: v // g for c, v in cof.items()}
        return terms, cof

    def _insert(self, terms: dict, cof: dict | None) -> int:
        terms, cof = self._normalize(terms, cof)
        elem = _Elem(terms, cof)
        idx = len(self.basis)
        self.basis.append(elem)
        self._update_pairs(idx)
        return idx

    # -- reducer lookup ----------------------------------------------------
    def find_reducer(self, code: int) -> int:
        cache = self._reducer_cache
        hit = cache.get(code)
        if hit is not None and hit >= 0:
            return hit
        start = 0 if hit is None else -hit - 1
        pos, ex, ey, ez = decode(code)
        basis = self.basis
        for i in range(start, len(basis)):
            lp, lx, ly, lz = basis[i].lexp
            if lp == pos and lx <= ex and ly <= ey and lz <= ez:
                cache[code] = i
                return i
        cache[code] = -len(basis) - 1
        return -1

    # -- reduction -----------------------------------------------------------
    def reduce(self, terms: dict, cof: dict | None, full: bool = False):
        """Reduce in place-copies; returns (remainder, cofactor, scale).

        ``scale`` is the accumulated scalar s with remainder == s*input - sum(...)
        (always 1 over F_p, where elements are monic).
        """
        if self.p:
            return self._reduce_modp(terms, cof, full)
        return self._reduce_zz(terms, cof, full)

    def _reduce_modp(self, f: dict, cof: dict | None, full: bool):
        p = self.p
        basis = self.basis
        find = self.find_reducer
        heap = [-c for c in f]
        heapq.heapify(heap)
        pop, push = heapq.heappop, heapq.heappush
        rest = {}
        while heap:
            c = -pop(heap)
            v = f.get(c)
            if v is None:
                continue
            r = find(c)
            if r < 0:
                if not full:
                    return f, cof, 1
                rest[c] = f.pop(c)
                continue
            g = basis[r]
            t = c - g.lt
            fget = f.get
            for gc, gv in g.terms.items():
                nc = gc + t
                ov = fget(nc)
                if ov is None:
                    f[nc] = -v * gv % p
                    push(heap, -nc)
                else:
                    nv = (ov - v * gv) % p
                    if nv:
                        f[nc] = nv
                    else:
                        del f[nc]
            if cof is not None:
                cget = cof.get
                for gc, gv in g.cof.items():
                    nc = gc + t
                    nv = (cget(nc, 0) - v * gv) % p
                    if nv:
                        cof[nc] = nv
                    else:
                        cof.pop(nc, None)
        return rest, cof, 1

    def _reduce_zz(self, f: dict, cof: dict | None, full: bool):
        basis = self.basis
        find = self.find_reducer
        heap = [-c for c in f]
        heapq.heapify(heap)
        pop, push = heapq.heappop, heapq.heappush
        rest = {}
        scale = 1
        steps = 0
        while heap:
            c = -pop(heap)
            v = f.get(c)
            if v is None:
                continue
            r = find(c)
            if r < 0:
                if not full:
                    break
                rest[c] = f.pop(c)
                continue
            g = basis[r]
            lc = g.terms[g.lt]
            u = gcd(lc, v)
            a, b = lc // u, v // u
            if a != 1:
                for k in f:
                    f[k] *= a
                for k in rest:
                    rest[k] *= a
                if cof is not None:
                    for k in cof:
                        cof[k] *= a
                scale *= a
            t = c - g.lt
            fget = f.get
            for gc, gv in g.terms.items():
                nc = gc + t
                ov = fget(nc)
                if ov is None:
                    f[nc] = -b * gv
                    push(heap, -nc)
                else:
                    nv = ov - b * gv
                    if nv:
                        f[nc] = nv
                    else:
                        del f[nc]
            if cof is not None:
                cget = cof.get
                for gc, gv in g.cof.items():
                    nc = gc + t
                    nv = cget(nc, 0) - b * gv
                    if nv:
                        cof[nc] = nv
                    else:
                        cof.pop(nc, None)
            steps += 1
            if steps % 8 == 0:
                scale = self._remove_content(f, rest, cof, scale)
        if full:
            f = rest
        scale = self._remove_content(f, {}, cof, scale)
        return f, cof, scale

    @staticmethod
    def _remove_content(f: dict, rest: dict, cof: dict | None, scale):
        vals = list(f.values()) + list(rest.values())
        if cof is not None:
            vals += list(cof.values())
        g = _content(vals)
        if g > 1:
            for d in (f, rest) + ((cof,) if cof is not None else ()):
                for k in d:
                    d[k] //= g
            scale = Fraction(scale, g)
        return scale

    # -- pair management (Gebauer-Moeller) ------------------------------------
    @staticmethod
    def _lcm(a, b):
        return (max(a[1], b[1]), max(a[2], b[2]), max(a[3], b[3]))

    @staticmethod
    def _divides(a, b) -> bool:
        return a[0] <= b[0] and a[1] <= b[1] and a[2] <= b[2]

    def _pair_degree(self, i: int, j: int) -> int:
        lexp_i = self.basis[i].lexp
        lcm = self._lcm(lexp_i, self.basis[j].lexp)
        return weighted_degree(encode(lexp_i[0], *lcm, self._shift_of(i)))

    def _shift_of(self, i: int) -> int:
        elem = self.basis[i]
        pos, ex, ey, ez = elem.lexp
        return weighted_degree(elem.lt) - (ex + ey + ez)

    def _update_pairs(self, h: int):
        basis = self.basis
        H = basis[h].lexp
        hmono = H[1:]
        cands = [g for g in range(h) if basis[g].lexp[0] == H[0]]
        lcms = {g: self._lcm(H, basis[g].lexp) for g in cands}

        def coprime(g):
            gl = basis[g].lexp
            return self.ideal and all(min(a, b) == 0 for a, b in zip(hmono, gl[1:]))

        kept: list[int] = []
        for n, g1 in enumerate(cands):
            l1 = lcms[g1]
            if coprime(g1):
                kept.append(g1)
                continue
            redundant = any(self._divides(lcms[g2], l1) for g2 in cands[n + 1 :]) or any(
                self._divides(lcms[g2], l1) for g2 in kept
            )
            if redundant:
                self.stats["chain"] += 1
            else:
                kept.append(g1)
        new_pairs = []
        for g in kept:
            if coprime(g):
                self.stats["product"] += 1
                if self.track:
                    self.syzygies.append(self._koszul(g, h))
            else:
                new_pairs.append(g)
        # drop old pairs made redundant by h
        old = []
        for item in self.pairs:
            deg, i, j = item
            bi, bj = basis[i].lexp, basis[j].lexp
            if bi[0] == H[0]:
                lij = self._lcm(bi, bj)
                if (
                    self._divides(hmono, lij)
                    and self._lcm(bi, H) != lij
                    and self._lcm(bj, H) != lij
                ):
                    self.stats["chain"] += 1
                    continue
            old.append(item)
        if len(old) != len(self.pairs):
            heapq.heapify(old)
            self.pairs = old
        for g in new_pairs:
            heapq.heappush(self.pairs, (self._pair_degree(g, h), g, h))

    def _koszul(self, i: int, j: int) -> dict:
        """g_j * cof_i - g_i * cof_j for coprime ideal elements."""
        gi, gj = self.basis[i], self.basis[j]
        out: dict = {}
        p = self.p
        for sign, poly, cof in ((1, gj.terms, gi.cof), (-1, gi.terms, gj.cof)):
            for pc, pv in poly.items():
                for cc, cv in cof.items():
                    k = pc + cc
                    out[k] = out.get(k, 0) + sign * pv * cv
        if p:
            return {k: v % p for k, v in out.items() if v % p}
        return {k: v for k, v in out.items() if v}

    # -- main loop -------------------------------------------------------
    def _spoly(self, i: int, j: int):
        gi, gj = self.basis[i], self.basis[j]
        lcm = self._lcm(gi.lexp, gj.lexp)
        lcm_code = encode(gi.lexp[0], *lcm, self._shift_of(i))
        ti, tj = lcm_code - gi.lt, lcm_code - gj.lt
        p = self.p
        if p:
            a, b = 1, 1
        else:
            li, lj = gi.terms[gi.lt], gj.terms[gj.lt]
            u = gcd(li, lj)
            a, b = lj // u, li // u
        f: dict = {}
        for gc, gv in gi.terms.items():
            f[gc + ti] = a * gv
        for gc, gv in gj.terms.items():
            k = gc + tj
            f[k] = f.get(k, 0) - b * gv
        cof = None
        if self.track:
            cof = {}
            for gc, gv in gi.cof.items():
                cof[gc + ti] = a * gv
            for gc, gv in gj.cof.items():
                k = gc + tj
                cof[k] = cof.get(k, 0) - b * gv
            cof = {k: (v % p if p else v) for k, v in cof.items() if (v % p if p else v)}
        f = {k: (v % p if p else v) for k, v in f.items() if (v % p if p else v)}
        return f, cof

    def run(self, max_degree: int | None = None) -> "Engine":
        """Complete up to ``max_degree`` (everything when None)."""
        while self.pairs or self.inputs:
            pdeg = self.pairs[0][0] if self.pairs else None
            ideg = self.inputs[0][0] if self.inputs else None
            nxt = min(d for d in (pdeg, ideg) if d is not None)
            if max_degree is not None and nxt > max_degree:
                break
            if pdeg is not None and pdeg <= nxt:
                _, i, j = heapq.heappop(self.pairs)
                self.stats["pairs"] += 1
                f, cof = self._spoly(i, j)
                self._absorb(f, cof, None)
            else:
                _, idx, terms = heapq.heappop(self.inputs)
                cof = self._unit_cofactor(idx) if self.track else None
                self._absorb(dict(terms), cof, idx)
        return self

    def _absorb(self, f: dict, cof: dict | None, input_idx: int | None):
        if f:
            f, cof, _ = self.reduce(f, cof, full=False)
        if f:
            self._insert(f, cof)
            if input_idx is not None:
                self.kept_inputs.append(input_idx)
        else:
            self.stats["zero"] += 1
            if input_idx is not None:
                self.redundant_inputs.append(input_idx)
            if self.track and cof:
                self.syzygies.append(cof)

    # -- results ----------------------------------------------------------
    def reduced_elements(self) -> list[dict]:
        """Tail-reduced, normalized basis (the reduced Groebner basis)."""
        order = sorted(range(len(self.basis)), key=lambda i: self.basis[i].lt)
        out = []
        for i in order:
            elem = self.basis[i]
            head = {elem.lt: elem.terms[elem.lt]}
            tail = {c: v for c, v in elem.terms.items() if c != elem.lt}
            if tail:
                rem, _, scale = self.reduce(tail, None, full=True)
                if self.p:
                    head.update(rem)
                    terms = head
                else:
                    # rem == scale * tail + ...; rescale the head to match
                    sc = Fraction(scale)
                    terms = {elem.lt: elem.terms[elem.lt] * sc}
                    terms.update(rem)
                    den = 1
                    for v in terms.values():
                        v = Fraction(v)
                        den = den * v.denominator // gcd(den, v.denominator)
                    terms = {c: int(Fraction(v) * den) for c, v in terms.items()}
            else:
                terms = head
            terms, _ = self._normalize(terms, None)
            out.append(terms)
        out.sort(key=max, reverse=True)
        return out

    def standard_count(self, degree: int, rank: int, shifts: Sequence[int] = ()) -> int:
        """Number of standard terms m*e_pos of weighted degree ``degree``."""
        leads = [e.lexp for e in self.basis]
        count = 0
        for pos in range(rank):
            m = degree - (shifts[pos] if shifts else 0)
            if m < 0:
                continue
            pl = [l[1:] for l in leads if l[0] == pos]
            for ez in range(m + 1):
                for ey in range(m - ez + 1):
                    ex = m - ey - ez
                    for lx, ly, lz in pl:
                        if lx <= ex and ly <= ey and lz <= ez:
                            break
                    else:
                        count += 1
        return count


# ---------------------------------------------------------------------------
# public operations on ideals


def _field_of(items) -> Field:
    for f in items:
        if isinstance(f, HomPoly):
            return f.field
        if isinstance(f, SyzygyVector):
            return f.a.field
        for c in f:
            return c.field
    return QQ


def _prep_ideal_inputs(gens: Sequence[HomPoly], field: Field):
    codes, scales = [], []
    for g in gens:
        d = _poly_to_codes(g)
        if field.p == 0 and d:
            d, s = _integralize(d)
        else:
            s = 1
        codes.append(d)
        scales.append(s)
    return codes, scales


def buchberger(gens: Sequence, *, field: Field | None = None, max_degree: int | None = None):
    """Reduced Groebner basis of the ideal (HomPoly inputs) or of the
    submodule of S^r (inputs are sequences of r HomPolys)."""
    gens = list(gens)
    if field is None:
        field = _field_of(gens)
    if all(isinstance(g, HomPoly) for g in gens):
        eng = Engine(field.p, ideal=True)
        codes, _ = _prep_ideal_inputs(gens, field)
        for d in codes:
            eng.add_input(d)
        eng.run(max_degree)
        polys = tuple(_codes_to_components(t, field, 1)[0].content_normalized() for t in eng.reduced_elements())
        return IdealBasis(polys, is_groebner=max_degree is None, reduced=True, field=field, _engine=eng)
    vecs = [tuple(v.components) if isinstance(v, SyzygyVector) else tuple(v) for v in gens]
    rank = len(vecs[0]) if vecs else 3
    eng = _module_engine(vecs, field, track=False)
    eng.run(max_degree)
    elems = tuple(
        tuple(_normalize_vector(_codes_to_components(t, field, rank))) for t in eng.reduced_elements()
    )
    return ModuleBasis(elems, rank, is_groebner=max_degree is None, reduced=True, field=field, _engine=eng)


def _normalize_vector(comps: list[HomPoly]) -> list[HomPoly]:
    """Scale so the leading coefficient (module order) is 1."""
    lc = _leading_coeff(comps)
    if lc is None:
        return comps
    inv = comps[0].field.inv(lc)
    return [c.scale(inv) for c in comps]


def _module_engine(vecs, field: Field, *, track: bool, cof_shifts=()) -> Engine:
    eng = Engine(field.p, ideal=False, track=track, cof_shifts=cof_shifts)
    eng._scales = []
    for v in vecs:
        d = _vector_to_codes(v)
        s = 1
        if field.p == 0 and d:
            d, s = _integralize(d)
        eng._scales.append(s)
        eng.add_input(d)
    return eng


def normal_form(f: HomPoly, basis: IdealBasis) -> HomPoly:
    """Unique remainder of ``f`` modulo a Groebner basis."""
    if not basis.is_groebner:
        raise ValueError("normal_form needs a completed Groebner basis")
    field = basis.field
    if not f or not basis.gens:
        return f
    eng = _reduced_engine(basis)
    d = _poly_to_codes(f)
    if field.p == 0:
        d, s = _integralize(d)
    else:
        s = 1
    rem, _, scale = eng.reduce(d, None, full=True)
    out = {}
    for code, v in rem.items():
        _, ex, ey, ez = decode(code)
        out[(ex, ey, ez)] = field(Fraction(v) / (Fraction(scale) * s)) if field.p == 0 else v
    return HomPoly(out, field, _trusted=True)


def _reduced_engine(basis) -> Engine:
    """Engine loaded with the (reduced) basis elements, for normal forms."""
    cached = getattr(basis, "_nf_engine", None)
    if cached is not None:
        return cached
    field = basis.field
    eng = Engine(field.p, ideal=isinstance(basis, IdealBasis))
    for g in basis.gens:
        if isinstance(g, HomPoly):
            d = _poly_to_codes(g)
        else:
            d = _vector_to_codes(g)
        if field.p == 0:
            d, _ = _integralize(d)
        terms, _ = eng._normalize(d, None)
        eng.basis.append(_Elem(terms, None))
    object.__setattr__(basis, "_nf_engine", eng)
    return eng


def module_normal_form(vec: Sequence[HomPoly], basis: ModuleBasis) -> list[HomPoly]:
    if not basis.is_groebner:
        raise ValueError("module_normal_form needs a completed Groebner basis")
    field = basis.field
    comps = list(vec.components) if isinstance(vec, SyzygyVector) else list(vec)
    eng = _reduced_engine(basis)
    d = _vector_to_codes(comps)
    s = 1
    if field.p == 0 and d:
        d, s = _integralize(d)
    rem, _, scale = eng.reduce(d, None, full=True) if d else ({}, None, 1)
    if field.p == 0:
        rem = {k: Fraction(v) / (Fraction(scale) * s) for k, v in rem.items()}
    return _codes_to_components(rem, field, basis.rank)


__all__ += ["module_normal_form"]


def hilbert_function(basis: IdealBasis | ModuleBasis, m: int) -> int:
    """dim of the quotient in degree m, by counting standard monomials."""
    if not basis.is_groebner:
        raise ValueError("hilbert_function needs a completed Groebner basis")
    if m < 0:
        return 0
    rank = 1 if isinstance(basis, IdealBasis) else basis.rank
    if not basis.gens:
        return rank * comb(m + 2, 2)
    eng = _reduced_engine(basis)
    return eng.standard_count(m, rank)


def _count_standard(leads: Sequence[tuple[int, int, int]], m: int) -> int:
    count = 0
    for ez in range(m + 1):
        for ey in range(m - ez + 1):
            ex = m - ey - ez
            if not any(lx <= ex and ly <= ey and lz <= ez for lx, ly, lz in leads):
                count += 1
    return count


def z_saturation_hilbert_function(basis: IdealBasis, m: int) -> int:
    """dim (S/(I : z^oo))_m read off the leading terms.

    For grevlex with z last, the initial ideal of I : z^oo is in(I) : z^oo,
    so it suffices to strip z from every leading monomial.
    """
    if not basis.is_groebner:
        raise ValueError("needs a completed Groebner basis")
    if m < 0:
        return 0
    if not basis.gens:
        return comb(m + 2, 2)
    eng = _reduced_engine(basis)
    leads = {(l[1], l[2], 0) for l in (e.lexp for e in eng.basis)}
    return _count_standard(sorted(leads), m)


def s_polynomials_reduce_to_zero(basis: IdealBasis | ModuleBasis) -> bool:
    """Exhaustive Buchberger criterion check over all pairs (no criteria)."""
    eng = _reduced_engine(basis)
    n = len(eng.basis)
    ideal = isinstance(basis, IdealBasis)
    for i in range(n):
        for j in range(i + 1, n):
            if eng.basis[i].lexp[0] != eng.basis[j].lexp[0]:
                continue
            f, _ = eng._spoly(i, j)
            if f:
                rem, _, _ = eng.reduce(f, None, full=True)
                if rem:
                    return False
    return True


# ---------------------------------------------------------------------------
# syzygies


def _harvest_to_vectors(syz: list[dict], field: Field, rank: int, scales, shifts) -> list[tuple[list[HomPoly], int]]:
    out = []
    for d in syz:
        if not d:
            continue
        comps = _codes_to_components(d, field, rank, scale=scales if field.p == 0 else None)
        wdeg = weighted_degree(max(d))
        out.append((comps, wdeg))
    return out


def _syzygy_engine_for_polys(polys: Sequence[HomPoly], field: Field, shift: int, max_degree=None) -> Engine:
    shifts = [shift] * len(polys)
    eng = Engine(field.p, ideal=True, track=True, cof_shifts=shifts)
    codes, scales = _prep_ideal_inputs(polys, field)
    eng._scales = scales
    for d in codes:
        eng.add_input(d)
    eng.run(max_degree)
    return eng


def raw_syzygies(f: HomPoly, max_degree: int | None = None) -> list[SyzygyVector]:
    """Schreyer-harvested (non-minimal) generators of the relation module."""
    field = f.field
    partials = gradient(f)
    shift = f.degree - 1
    eng = _syzygy_engine_for_polys(partials, field, shift, max_degree)
    out = []
    for comps, wdeg in _harvest_to_vectors(eng.syzygies, field, 3, eng._scales, None):
        out.append(make_vector(comps, wdeg - shift))
    return out


def syzygy_generators(f: HomPoly) -> list[SyzygyVector]:
    """Minimal homogeneous generators of the module of relations
    a*f_x + b*f_y + c*f_z = 0; every vector is checked exactly."""
    partials = gradient(f)
    if not any(partials):
        raise ValueError("all partial derivatives vanish")
    raw = raw_syzygies(f)
    gens, eng = _minimal_with_engine(raw)
    for v in gens:
        if v.dot(partials):
            raise AssertionError(f"harvested vector {v} is not a relation")
    d = f.degree
    bound = max([2 * d - 2] + [v.degree for v in raw])
    _certify_span(eng, partials, d, bound)
    return gens


def _certify_span(eng: Engine, partials: Sequence[HomPoly], d: int, bound: int) -> None:
    """Compare, degree by degree, the span of the harvested relations with the
    kernel dimension 3*dim S_m - dim J_(m+d-1) obtained from a basis of J."""
    jbasis = buchberger([g for g in partials if g])
    for m in range(bound + 1):
        free = 3 * comb(m + 2, 2)
        span = free - eng.standard_count(m, 3)
        image = comb(m + d + 1, 2) - hilbert_function(jbasis, m + d - 1)
        if span != free - image:
            raise AssertionError(f"relations in degree {m}: spanned {span}, expected {free - image}")


def _prepare_vectors(gens: Sequence) -> list[SyzygyVector]:
    out = []
    for v in gens:
        if not isinstance(v, SyzygyVector):
            v = make_vector(list(v))
        if not v.is_zero():
            out.append(v)
    return out


def minimal_generators(gens: Sequence) -> list[SyzygyVector]:
    """A minimal homogeneous generating system of the submodule of S^3
    spanned by ``gens``: vectors are taken by increasing degree (ties in input
    order) and dropped when they lie in the span of those already taken."""
    return _minimal_with_engine(gens)[0]


def _minimal_with_engine(gens: Sequence) -> tuple[list[SyzygyVector], Engine | None]:
    vecs = _prepare_vectors(gens)
    if not vecs:
        return [], None
    field = vecs[0].a.field
    order = sorted(range(len(vecs)), key=lambda i: (vecs[i].degree, i))
    ordered = [vecs[i] for i in order]
    eng = _module_engine([v.components for v in ordered], field, track=False)
    eng.run()
    kept = sorted(eng.kept_inputs)
    return [_canonical_vector(ordered[i]) for i in kept], eng


def _leading_coeff(comps: Sequence[HomPoly]):
    best = None
    for pos, c in enumerate(comps):
        if c:
            mono, lc = c.leading_term()
            key = (mono.key(), -pos)
            if best is None or key > best[0]:
                best = (key, lc)
    return None if best is None else best[1]


def _canonical_vector(v: SyzygyVector) -> SyzygyVector:
    comps = v.components
    field = comps[0].field
    if field.p == 0:
        # primitive integer representative with positive leading coefficient
        den, num_g = 1, 0
        coefs = [coef for c in comps for _, coef in c.terms]
        for coef in coefs:
            den = den * coef.denominator // gcd(den, coef.denominator)
        for coef in coefs:
            num_g = gcd(num_g, int(coef * den))
        factor = Fraction(den, num_g)
        if _leading_coeff(comps) < 0:
            factor = -factor
        return SyzygyVector(*(c.scale(factor) for c in comps), v.degree)
    return SyzygyVector(*_normalize_vector(list(comps)), v.degree)


def minimal_generator_degrees(gens: Sequence) -> list[int]:
    return sorted(v.degree for v in minimal_generators(gens))


def module_syzygies(vectors: Sequence[SyzygyVector]) -> list[tuple[list[HomPoly], int]]:
    """Minimal generators of the relations sum v_i * r_i = 0 among vectors.

    Returns (v_1..v_n, weighted degree) where deg v_i = weighted - deg r_i.
    """
    vecs = list(vectors)
    if not vecs:
        return []
    field = vecs[0].a.field
    shifts = [v.degree for v in vecs]
    eng = _module_engine([v.components for v in vecs], field, track=True, cof_shifts=shifts)
    eng.run()
    raw = _harvest_to_vectors(eng.syzygies, field, len(vecs), eng._scales, shifts)
    if not raw:
        return []
    # minimalize in the shifted free module S(-d_1) + ... + S(-d_n)
    raw.sort(key=lambda item: item[1])
    meng = Engine(field.p, ideal=False)
    for comps, _ in raw:
        d = _vector_to_codes(comps, shifts)
        if field.p == 0:
            d, _ = _integralize(d)
        meng.add_input(d)
    meng.run()
    out = []
    for i in sorted(meng.kept_inputs):
        comps, w = raw[i]
        out.append((_normalize_vector(comps), w))
    return out


@dataclass(frozen=True)
class Relation:
    """Second syzygy v1*r1 + v2*r2 + v3*r3 = 0."""

    components: tuple[HomPoly, HomPoly, HomPoly]
    multidegree: tuple[int, int, int]


def second_syzygy_relation(three: Sequence[SyzygyVector]) -> Relation:
    """Generator of the (rank one) module of relations among three vectors,
    scaled so that its first nonzero component has leading coefficient 1."""
    vecs = list(three)
    if len(vecs) != 3:
        raise ValueError("exactly three vectors expected")
    rels = module_syzygies(vecs)
    if not rels:
        raise NoRelation("the three vectors are independent")
    if len(rels) > 1:
        raise RankTooHigh(f"{len(rels)} independent relations")
    comps, w = rels[0]
    for c in comps:
        if c:
            inv = c.field.inv(c.leading_term()[1])
            comps = [u.scale(inv) for u in comps]
            break
    return Relation(tuple(comps), tuple(w - v.degree for v in vecs))

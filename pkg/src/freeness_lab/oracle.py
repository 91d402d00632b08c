"""Dense exact linear algebra, degree by degree.

Everything here is computed from scratch by building the coefficient matrix
of a graded piece and taking its rank; nothing is shared with the Groebner
engine, so the two can check each other.

Two elimination backends exist: a pure Python one (Bareiss over Q,
Gauss-Jordan over F_p) and FLINT through python-flint.  ``auto`` uses the
Python one for small matrices and FLINT otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Sequence

import flint

from .algebra import Field, HomPoly, gradient, monomials_of_degree

__all__ = [
    "DenseMatrix",
    "DegreeTooHigh",
    "mdr_linear",
    "graded_dim_linear",
    "quotient_dim_linear",
    "saturation_dim",
    "saturation_profile",
    "n_profile",
    "profiles",
]

SMALL = 2500  # entries; below this the Python backend is used under "auto"


class DegreeTooHigh(ValueError):
    pass


@lru_cache(maxsize=None)
def _index(m: int) -> dict:
    return {e: i for i, e in enumerate(monomials_of_degree(m))}


class DenseMatrix:
    """Row-major matrix of exact field elements."""

    def __init__(self, rows: int, cols: int, entries: Sequence | None, field: Field, nonzeros=None):
        self.rows, self.cols, self.field = rows, cols, field
        self._nonzeros = nonzeros
        if entries is None:
            self._entries = None
        else:
            if len(entries) != rows * cols:
                raise ValueError("entry count does not match shape")
            self._entries = list(entries)

    @classmethod
    def from_nonzeros(cls, rows: int, cols: int, nonzeros: list, field: Field) -> "DenseMatrix":
        """Build from (i, j, value) triples; the flat list is materialized lazily."""
        return cls(rows, cols, None, field, nonzeros)

    @property
    def entries(self) -> list:
        if self._entries is None:
            e = [0] * (self.rows * self.cols)
            for i, j, v in self._nonzeros:
                e[i * self.cols + j] = v
            self._entries = e
        return self._entries

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field) -> "DenseMatrix":
        return cls(rows, cols, [0] * (rows * cols), field)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field) -> "DenseMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, [v for r in rows for v in r], field)

    def row(self, i: int) -> list:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def tolist(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "DenseMatrix":
        if self._nonzeros is not None:
            return DenseMatrix.from_nonzeros(self.cols, self.rows, [(j, i, v) for i, j, v in self._nonzeros], self.field)
        r, c, e = self.rows, self.cols, self.entries
        return DenseMatrix(c, r, [e[i * c + j] for j in range(c) for i in range(r)], self.field)

    # -- backends ----------------------------------------------------------
    def _pick(self, backend: str) -> str:
        if backend == "auto":
            return "python" if self.rows * self.cols <= SMALL else "flint"
        if backend not in ("python", "flint"):
            raise ValueError(f"unknown backend {backend!r}")
        return backend

    def _flint(self):
        p = self.field.p
        if p:
            if self._nonzeros is not None:
                mat = flint.nmod_mat(self.rows, self.cols, p)
                for i, j, v in self._nonzeros:
                    mat[i, j] = v
                return mat
            return flint.nmod_mat(self.rows, self.cols, [int(v) % p for v in self.entries], p)
        return flint.fmpq_mat(self.rows, self.cols, [flint.fmpq(Fraction(v).numerator, Fraction(v).denominator) for v in self.entries])

    def _flint_integer(self):
        # rank over Q of a rational matrix equals the rank of its row-scaled integer form
        rows = []
        for i in range(self.rows):
            r = [Fraction(v) for v in self.row(i)]
            den = 1
            for v in r:
                den = den * v.denominator // gcd(den, v.denominator)
            rows.extend(int(v * den) for v in r)
        return flint.fmpz_mat(self.rows, self.cols, rows)

    def rank(self, backend: str = "auto") -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        if self._pick(backend) == "flint":
            if self.field.p:
                return self._flint().rank()
            return self._flint_integer().rank()
        if self.field.p:
            return len(_gauss_jordan_modp(self.tolist(), self.field.p)[1])
        return _bareiss_rank(self.tolist())

    def rref(self, backend: str = "auto") -> tuple["DenseMatrix", list[int]]:
        """Reduced row echelon form (nonzero rows only) and pivot columns."""
        if self.rows == 0 or self.cols == 0:
            return DenseMatrix(0, self.cols, [], self.field), []
        if self._pick(backend) == "flint":
            mat, rk = self._flint().rref()
            rows = mat.tolist()[:rk]
            if self.field.p:
                rows = [[int(v) for v in r] for r in rows]
            else:
                rows = [[Fraction(int(v.p), int(v.q)) for v in r] for r in rows]
            pivots = [next(j for j, v in enumerate(r) if v) for r in rows]
            return DenseMatrix.from_rows(rows, self.field) if rows else DenseMatrix(0, self.cols, [], self.field), pivots
        if self.field.p:
            rows, pivots = _gauss_jordan_modp(self.tolist(), self.field.p)
        else:
            rows, pivots = _gauss_jordan_q(self.tolist())
        return (DenseMatrix.from_rows(rows, self.field) if rows else DenseMatrix(0, self.cols, [], self.field)), pivots

    def nullity(self, backend: str = "auto") -> int:
        return self.cols - self.rank(backend)

    def nullspace(self, backend: str = "auto") -> list[list]:
        """Basis of {v : M v = 0}, read off the reduced echelon form."""
        red, pivots = self.rref(backend)
        field = self.field
        free = [j for j in range(self.cols) if j not in set(pivots)]
        basis = []
        for j in free:
            v = [field.zero] * self.cols
            v[j] = field.one
            for r, pc in enumerate(pivots):
                v[pc] = field.neg(red.entries[r * red.cols + j])
            basis.append(v)
        return basis


def _bareiss_rank(rows: list[list]) -> int:
    """Fraction-free Bareiss elimination on an integer-scaled copy."""
    mat = []
    for r in rows:
        r = [Fraction(v) for v in r]
        den = 1
        for v in r:
            den = den * v.denominator // gcd(den, v.denominator)
        mat.append([int(v * den) for v in r])
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    prev = 1
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pr = mat[rank]
        pv = pr[col]
        for i in range(rank + 1, nrows):
            ri = mat[i]
            a = ri[col]
            mat[i] = [(pv * ri[j] - a * pr[j]) // prev for j in range(ncols)]
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def _gauss_jordan_modp(rows: list[list], p: int) -> tuple[list[list], list[int]]:
    mat = [[v % p for v in r] for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        pr = [v * inv % p for v in mat[rank]]
        mat[rank] = pr
        for i in range(nrows):
            if i != rank and mat[i][col]:
                a = mat[i][col]
                ri = mat[i]
                mat[i] = [(ri[j] - a * pr[j]) % p for j in range(ncols)]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return mat[:rank], pivots


def _gauss_jordan_q(rows: list[list]) -> tuple[list[list], list[int]]:
    mat = [[Fraction(v) for v in r] for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        pr = [v * inv for v in mat[rank]]
        mat[rank] = pr
        for i in range(nrows):
            if i != rank and mat[i][col]:
                a = mat[i][col]
                ri = mat[i]
                mat[i] = [ri[j] - a * pr[j] for j in range(ncols)]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return mat[:rank], pivots


# ---------------------------------------------------------------------------
# graded pieces


def multiples_matrix(gens: Sequence[HomPoly], m: int, field: Field) -> DenseMatrix:
    """Columns are the monomial multiples w*g landing in degree m."""
    target = _index(m)
    cols = []
    for g in gens:
        if not g or g.degree > m:
            continue
        items = list(g.as_dict().items())
        for (a, b, c) in monomials_of_degree(m - g.degree):
            cols.append({target[(x + a, y + b, z + c)]: v for (x, y, z), v in items})
    triples = [(i, j, v) for j, col in enumerate(cols) for i, v in col.items()]
    return DenseMatrix.from_nonzeros(len(target), len(cols), triples, field)


def graded_dim_linear(gens: Sequence[HomPoly], m: int, backend: str = "auto") -> int:
    """dim of the degree-m part of the ideal generated by ``gens``."""
    gens = [g for g in gens if g]
    if not gens or m < 0:
        return 0
    return multiples_matrix(gens, m, gens[0].field).rank(backend)


def quotient_dim_linear(gens: Sequence[HomPoly], m: int, backend: str = "auto") -> int:
    if m < 0:
        return 0
    return comb(m + 2, 2) - graded_dim_linear(gens, m, backend)


def relation_matrix(f: HomPoly, m: int) -> DenseMatrix:
    """Matrix of (a, b, c) -> a f_x + b f_y + c f_z on S_m^3."""
    return multiples_matrix_blocks(gradient(f), m, f.field)


def multiples_matrix_blocks(polys: Sequence[HomPoly], m: int, field: Field) -> DenseMatrix:
    # like multiples_matrix but keeps one block of columns per poly, zero polys included
    deg = next(g.degree for g in polys if g)
    target = _index(m + deg)
    cols = []
    for g in polys:
        items = list(g.as_dict().items())
        for (a, b, c) in monomials_of_degree(m):
            cols.append({target[(x + a, y + b, z + c)]: v for (x, y, z), v in items})
    triples = [(i, j, v) for j, col in enumerate(cols) for i, v in col.items()]
    return DenseMatrix.from_nonzeros(len(target), len(cols), triples, field)


def mdr_linear(f: HomPoly, backend: str = "auto") -> int:
    """Least m with a nonzero relation (a, b, c) in S_m^3, by kernel search."""
    partials = gradient(f)
    if not any(partials):
        raise ValueError("all partial derivatives vanish")
    d = f.degree
    for m in range(d):
        if relation_matrix(f, m).nullity(backend) > 0:
            return m
    raise AssertionError("Koszul relations exist in degree d-1")


def relation_dims_linear(f: HomPoly, m: int, backend: str = "auto") -> int:
    """dim of the space of relations of degree m."""
    return relation_matrix(f, m).nullity(backend)


# ---------------------------------------------------------------------------
# saturation


class _QuotientPiece:
    """Degree-j piece of S/J: the non-pivot monomials of the row-reduced
    multiples matrix form a basis, pivot rows rewrite the rest."""

    def __init__(self, gens: Sequence[HomPoly], j: int, field: Field, backend: str):
        self.field = field
        mons = monomials_of_degree(j)
        n = len(mons)
        mat = multiples_matrix(gens, j, field).transpose()  # rows: multiples
        self._row_of: dict[int, int] = {}
        if mat.rows == 0:
            self._pivots: list[int] = []
            self._get = None
        elif mat._pick(backend) == "flint" and field.p:
            red, rank = mat._flint().rref()
            pivots, c = [], 0
            for i in range(rank):
                while not int(red[i, c]):
                    c += 1
                pivots.append(c)
                c += 1
            self._pivots = pivots
            self._get = lambda i, c, red=red: int(red[i, c])
        else:
            red, pivots = mat.rref(backend)
            self._pivots = pivots
            self._get = lambda i, c, red=red: red.entries[i * red.cols + c]
        self._row_of = {c: i for i, c in enumerate(self._pivots)}
        self.basis = [c for c in range(n) if c not in self._row_of]
        self._pos = {c: k for k, c in enumerate(self.basis)}

    @property
    def ideal_dim(self) -> int:
        return len(self._pivots)

    def coordinates(self, col: int) -> list:
        """Image of the monomial with index ``col`` in the quotient basis."""
        field = self.field
        vec = [field.zero] * len(self.basis)
        k = self._pos.get(col)
        if k is not None:
            vec[k] = field.one
            return vec
        i = self._row_of[col]
        for k, c in enumerate(self.basis):
            v = self._get(i, c)
            if v:
                vec[k] = field.neg(field(v))
        return vec


def saturation_profile(f: HomPoly, stab: int, backend: str = "auto") -> list[int]:
    """dim (I_f)_m for m = 0..stab."""
    return [j + n for j, n in zip(*_ideal_and_torsion(f, stab, backend))]


def _ideal_and_torsion(f: HomPoly, stab: int, backend: str) -> tuple[list[int], list[int]]:
    """dim (J_f)_m and dim (I_f/J_f)_m for m = 0..stab.

    Works in S/J: K_stab = 0 and K_j = {g : x g, y g, z g in K_(j+1)}, which is
    the set of classes killed by every monomial of degree stab - j.
    """
    field = f.field
    d = f.degree
    if stab < 3 * d - 5:
        raise ValueError(f"stabilization degree {stab} below 3d-5 = {3 * d - 5}")
    partials = [g for g in gradient(f) if g]
    pieces = {}

    def piece(j):
        if j not in pieces:
            pieces[j] = _QuotientPiece(partials, j, field, backend)
        return pieces[j]

    ideal = [0] * (stab + 1)
    torsion = [0] * (stab + 1)
    top = piece(stab)
    ideal[stab] = top.ideal_dim
    proj = None  # None: identity on the quotient basis (K_stab = 0)
    for j in range(stab - 1, -1, -1):
        low, high = piece(j), piece(j + 1)
        ideal[j] = low.ideal_dim
        mons = monomials_of_degree(j)
        up = _index(j + 1)
        blocks = []
        for var in range(3):
            cols = []
            for c in low.basis:
                e = list(mons[c])
                e[var] += 1
                cols.append(high.coordinates(up[tuple(e)]))
            rows = [list(r) for r in zip(*cols)] if cols else []
            if proj is not None:
                rows = _matmul(proj, rows, len(low.basis), field) if proj else []
            blocks.extend(rows)
        nb = len(low.basis)
        if nb == 0:
            proj = []
            pieces.pop(j + 1, None)
            continue
        stacked = DenseMatrix.from_rows(blocks, field) if blocks else DenseMatrix(0, nb, [], field)
        red, _ = stacked.rref(backend)
        torsion[j] = nb - red.rows
        proj = red.tolist()
        pieces.pop(j + 1, None)
    return ideal, torsion


def _matmul(a: list[list], b: list[list], ncols: int, field: Field) -> list[list]:
    out = []
    for row in a:
        acc = [field.zero] * ncols
        for k, v in enumerate(row):
            if v:
                for c, w in enumerate(b[k]):
                    if w:
                        acc[c] = field.add(acc[c], field.mul(v, w))
        out.append(acc)
    return out


def saturation_dim(f: HomPoly, m: int, stab: int, backend: str = "auto") -> int:
    if m > stab:
        raise DegreeTooHigh(f"degree {m} above stabilization degree {stab}")
    if m < 0:
        return 0
    return saturation_profile(f, stab, backend)[m]


def n_profile(f: HomPoly, stab: int, backend: str = "auto") -> dict[int, int]:
    """Nonzero values of n(f)_m = dim (I_f)_m - dim (J_f)_m for m <= stab."""
    _, torsion = _ideal_and_torsion(f, stab, backend)
    return {m: n for m, n in enumerate(torsion) if n}


def profiles(f: HomPoly, stab: int, backend: str = "auto") -> tuple[list[int], list[int]]:
    """(dim (J_f)_m, dim (I_f)_m) for m = 0..stab in one pass."""
    ideal, torsion = _ideal_and_torsion(f, stab, backend)
    return ideal, [a + b for a, b in zip(ideal, torsion)]

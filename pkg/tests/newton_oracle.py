"""Kouchnirenko's Newton number of a convenient plane germ.

Independent of the Kummer formulas: for a germ g(u, v) at the origin that
is convenient (contains pure powers of u and v) and nondegenerate on every
edge of its Newton boundary, the Milnor number is 2V - a - b + 1, with V the
area under the boundary and u^a, v^b the pure powers on it.
"""

from fractions import Fraction
from math import gcd


class Degenerate(ValueError):
    pass


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_boundary(support):
    pts = set(support)
    a = min((i for i, j in pts if j == 0), default=None)
    b = min((j for i, j in pts if i == 0), default=None)
    if a is None or b is None:
        raise ValueError("germ is not convenient")
    cand = sorted(p for p in pts if p[0] <= a and p[1] <= b)
    hull = []
    for p in cand:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    # keep the part facing the origin: from (0, b) down to (a, 0)
    start, end = hull.index((0, b)), hull.index((a, 0))
    return hull[start:end + 1], a, b


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _divmod_poly(n, d):
    n = list(n)
    q = [Fraction(0)] * max(len(n) - len(d) + 1, 1)
    while len(_trim(n)) >= len(d):
        c = n[-1] / d[-1]
        s = len(n) - len(d)
        q[s] = c
        for i, v in enumerate(d):
            n[s + i] -= c * v
    return q, n


def _gcd_poly(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _divmod_poly(a, b)
        a, b = b, _trim(r)
    return a


def edge_polynomial(coeffs, p0, p1):
    g = gcd(p1[0] - p0[0], p0[1] - p1[1])
    di, dj = (p1[0] - p0[0]) // g, (p1[1] - p0[1]) // g
    return [Fraction(coeffs.get((p0[0] + s * di, p0[1] + s * dj), 0)) for s in range(g + 1)]


def newton_number(coeffs):
    """Milnor number of sum c_(i,j) u^i v^j over Q (coefficients exact)."""
    coeffs = {e: c for e, c in coeffs.items() if c}
    if (0, 0) in coeffs:
        raise ValueError("germ does not pass through the origin")
    boundary, a, b = newton_boundary(coeffs)
    for p0, p1 in zip(boundary, boundary[1:]):
        poly = edge_polynomial(coeffs, p0, p1)
        deriv = [k * c for k, c in enumerate(poly)][1:]
        if len(_gcd_poly(poly, deriv)) > 1:
            raise Degenerate(f"edge {p0}-{p1} has a repeated root")
    twice_area = sum(x0 * y1 - x1 * y0 for (x0, y0), (x1, y1) in zip(boundary, boundary[1:]))
    return -twice_area - a - b + 1 if twice_area < 0 else twice_area - a - b + 1


def germ_at_vertex(f, vertex):
    """Affine germ of a ternary HomPoly at a coordinate vertex, as {(i, j): c}."""
    others = [i for i in range(3) if i != vertex]
    return {(e[others[0]], e[others[1]]): c for e, c in f.as_dict().items()}

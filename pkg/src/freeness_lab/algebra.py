"""Exact coefficient fields and homogeneous polynomials in x, y, z.

Two fields are supported: the rationals (elements are ``fractions.Fraction``)
and prime fields F_p with p below 2**31 (elements are ``int`` in ``[0, p)``).
Polynomials are immutable and always homogeneous; the zero polynomial is
allowed and has ``degree is None``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping, NamedTuple

__all__ = [
    "Field",
    "QQ",
    "GF",
    "Monomial",
    "HomPoly",
    "ParseError",
    "NotHomogeneous",
    "ZeroPolynomial",
    "AxisContained",
    "DivisionNotExact",
    "parse_poly",
    "derive",
    "kummer_pullback",
    "axis_intersection_multiplicity",
    "AXES",
    "gradient",
    "monomials_of_degree",
]

WORD_PRIME_BOUND = 1 << 31
DEFAULT_PRIME = 32003


class ParseError(ValueError):
    pass


class NotHomogeneous(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


class AxisContained(ValueError):
    pass


class DivisionNotExact(ArithmeticError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """The rationals (``p == 0``) or the prime field F_p.

    Elements are plain Python values: ``Fraction`` over Q (always in lowest
    terms with positive denominator, which ``Fraction`` guarantees) and
    ``int`` in ``[0, p)`` over F_p.
    """

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p:
            if not (2 <= p < WORD_PRIME_BOUND) or not _is_prime(p):
                raise ValueError(f"{p} is not a word-sized prime")
        self.p = p

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    @property
    def is_prime_field(self) -> bool:
        return self.p != 0

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, value):
        """Coerce an int, Fraction or field element into this field."""
        p = self.p
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            num, den = value.numerator % p, value.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator {value.denominator} vanishes mod {p}")
            return num * pow(den, -1, p) % p
        return int(value) % p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def neg(self, a):
        return -a % self.p if self.p else -a

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            # extended gcd inversion, built into pow for negative exponents
            return pow(a, -1, self.p)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def format(self, a) -> str:
        if self.p:
            return str(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


QQ = Field(0)


def GF(p: int = DEFAULT_PRIME) -> Field:
    return Field(p)


class Monomial(NamedTuple):
    """Exponent triple of x^ex * y^ey * z^ez, ordered by grevlex with x > y > z."""

    ex: int
    ey: int
    ez: int

    @property
    def degree(self) -> int:
        return self.ex + self.ey + self.ez

    def key(self) -> tuple:
        return grevlex_key(self)

    def __lt__(self, other):
        return grevlex_key(self) < grevlex_key(other)

    def __le__(self, other):
        return grevlex_key(self) <= grevlex_key(other)

    def __gt__(self, other):
        return grevlex_key(self) > grevlex_key(other)

    def __ge__(self, other):
        return grevlex_key(self) >= grevlex_key(other)

    def __mul__(self, other):
        return Monomial(self.ex + other.ex, self.ey + other.ey, self.ez + other.ez)

    def divides(self, other) -> bool:
        return self.ex <= other[0] and self.ey <= other[1] and self.ez <= other[2]


def grevlex_key(e) -> tuple:
    """Sort key for an exponent triple: larger key means larger in grevlex."""
    return (e[0] + e[1] + e[2], -e[2], -e[1])


def monomials_of_degree(m: int) -> list[tuple[int, int, int]]:
    """All exponent triples of total degree ``m``, in decreasing grevlex order."""
    if m < 0:
        return []
    return [(m - ey - ez, ey, ez) for ez in range(m + 1) for ey in range(m - ez + 1)]


def _clean(terms: Mapping, field: Field) -> dict:
    return {e: c for e, c in terms.items() if c}


class HomPoly:
    """Immutable homogeneous polynomial in x, y, z over an exact field.

    ``terms`` is the list of ``(Monomial, coefficient)`` pairs in strictly
    decreasing grevlex order. ``degree`` is ``None`` for the zero polynomial.
    """

    __slots__ = ("field", "_dict", "_degree", "_hash")

    def __init__(self, terms: Mapping | Iterable = (), field: Field = QQ, *, _trusted: bool = False):
        if not _trusted:
            items = terms.items() if isinstance(terms, Mapping) else terms
            acc: dict = {}
            for e, c in items:
                e = tuple(int(v) for v in e)
                if len(e) != 3 or min(e) < 0:
                    raise ValueError(f"bad exponent {e}")
                acc[e] = field.add(acc.get(e, field.zero), field(c))
            terms = _clean(acc, field)
        self.field = field
        self._dict = dict(terms)
        self._hash = None
        degrees = {sum(e) for e in self._dict}
        if len(degrees) > 1:
            raise NotHomogeneous(f"mixed degrees {sorted(degrees)}")
        self._degree = degrees.pop() if degrees else None

    # construction helpers -------------------------------------------------
    @classmethod
    def _from_dict(cls, d: dict, field: Field) -> "HomPoly":
        return cls(d, field, _trusted=True)

    @classmethod
    def zero(cls, field: Field = QQ) -> "HomPoly":
        return cls({}, field, _trusted=True)

    @classmethod
    def monomial(cls, e, coeff=1, field: Field = QQ) -> "HomPoly":
        return cls({tuple(e): coeff}, field)

    @classmethod
    def variables(cls, field: Field = QQ) -> tuple["HomPoly", "HomPoly", "HomPoly"]:
        return tuple(cls({e: 1}, field) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    # basic properties -----------------------------------------------------
    @property
    def degree(self) -> int | None:
        return self._degree

    @property
    def terms(self) -> list[tuple[Monomial, object]]:
        return [(Monomial(*e), self._dict[e]) for e in sorted(self._dict, key=grevlex_key, reverse=True)]

    def as_dict(self) -> dict:
        return dict(self._dict)

    def coefficient(self, e):
        return self._dict.get(tuple(e), self.field.zero)

    def is_zero(self) -> bool:
        return not self._dict

    def __bool__(self):
        return bool(self._dict)

    def __len__(self):
        return len(self._dict)

    def leading_term(self) -> tuple[Monomial, object]:
        if not self._dict:
            raise ZeroPolynomial("zero polynomial has no leading term")
        e = max(self._dict, key=grevlex_key)
        return Monomial(*e), self._dict[e]

    def __eq__(self, other):
        if isinstance(other, HomPoly):
            return self.field == other.field and self._dict == other._dict
        if other == 0:
            return not self._dict
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self._dict.items())))
        return self._hash

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "HomPoly":
        if isinstance(other, HomPoly):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return HomPoly({(0, 0, 0): other}, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.field.p:
            p = self.field.p
            d = dict(self._dict)
            for e, c in other._dict.items():
                v = (d.get(e, 0) + c) % p
                if v:
                    d[e] = v
                else:
                    d.pop(e, None)
        else:
            d = dict(self._dict)
            for e, c in other._dict.items():
                v = d.get(e, 0) + c
                if v:
                    d[e] = v
                else:
                    d.pop(e, None)
        return HomPoly(d, self.field, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return HomPoly({e: f.neg(c) for e, c in self._dict.items()}, f, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "HomPoly":
        f = self.field
        c = f(c)
        if not c:
            return HomPoly.zero(f)
        return HomPoly({e: f.mul(v, c) for e, v in self._dict.items()}, f, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        d: dict = {}
        get = d.get
        for (a1, b1, c1), u in self._dict.items():
            for (a2, b2, c2), v in other._dict.items():
                e = (a1 + a2, b1 + b2, c1 + c2)
                d[e] = get(e, 0) + u * v
        if p:
            d = {e: c % p for e, c in d.items() if c % p}
        else:
            d = {e: c for e, c in d.items() if c}
        return HomPoly(d, self.field, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = HomPoly({(0, 0, 0): self.field.one}, self.field, _trusted=True)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, e, coeff=1) -> "HomPoly":
        a, b, c = e
        f = self.field
        coeff = f(coeff)
        if not coeff:
            return HomPoly.zero(f)
        return HomPoly(
            {(x + a, y + b, z + c): f.mul(v, coeff) for (x, y, z), v in self._dict.items()}, f, _trusted=True
        )

    def divide_monomial(self, e) -> "HomPoly":
        """Exact division by the monomial with exponents ``e``."""
        a, b, c = e
        out = {}
        for (x, y, z), v in self._dict.items():
            if x < a or y < b or z < c:
                raise DivisionNotExact(f"term {(x, y, z)} not divisible by {tuple(e)}")
            out[(x - a, y - b, z - c)] = v
        return HomPoly(out, self.field, _trusted=True)

    def content_normalized(self) -> "HomPoly":
        """Scalar multiple with leading coefficient 1."""
        if not self._dict:
            return self
        _, lc = self.leading_term()
        return self.scale(self.field.inv(lc))

    def evaluate(self, point) -> object:
        f = self.field
        x0, y0, z0 = (f(v) for v in point)
        total = f.zero
        for (a, b, c), v in self._dict.items():
            total = f.add(total, f.mul(v, f.mul(f.mul(_pow(f, x0, a), _pow(f, y0, b)), _pow(f, z0, c))))
        return total

    def substitute(self, images) -> "HomPoly":
        """Compose with three homogeneous polynomials of equal degree."""
        images = [self._coerce(g) for g in images]
        result = HomPoly.zero(self.field)
        for (a, b, c), v in self._dict.items():
            result = result + (images[0] ** a * images[1] ** b * images[2] ** c).scale(v)
        return result

    def to_field(self, field: Field) -> "HomPoly":
        """Map coefficients into ``field`` (e.g. reduce rational data mod p)."""
        return HomPoly({e: field(c) for e, c in self._dict.items()}, field)

    # printing -------------------------------------------------------------
    def __str__(self):
        if not self._dict:
            return "0"
        f = self.field
        parts = []
        for mono, c in self.terms:
            factors = []
            for name, k in zip("xyz", mono):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            negative = not f.p and c < 0
            mag = -c if negative else c
            cs = f.format(mag)
            if not factors:
                body = cs
            elif cs == "1":
                body = "*".join(factors)
            else:
                body = "*".join([cs] + factors)
            if parts:
                parts.append(("-" if negative else "+") + body)
            else:
                parts.append(("-" if negative else "") + body)
        return "".join(parts)

    def __repr__(self):
        return f"HomPoly({str(self)!r}, {self.field!r})"


def _pow(field: Field, a, n: int):
    if field.p:
        return pow(a, n, field.p)
    return a**n


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([xyz])|(\*\*|[-+*^/()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r} at offset {pos}")
        num, var, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif var is not None:
            out.append(("var", var))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    """Recursive descent over ``+ - * ^ ( )``; builds general (possibly
    inhomogeneous) dict polynomials, homogeneity is checked at the end."""

    def __init__(self, text: str, field: Field):
        self.tokens = _tokenize(text)
        self.i = 0
        self.field = field

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val!r}")

    def parse(self) -> dict:
        if not self.tokens:
            raise ParseError("empty expression")
        d = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input at token {self.peek()[1]!r}")
        return d

    def expr(self) -> dict:
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            acc = _dadd(acc, rhs if op == "+" else _dscale(rhs, -1, self.field), self.field)
        return acc

    def term(self) -> dict:
        acc = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = _dmul(acc, self.unary(), self.field)
            elif kind == "op" and val == "/":
                self.take()
                rhs = self.unary()
                if set(rhs) - {(0, 0, 0)} or not rhs:
                    raise ParseError("division only by nonzero constants")
                acc = _dscale(acc, self.field.inv(rhs[(0, 0, 0)]), self.field)
            else:
                return acc

    def unary(self) -> dict:
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.unary()
            return inner if val == "+" else _dscale(inner, -1, self.field)
        return self.power()

    def power(self) -> dict:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer literal")
            result = {(0, 0, 0): self.field.one}
            for _ in range(int(val)):
                result = _dmul(result, base, self.field)
            return result
        return base

    def atom(self) -> dict:
        kind, val = self.take()
        if kind == "num":
            c = self.field(int(val))
            return {(0, 0, 0): c} if c else {}
        if kind == "var":
            return {{"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}[val]: self.field.one}
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {val!r}" if val else "unexpected end of input")


def _dadd(a: dict, b: dict, field: Field) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = field.add(out.get(e, field.zero), c)
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _dscale(a: dict, c, field: Field) -> dict:
    c = field(c)
    return {e: field.mul(v, c) for e, v in a.items() if field.mul(v, c)}


def _dmul(a: dict, b: dict, field: Field) -> dict:
    out: dict = {}
    for (a1, b1, c1), u in a.items():
        for (a2, b2, c2), v in b.items():
            e = (a1 + a2, b1 + b2, c1 + c2)
            out[e] = field.add(out.get(e, field.zero), field.mul(u, v))
    return {e: c for e, c in out.items() if c}


def parse_poly(text: str, field: Field = QQ, *, allow_zero: bool = False) -> HomPoly:
    """Parse an ASCII polynomial such as ``"(y*z-x^2)^2*y-x^5"``.

    Raises ParseError on malformed text, NotHomogeneous when the expansion has
    mixed degrees and ZeroPolynomial when it expands to 0 (unless
    ``allow_zero``).
    """
    d = _Parser(text, field).parse()
    if not d:
        if allow_zero:
            return HomPoly.zero(field)
        raise ZeroPolynomial(f"{text!r} expands to the zero polynomial")
    return HomPoly(d, field, _trusted=True)


# ---------------------------------------------------------------------------
# calculus and geometry on coordinate axes

_VAR_INDEX = {"x": 0, "y": 1, "z": 2}


def derive(f: HomPoly, var: str) -> HomPoly:
    i = _VAR_INDEX[var]
    field = f.field
    out = {}
    for e, c in f._dict.items():
        k = e[i]
        if k:
            v = field.mul(c, field(k))
            if v:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = v
    return HomPoly(out, field, _trusted=True)


def gradient(f: HomPoly) -> tuple[HomPoly, HomPoly, HomPoly]:
    return derive(f, "x"), derive(f, "y"), derive(f, "z")


def kummer_pullback(f: HomPoly, k: int) -> HomPoly:
    """f(x^k, y^k, z^k)."""
    if k < 1:
        raise ValueError("k must be positive")
    return HomPoly({(a * k, b * k, c * k): v for (a, b, c), v in f._dict.items()}, f.field, _trusted=True)


# axis name -> index of the coordinate that vanishes on it
AXES = {"L_x": 0, "L_y": 1, "L_z": 2}


def restrict_to_axis(f: HomPoly, axis: str) -> dict[int, object]:
    """Binary form f|_axis as {exponent of the first free variable: coeff}."""
    i = AXES[axis]
    j, _ = [t for t in range(3) if t != i]
    return {e[j]: c for e, c in f._dict.items() if e[i] == 0}


def axis_intersection_multiplicity(f: HomPoly, axis: str, point) -> int:
    """Local intersection number of f = 0 with a coordinate line at ``point``.

    ``point`` is a projective point on the axis; the restricted binary form is
    divided exactly by the linear form vanishing at the point until it no
    longer divides.
    """
    i = AXES[axis]
    field = f.field
    pt = [field(v) for v in point]
    if pt[i]:
        raise ValueError(f"{tuple(point)} is not on {axis}")
    if not f:
        raise AxisContained("zero polynomial")
    u, w = [t for t in range(3) if t != i]
    pu, pw = pt[u], pt[w]
    if not pu and not pw:
        raise ValueError("not a projective point")
    form = restrict_to_axis(f, axis)
    if not form:
        raise AxisContained(f"f vanishes identically on {axis}")
    d = f.degree
    # coefficient list c[j] of s^j t^(d-j) with s the u-coordinate, t the w-coordinate
    coeffs = [form.get(j, field.zero) for j in range(d + 1)]
    # the point is a root of (pw*s - pu*t); divide repeatedly
    mult = 0
    while len(coeffs) > 1:
        q = _divide_binary(coeffs, pw, pu, field)
        if q is None:
            break
        coeffs = q
        mult += 1
    return mult


def _divide_binary(coeffs: list, a, b, field: Field):
    """Divide sum c_j s^j t^(n-j) by (a*s - b*t); None when not exact."""
    n = len(coeffs) - 1
    # write quotient q_j s^j t^(n-1-j); (a s - b t) q = a q_{j-1} - b q_j at s^j
    if a:
        # solve from the top: c_n = a q_{n-1}
        q = [field.zero] * n
        inv_a = field.inv(a)
        q[n - 1] = field.mul(coeffs[n], inv_a)
        for j in range(n - 1, 0, -1):
            # c_j = a q_{j-1} - b q_j
            q[j - 1] = field.mul(field.add(coeffs[j], field.mul(b, q[j])), inv_a)
        if field.neg(field.mul(b, q[0])) != coeffs[0]:
            return None
        return q
    # a == 0: divide by t (b nonzero), exact iff c_n == 0
    if coeffs[n]:
        return None
    inv_mb = field.inv(field.neg(b))
    return [field.mul(c, inv_mb) for c in coeffs[:n]]


def euler_check(f: HomPoly) -> bool:
    """x f_x + y f_y + z f_z == deg(f) * f."""
    x, y, z = HomPoly.variables(f.field)
    fx, fy, fz = gradient(f)
    return x * fx + y * fy + z * fz == f.scale(f.degree or 0)

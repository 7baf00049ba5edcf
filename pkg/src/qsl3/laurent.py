"""Exact arithmetic in Z[v, v^-1] and its fraction field Q(v).

LaurentPoly is the universal coefficient type of the package: quantum
integers, module structure constants, involution matrices and certificate
payloads are all Laurent polynomials in one indeterminate v with Python-int
(hence arbitrary-precision) coefficients.  RatFunc is the reduced fraction
type that appears transiently inside exact linear solves.

Both types are immutable and hashable, and every operation is pure, so
values can be shared freely between threads.
"""

from __future__ import annotations

from math import gcd as _int_gcd


class NotDivisible(ArithmeticError):
    """Exact division failed: the quotient does not lie in Z[v, v^-1]."""


def _prune(terms: dict) -> dict:
    return {e: c for e, c in terms.items() if c}


class LaurentPoly:
    """Sparse Laurent polynomial over Z, stored as {exponent: coefficient}.

    The term map never contains zero coefficients; the empty map is 0.
    Instances must not be mutated after construction.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        self.terms = _prune(dict(terms)) if terms else {}
        self._hash = None

    @classmethod
    def _make(cls, terms: dict) -> "LaurentPoly":
        # internal: terms must already be pruned and owned by the callee
        p = object.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls._make({0: c} if c else {})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls._make({exp: coeff} if coeff else {})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._make(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._make({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            if other == 1:
                return self
            return LaurentPoly._make({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return ZERO
        if len(a) == 1:
            (e0, c0), = a.items()
            return other.shifted(e0) * c0
        if len(b) == 1:
            (e0, c0), = b.items()
            return self.shifted(e0) * c0
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly._make(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def shifted(self, k: int) -> "LaurentPoly":
        """Multiply by v^k."""
        if k == 0 or not self.terms:
            return self
        return LaurentPoly._make({e + k: c for e, c in self.terms.items()})

    def bar(self) -> "LaurentPoly":
        """The bar involution v -> v^-1."""
        return LaurentPoly._make({-e: c for e, c in self.terms.items()})

    def exact_div(self, b: "LaurentPoly") -> "LaurentPoly":
        """Return q with q*b == self, raising NotDivisible if none exists."""
        if b.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return ZERO
        # Shift both operands so they become ordinary polynomials; unit
        # factors v^k never obstruct divisibility.
        sa, sb = self.min_exp(), b.min_exp()
        rem = {e - sa: c for e, c in self.terms.items()}
        bt = {e - sb: c for e, c in b.terms.items()}
        db = max(bt)
        bl = bt[db]
        quot: dict = {}
        while rem:
            dr = max(rem)
            if dr < db:
                raise NotDivisible(f"({self}) / ({b})")
            cr = rem[dr]
            if cr % bl:
                raise NotDivisible(f"({self}) / ({b})")
            c = cr // bl
            e = dr - db
            quot[e] = c
            for eb, cb in bt.items():
                k = eb + e
                s = rem.get(k, 0) - c * cb
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return LaurentPoly._make({e + sa - sb: c for e, c in quot.items()})

    # -- inspection ---------------------------------------------------------

    def min_exp(self) -> int:
        return min(self.terms)

    def max_exp(self) -> int:
        return max(self.terms)

    def coeff(self, e: int) -> int:
        return self.terms.get(e, 0)

    def in_v_inverse_lattice(self) -> bool:
        """True iff the polynomial lies in v^-1 Z[v^-1]."""
        return all(e < 0 for e in self.terms)

    def is_bar_symmetric(self) -> bool:
        return all(self.terms.get(-e, 0) == c for e, c in self.terms.items())

    def is_bar_antisymmetric(self) -> bool:
        return all(self.terms.get(-e, 0) == -c for e, c in self.terms.items())

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- rendering ----------------------------------------------------------

    def text(self) -> str:
        """Canonical text form, terms in increasing exponent order.

        Examples: ``0``, ``-v^-3 + 1 + 2*v^2``, ``v + v^-1`` is rendered
        ``v^-1 + v``.
        """
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                vpart = "v" if e == 1 else f"v^{e}"
                body = vpart if mag == 1 else f"{mag}*{vpart}"
            pieces.append((c < 0, body))
        neg, body = pieces[0]
        out = ("-" if neg else "") + body
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def to_json(self) -> list:
        """Bit-exact JSON form: [[exponent, coefficient-as-string], ...]."""
        return [[e, str(self.terms[e])] for e in sorted(self.terms)]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in data})

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"LaurentPoly({self.text()!r})"


ZERO = LaurentPoly._make({})
ONE = LaurentPoly._make({0: 1})
V = LaurentPoly._make({1: 1})


def vpow(k: int) -> LaurentPoly:
    """The monomial v^k."""
    return LaurentPoly._make({k: 1})


# -- dense Z[v] helpers for gcd reduction ------------------------------------
#
# RatFunc normalization needs polynomial gcds.  These run on dense int lists
# (index = exponent) because the polynomials involved are tiny.


def _list_content(p: list) -> int:
    g = 0
    for c in p:
        g = _int_gcd(g, c)
    return g


def _list_prim(p: list):
    g = _list_content(p)
    if g in (0, 1):
        return p, g
    return [c // g for c in p], g


def _list_trim(p: list) -> list:
    n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return p[:n]


def _list_pseudo_rem(a: list, b: list) -> list:
    """Pseudo-remainder of a by b over Z[v]; b nonzero."""
    a = a[:]
    db, lb = len(b) - 1, b[-1]
    while True:
        a = _list_trim(a)
        da = len(a) - 1
        if da < db:
            return a
        la = a[-1]
        a = [c * lb for c in a]
        for i, cb in enumerate(b):
            a[da - db + i] -= la * cb
        a = _list_trim(a)


def _list_gcd(a: list, b: list) -> list:
    """Gcd in Z[v] (content included), on trimmed dense lists."""
    a, b = _list_trim(a), _list_trim(b)
    if not a:
        return b
    if not b:
        return a
    ca = _list_content(a)
    cb = _list_content(b)
    a = [c // ca for c in a]
    b = [c // cb for c in b]
    while b:
        r = _list_pseudo_rem(a, b)
        a, b = b, _list_prim(r)[0] if r else []
    if a[-1] < 0:
        a = [-c for c in a]
    cg = _int_gcd(ca, cb)
    return [c * cg for c in a]


def _poly_to_list(p: LaurentPoly):
    """Split p = v^shift * (dense poly with nonzero constant term)."""
    s = p.min_exp()
    out = [0] * (p.max_exp() - s + 1)
    for e, c in p.terms.items():
        out[e - s] = c
    return s, out


def _list_to_poly(lst: list, shift: int = 0) -> LaurentPoly:
    return LaurentPoly._make({i + shift: c for i, c in enumerate(lst) if c})


class RatFunc:
    """Reduced fraction of Laurent polynomials.

    Normal form: the denominator is an ordinary polynomial with nonzero
    constant term and positive leading coefficient, and numerator and
    denominator share no factor (integer content included).  Equal fractions
    therefore compare equal structurally, which makes RatFunc hashable.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = ONE):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        if den == ONE:
            self.num, self.den = num, ONE
            return
        sn, ln = _poly_to_list(num)
        sd, ld = _poly_to_list(den)
        g = _list_gcd(ln, ld)
        if len(g) > 1 or g[0] != 1:
            gp = _list_to_poly(g)
            num2 = _list_to_poly(ln).exact_div(gp)
            den2 = _list_to_poly(ld).exact_div(gp)
        else:
            num2 = _list_to_poly(ln)
            den2 = _list_to_poly(ld)
        if den2.terms[den2.max_exp()] < 0:
            num2, den2 = -num2, -den2
        self.num = num2.shifted(sn - sd)
        self.den = den2

    @classmethod
    def from_int(cls, c: int) -> "RatFunc":
        return cls(LaurentPoly.const(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        r = object.__new__(RatFunc)
        r.num, r.den = -self.num, self.den
        return r

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den, self.den * other.num)

    def bar(self) -> "RatFunc":
        return RatFunc(self.num.bar(), self.den.bar())

    def as_laurent(self) -> LaurentPoly:
        """Convert back to Z[v, v^-1]; raises NotDivisible if not integral."""
        if self.den == ONE:
            return self.num
        return self.num.exact_div(self.den)

    def is_laurent(self) -> bool:
        return self.den == ONE

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den == ONE:
            return self.num.text()
        return f"({self.num.text()}) / ({self.den.text()})"

    def __repr__(self):
        return f"RatFunc({self.num.text()!r}, {self.den.text()!r})"


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RatFunc(x)
    if isinstance(x, int):
        return RatFunc.from_int(x)
    return NotImplemented


RF_ZERO = RatFunc(ZERO)
RF_ONE = RatFunc(ONE)

"""Weights of sl3 and the monomial labels that index module bases.

Weights live in fundamental-weight coordinates: lam = (l1, l2) stands for
l1*w1 + l2*w2, and the simple-coroot pairings are just the coordinates.
The simple roots are alpha1 = (2, -1) and alpha2 = (-1, 2).

A MonomialLabel is a three-exponent divided-power word in the two Chevalley
letters, written in one of the two alternating shapes

    shape "212":  t2^(x) t1^(y) t2^(z)
    shape "121":  t1^(x) t2^(y) t1^(z)

subject to the dominance condition y >= x + z.  The boundary words agree,
  t2^(u) t1^(u+w) t2^(w) = t1^(w) t2^(u+w) t1^(u),
and are stored once, in shape "212".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError


@dataclass(frozen=True, slots=True)
class Weight:
    w1: int
    w2: int

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(self.w1 + other.w1, self.w2 + other.w2)

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(self.w1 - other.w1, self.w2 - other.w2)

    def __neg__(self) -> "Weight":
        return Weight(-self.w1, -self.w2)

    def scaled(self, k: int) -> "Weight":
        return Weight(k * self.w1, k * self.w2)

    def pairing(self, i: int) -> int:
        """<alpha_i^vee, self> for i in {1, 2}."""
        return self.w1 if i == 1 else self.w2

    def is_dominant(self) -> bool:
        return self.w1 >= 0 and self.w2 >= 0

    def as_tuple(self) -> tuple:
        return (self.w1, self.w2)

    def swapped(self) -> "Weight":
        return Weight(self.w2, self.w1)

    def __str__(self):
        return f"({self.w1},{self.w2})"


ALPHA = {1: Weight(2, -1), 2: Weight(-1, 2)}

SHAPE212 = "212"
SHAPE121 = "121"


@dataclass(frozen=True, slots=True)
class MonomialLabel:
    shape: str
    x: int
    y: int
    z: int

    @property
    def tr(self) -> int:
        return self.x + self.y + self.z

    def nu(self) -> tuple:
        """Grading (count of letter 1, count of letter 2)."""
        if self.shape == SHAPE212:
            return (self.y, self.x + self.z)
        return (self.x + self.z, self.y)

    def root_shift(self) -> Weight:
        n1, n2 = self.nu()
        return ALPHA[1].scaled(n1) + ALPHA[2].scaled(n2)

    def factors(self) -> tuple:
        """(letter, exponent) pairs in written order, zero exponents elided."""
        if self.shape == SHAPE212:
            raw = ((2, self.x), (1, self.y), (2, self.z))
        else:
            raw = ((1, self.x), (2, self.y), (1, self.z))
        return tuple((i, e) for i, e in raw if e)

    def sort_key(self) -> tuple:
        return (self.tr, 0 if self.shape == SHAPE212 else 1, self.x, self.y, self.z)

    def __str__(self):
        return f"{self.shape}({self.x},{self.y},{self.z})"

    def to_json(self):
        return {"shape": self.shape, "exps": [self.x, self.y, self.z]}


def make_label(shape: str, x: int, y: int, z: int) -> MonomialLabel:
    """Build a dominance-normalized label.

    Raises DomainError when y < x + z (no such canonical word exists).
    """
    if min(x, y, z) < 0:
        raise DomainError("label exponents must be nonnegative")
    if y < x + z:
        raise DomainError(f"not a dominant word: {shape}({x},{y},{z})")
    if shape == SHAPE121 and y == x + z:
        return MonomialLabel(SHAPE212, z, y, x)
    if shape not in (SHAPE212, SHAPE121):
        raise DomainError(f"unknown shape {shape!r}")
    return MonomialLabel(shape, x, y, z)


def label_from_factors(factors: Iterable) -> MonomialLabel:
    """Recover the normalized label of an alternating word.

    ``factors`` lists (letter, exponent) in written order with positive
    exponents.  The word must fit one of the two alternating shapes.
    """
    seq = [(i, e) for i, e in factors if e]
    if len(seq) > 3:
        raise DomainError("word too long for a monomial label")
    for shape, pattern in ((SHAPE212, (2, 1, 2)), (SHAPE121, (1, 2, 1))):
        for positions in _pattern_fits(tuple(i for i, _ in seq), pattern):
            exps = [0, 0, 0]
            for (_, e), pos in zip(seq, positions):
                exps[pos] = e
            x, y, z = exps
            if y >= x + z:
                return make_label(shape, x, y, z)
    raise DomainError(f"no dominant label for word {seq}")


def _pattern_fits(letters: tuple, pattern: tuple):
    """All ways to place the letter sequence into the 3-slot pattern."""
    if not letters:
        yield ()
        return
    n, m = len(letters), len(pattern)

    def rec(i, j):
        if i == n:
            yield ()
            return
        for k in range(j, m):
            if pattern[k] == letters[i]:
                for rest in rec(i + 1, k + 1):
                    yield (k,) + rest

    yield from rec(0, 0)


EMPTY_LABEL = MonomialLabel(SHAPE212, 0, 0, 0)


def weyl_dim(a: int, b: int) -> int:
    """Dimension of the simple module with highest weight a*w1 + b*w2."""
    return (a + 1) * (b + 1) * (a + b + 2) // 2


def basis_labels(lam: Weight) -> list:
    """The monomial labels whose words act nonzero on a highest-weight
    vector of weight ``lam``, in the canonical basis order.

    Order: total degree ascending, then shape "212" before "121", then
    lexicographic exponents.
    """
    if not lam.is_dominant():
        raise DomainError(f"weight {lam} is not dominant")
    a, b = lam.w1, lam.w2
    out = []
    for w in range(0, b + 1):
        for u in range(0, a + 1):
            for vv in range(u + w, a + w + 1):
                out.append(MonomialLabel(SHAPE212, u, vv, w))
    for s in range(0, b):
        for r in range(0, a + 1):
            for t in range(s + 1 + r, b + r + 1):
                out.append(MonomialLabel(SHAPE121, s, t, r))
    out.sort(key=MonomialLabel.sort_key)
    return out


def in_basis_set(label: MonomialLabel, lam: Weight) -> bool:
    """Membership of a normalized label in the basis index set of ``lam``."""
    a, b = lam.w1, lam.w2
    x, y, z = label.x, label.y, label.z
    if label.shape == SHAPE212:
        return 0 <= z <= b and 0 <= x <= a and x + z <= y <= a + z
    return 0 <= x <= b - 1 and 0 <= z <= a and x + 1 + z <= y <= b + z

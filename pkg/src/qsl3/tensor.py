"""The tensor product T of a lowest- and a highest-weight module.

T = V(-s*w1 - t*w2) (x) V(a*w1 + b*w2) carries the standard basis of pairs
(b1, b1') of monomial labels, acting through the coproduct, and the
bar-semilinear involution Psi that pins down the canonical basis.

Psi is characterized cyclically: it fixes the generating vector xi (x) eta,
and it intertwines the algebra action through the bar involution,
Psi(u x) = bar(u) Psi(x).  Since divided-power generator words are bar
fixed and their images span every weight space, the matrix of Psi on a
weight space is rho = W bar(W)^-1, where the columns of W are the images
of enough words.  Entries of rho must land in Z[v, v^-1]; together with
unitriangularity (for the pair order) and bar(rho) rho = 1 this is checked
on every build.

Computed rho blocks are cached on disk, keyed by the space parameters and
the cache schema version (override the location with QSL3_CACHE_DIR; set it
empty to disable).
"""

from __future__ import annotations

import json
import os
import sys
import threading
from pathlib import Path

from ._version import __version__
from .errors import IntegralityFailure, SpanFailure
from .labels import SHAPE121, SHAPE212, MonomialLabel, Weight
from .laurent import LaurentPoly, NotDivisible, ONE, ZERO
from .modules import build_highest_module, build_lowest_module
from .linalg import LaurentEchelon, solve_laurent

CACHE_SCHEMA = 1
DEFAULT_WORD_BUDGET = 60

_cache_dir_override = None
_registry: dict = {}
_registry_lock = threading.Lock()


def set_cache_dir(path) -> None:
    """Override the rho cache directory (None restores the default)."""
    global _cache_dir_override
    _cache_dir_override = path


def cache_dir():
    if _cache_dir_override is not None:
        return Path(_cache_dir_override) if _cache_dir_override else None
    env = os.environ.get("QSL3_CACHE_DIR")
    if env is not None:
        return Path(env) if env else None
    return Path.home() / ".cache" / "qsl3"


class TensorSpace:
    """Standard-basis bookkeeping for one tensor product."""

    def __init__(self, s: int, t: int, a: int, b: int):
        self.params = (s, t, a, b)
        self.low = build_lowest_module(s, t)
        self.high = build_highest_module(a, b)
        self.zeta = Weight(a - s, b - t)
        self.pairs = [(iL, iH)
                      for iL in range(self.low.dim)
                      for iH in range(self.high.dim)]
        self.pair_pos = {p: k for k, p in enumerate(self.pairs)}
        self.pair_weight = [self.low.weights[iL] + self.high.weights[iH]
                            for iL, iH in self.pairs]
        self.trL = [self.low.labels[iL].tr for iL, _ in self.pairs]
        self.trH = [self.high.labels[iH].tr for _, iH in self.pairs]
        self.weight_spaces: dict = {}
        for k, w in enumerate(self.pair_weight):
            self.weight_spaces.setdefault(w, []).append(k)
        self.unit_index = self.pair_pos[(0, 0)]
        self._prefix_cache: dict = {(): {self.unit_index: ONE}}
        self._psi = None
        self._canonical: dict = {}
        self._lock = threading.Lock()

    @property
    def dim(self) -> int:
        return len(self.pairs)

    def pair_labels(self, k: int) -> tuple:
        iL, iH = self.pairs[k]
        return (self.low.labels[iL], self.high.labels[iH])

    def index_of_labels(self, low_label: MonomialLabel, high_label: MonomialLabel):
        iL = self.low.label_index.get(low_label)
        iH = self.high.label_index.get(high_label)
        if iL is None or iH is None:
            return None
        return self.pair_pos[(iL, iH)]

    # -- coproduct action ---------------------------------------------------

    def delta_act(self, gen: tuple, n: int, vec: dict) -> dict:
        """Divided power gen^(n) on T through the coproduct splitting."""
        if n == 0:
            return dict(vec)
        kind, i = gen
        low, high = self.low, self.high
        pair_pos = self.pair_pos
        out: dict = {}
        for pidx, c in vec.items():
            iL, iH = self.pairs[pidx]
            wL = low.weights[iL].pairing(i)
            wH = high.weights[iH].pairing(i)
            for a1 in range(n + 1):
                a2 = n - a1
                colL = low.divided_columns(gen, a1)[iL] if a1 else {iL: ONE}
                if not colL:
                    continue
                colH = high.divided_columns(gen, a2)[iH] if a2 else {iH: ONE}
                if not colH:
                    continue
                expo = a1 * a2 + (a2 * wL if kind == "e" else -a1 * wH)
                base = c.shifted(expo)
                for jL, cL in colL.items():
                    cc = base * cL
                    for jH, cH in colH.items():
                        key = pair_pos[(jL, jH)]
                        add = cc * cH
                        s = out.get(key)
                        s = add if s is None else s + add
                        if s:
                            out[key] = s
                        else:
                            out.pop(key, None)
        return out

    def apply_prefix(self, seq: tuple) -> dict:
        """Image of xi (x) eta under a word of divided powers.

        ``seq`` lists ((kind, letter), exponent) in application order; the
        result is cached per prefix, so families of words sharing initial
        segments cost one delta_act each.
        """
        vec = self._prefix_cache.get(seq)
        if vec is not None:
            return vec
        head = self.apply_prefix(seq[:-1])
        gen, n = seq[-1]
        vec = self.delta_act(gen, n, head)
        self._prefix_cache[seq] = vec
        return vec

    def vec_weight(self, vec: dict):
        if not vec:
            return None
        return self.pair_weight[next(iter(vec))]

    # -- pair order ---------------------------------------------------------

    def pair_order_leq(self, p: int, q: int) -> bool:
        """The partial order on basis pairs used by the triangular shape."""
        if self.trL[p] - self.trH[p] != self.trL[q] - self.trH[q]:
            return False
        return p == q or (self.trL[p] < self.trL[q] and self.trH[p] < self.trH[q])

    # -- involution ---------------------------------------------------------

    def psi(self) -> "PsiOperator":
        with self._lock:
            if self._psi is None:
                self._psi = PsiOperator(self)
            return self._psi


def get_tensor_space(s: int, t: int, a: int, b: int) -> TensorSpace:
    key = (s, t, a, b)
    with _registry_lock:
        sp = _registry.get(key)
        if sp is None:
            sp = TensorSpace(s, t, a, b)
            _registry[key] = sp
        return sp


def clear_registry() -> None:
    with _registry_lock:
        _registry.clear()


def bar_vec(vec: dict) -> dict:
    return {k: c.bar() for k, c in vec.items()}


def vec_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        s = -c if s is None else s - c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vec_add_scaled(acc: dict, coeff: LaurentPoly, vec: dict) -> None:
    for k, c in vec.items():
        add = coeff * c
        s = acc.get(k)
        s = add if s is None else s + add
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


def _root_coordinates(delta: Weight) -> tuple:
    """Express delta in the simple-root basis; weights of one tensor space
    always differ by a root-lattice element."""
    n1, d1 = divmod(2 * delta.w1 + delta.w2, 3)
    n2, d2 = divmod(delta.w1 + 2 * delta.w2, 3)
    if d1 or d2:
        raise ValueError(f"{delta} is not in the root lattice")
    return n1, n2


def _labels_of_grade(n1: int, n2: int) -> list:
    """All canonical monomial labels with letter counts (n1, n2)."""
    out = []
    if n1 >= n2:
        for x in range(n2 + 1):
            out.append(MonomialLabel(SHAPE212, x, n1, n2 - x))
    else:
        for x in range(n1 + 1):
            out.append(MonomialLabel(SHAPE121, x, n2, n1 - x))
    return out


def _label_seq(label: MonomialLabel, kind: str) -> tuple:
    """Application-order divided-power sequence of a monomial word."""
    return tuple(((kind, gi), e) for gi, e in reversed(label.factors()))


def _spanning_words(space: TensorSpace, weight: Weight, budget: int):
    """Bar-fixed generator words whose images can span the weight space.

    Breadth-first by total exponent sum; for each raising/lowering grade the
    lowering-after-raising order comes first, then the opposite order.
    """
    n1, n2 = _root_coordinates(weight - space.zeta)
    for total in range(0, budget + 1):
        rest = total - abs(n1) - abs(n2)
        if rest < 0 or rest % 2:
            continue
        batches = ([], [])
        for m1 in range(max(n1, 0), max(n1, 0) + rest // 2 + 1):
            m2 = (total + n1 + n2) // 2 - m1
            k1, k2 = m1 - n1, m2 - n2
            if m2 < max(n2, 0) or k2 < 0:
                continue
            for e_lab in _labels_of_grade(m1, m2):
                eseq = _label_seq(e_lab, "e")
                for f_lab in _labels_of_grade(k1, k2):
                    fseq = _label_seq(f_lab, "f")
                    batches[0].append(eseq + fseq)
                    if eseq and fseq:
                        batches[1].append(fseq + eseq)
        yield from batches[0]
        yield from batches[1]


class _PsiBlock:
    __slots__ = ("indices", "pos", "cols")

    def __init__(self, indices, cols):
        self.indices = list(indices)
        self.pos = {p: r for r, p in enumerate(indices)}
        self.cols = cols  # cols[c] = {row: LaurentPoly}, image of indices[c]


class PsiOperator:
    """Per-weight-space matrices of the involution, built lazily."""

    def __init__(self, space: TensorSpace, budget: int = DEFAULT_WORD_BUDGET):
        self.space = space
        self.budget = budget
        self._blocks: dict = {}
        self._lock = threading.Lock()
        self._store = _CacheStore(space.params)
        for w, block in self._store.load(space).items():
            self._blocks[w] = block

    def block(self, weight: Weight) -> _PsiBlock:
        blk = self._blocks.get(weight)
        if blk is not None:
            return blk
        with self._lock:
            blk = self._blocks.get(weight)
            if blk is None:
                blk = _build_block(self.space, weight, self.budget)
                self._blocks[weight] = blk
                self._store.save(self.space, self._blocks)
        return blk

    def ensure_all(self) -> None:
        for w in self.space.weight_spaces:
            self.block(w)

    def apply(self, vec: dict) -> dict:
        """psi(x): coordinate-wise bar followed by the rho matrix."""
        out: dict = {}
        by_weight: dict = {}
        for k, c in vec.items():
            by_weight.setdefault(self.space.pair_weight[k], {})[k] = c
        for w, part in by_weight.items():
            blk = self.block(w)
            for k, c in part.items():
                cb = c.bar()
                for r, e in blk.cols[blk.pos[k]].items():
                    gk = blk.indices[r]
                    add = cb * e
                    s = out.get(gk)
                    s = add if s is None else s + add
                    if s:
                        out[gk] = s
                    else:
                        out.pop(gk, None)
        return out

    def blocks_json(self) -> dict:
        self.ensure_all()
        return _blocks_to_json(self._blocks)


def build_psi(space: TensorSpace, budget: int = DEFAULT_WORD_BUDGET) -> PsiOperator:
    """Construct the involution with every weight-space block forced."""
    op = space.psi()
    op.budget = budget
    op.ensure_all()
    return op


def psi_apply(op: PsiOperator, vec: dict) -> dict:
    return op.apply(vec)


def _build_block(space: TensorSpace, weight: Weight, budget: int) -> _PsiBlock:
    indices = space.weight_spaces[weight]
    d = len(indices)
    pos = {p: r for r, p in enumerate(indices)}

    word_cols = []
    ech = LaurentEchelon(d)
    for seq in _spanning_words(space, weight, budget):
        vec = space.apply_prefix(seq)
        if not vec:
            continue
        dense = [ZERO] * d
        for k, c in vec.items():
            dense[pos[k]] = c
        if ech.add(dense):
            word_cols.append(dense)
            if len(word_cols) == d:
                break
    if len(word_cols) < d:
        raise SpanFailure(
            f"weight space {weight} of T{space.params}: rank {len(word_cols)}"
            f" of {d} within word budget {budget}")

    # rho * bar(W) = W, solved through the transpose: bar(W)^T rho^T = W^T
    barw_t = [[word_cols[c][r].bar() for r in range(d)] for c in range(d)]
    w_t = [[word_cols[i][k] for i in range(d)] for k in range(d)]
    det, sols, rank, free = solve_laurent(barw_t, w_t)
    cols = [dict() for _ in range(d)]
    for r in range(d):
        sol = sols[r]
        for c, val in sol.items():
            try:
                entry = val.exact_div(det)
            except NotDivisible as exc:
                raise IntegralityFailure(
                    f"rho entry outside Z[v,v^-1] at weight {weight} of "
                    f"T{space.params}") from exc
            if entry:
                cols[c][r] = entry
    _verify_block(space, weight, indices, cols)
    return _PsiBlock(indices, cols)


def _verify_block(space, weight, indices, cols) -> None:
    d = len(indices)
    for c in range(d):
        col = cols[c]
        if col.get(c) != ONE:
            raise IntegralityFailure(
                f"rho diagonal entry != 1 at weight {weight} of T{space.params}")
        for r in col:
            if r != c and not space.pair_order_leq(indices[r], indices[c]):
                raise IntegralityFailure(
                    f"rho not triangular at weight {weight} of T{space.params}")
    # bar(rho) rho = identity
    for c in range(d):
        acc: dict = {}
        for r, e in cols[c].items():
            for r2, e2 in cols[r].items():
                add = e.bar() * e2
                s = acc.get(r2)
                s = add if s is None else s + add
                if s:
                    acc[r2] = s
                else:
                    acc.pop(r2, None)
        if acc != {c: ONE}:
            raise IntegralityFailure(
                f"bar(rho) rho != 1 at weight {weight} of T{space.params}")


# -- disk cache ---------------------------------------------------------------


def _blocks_to_json(blocks: dict) -> dict:
    out = {}
    for w, blk in sorted(blocks.items(), key=lambda kv: kv[0].as_tuple()):
        out[f"{w.w1},{w.w2}"] = {
            "pairs": blk.indices,
            "rho": [[[r, e.to_json()] for r, e in sorted(col.items())]
                    for col in blk.cols],
        }
    return out


class _CacheStore:
    def __init__(self, params):
        self.params = params

    def _path(self):
        base = cache_dir()
        if base is None:
            return None
        s, t, a, b = self.params
        return base / f"rho_{s}_{t}_{a}_{b}.json"

    def load(self, space) -> dict:
        path = self._path()
        if path is None or not path.exists():
            return {}
        try:
            data = json.loads(path.read_text())
            if (data.get("schema") != CACHE_SCHEMA
                    or data.get("version") != __version__
                    or data.get("params") != list(self.params)):
                return {}
            blocks = {}
            for key, payload in data.get("blocks", {}).items():
                w1, w2 = (int(x) for x in key.split(","))
                w = Weight(w1, w2)
                indices = payload["pairs"]
                if indices != space.weight_spaces.get(w):
                    return {}
                cols = [{int(r): LaurentPoly.from_json(e) for r, e in col}
                        for col in payload["rho"]]
                blocks[w] = _PsiBlock(indices, cols)
            return blocks
        except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
            print(f"qsl3: ignoring corrupt rho cache {path}: {exc}", file=sys.stderr)
            try:
                path.unlink()
            except OSError:
                pass
            return {}

    def save(self, space, blocks: dict) -> None:
        path = self._path()
        if path is None:
            return
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            payload = {
                "schema": CACHE_SCHEMA,
                "version": __version__,
                "params": list(self.params),
                "blocks": _blocks_to_json(blocks),
            }
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(payload))
            tmp.replace(path)
        except OSError as exc:
            print(f"qsl3: cannot write rho cache {path}: {exc}", file=sys.stderr)

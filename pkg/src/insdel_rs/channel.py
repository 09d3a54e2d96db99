"""Insertion/deletion channel, LCS metric, the k = 2 decoder and brute-force oracles.

Edit positions are 1-based and refer to the word as it stands when the
operation is applied.  Symbols are tower elements; internally words are
numpy arrays of canonical integers.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .finite_field import TowerElement
from .rs_core import CodeError, MessagePoly, decoding_radius

ORACLE_LIMIT = 10**6


@dataclass(frozen=True)
class Delete:
    pos: int

    def __str__(self):
        return f"D {self.pos}"


@dataclass(frozen=True)
class Insert:
    pos: int
    symbol: TowerElement

    def __str__(self):
        return f"I {self.pos} {self.symbol.value}"


class EditScript(tuple):
    """An ordered tuple of :class:`Delete` / :class:`Insert` operations."""

    @property
    def deletions(self):
        return sum(isinstance(op, Delete) for op in self)

    @property
    def insertions(self):
        return sum(isinstance(op, Insert) for op in self)

    def dumps(self):
        return "[" + " | ".join(str(op) for op in self) + "]"

    @classmethod
    def loads(cls, text, tower):
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError("edit script must be enclosed in brackets")
        ops = []
        for chunk in filter(None, (c.strip() for c in body[1:-1].split("|"))):
            parts = chunk.split()
            if parts[0] == "D" and len(parts) == 2:
                ops.append(Delete(int(parts[1])))
            elif parts[0] == "I" and len(parts) == 3:
                ops.append(Insert(int(parts[1]), tower.decode(int(parts[2]))))
            else:
                raise ValueError(f"bad edit operation {chunk!r}")
        return cls(ops)


def apply_edits(word, script):
    out = list(word)
    for op in script:
        if isinstance(op, Delete):
            if not 1 <= op.pos <= len(out):
                raise IndexError(f"deletion position {op.pos} outside [1, {len(out)}]")
            del out[op.pos - 1]
        elif isinstance(op, Insert):
            if not 1 <= op.pos <= len(out) + 1:
                raise IndexError(f"insertion position {op.pos} outside [1, {len(out) + 1}]")
            out.insert(op.pos - 1, op.symbol)
        else:
            raise TypeError(f"not an edit operation: {op!r}")
    return tuple(out)


def random_edit_script(n, t_del, t_ins, seed, tower):
    """Seeded script: ``t_del`` distinct deletions, then ``t_ins`` uniform insertions.

    Randomness comes from ``numpy.random.default_rng(seed)`` (PCG64).
    Deletions are emitted from the highest position down so each position
    still refers to the original word.
    """
    if t_del < 0 or t_ins < 0:
        raise ValueError("error counts must be non-negative")
    if t_del > n:
        raise ValueError("cannot delete more symbols than the word has")
    rng = np.random.default_rng(seed)
    doomed = sorted(rng.choice(n, size=t_del, replace=False).tolist(), reverse=True)
    ops = [Delete(int(i) + 1) for i in doomed]
    length = n - t_del
    for _ in range(t_ins):
        pos = int(rng.integers(1, length + 2))
        sym = int(rng.integers(0, tower.order))
        ops.append(Insert(pos, tower.decode(sym)))
        length += 1
    return EditScript(ops)


def _as_ints(word):
    return np.array([s.value if isinstance(s, TowerElement) else int(s) for s in word], dtype=np.int64)


def lcs(a, b, backend=None):
    return kernels.lcs_pair(_as_ints(a), _as_ints(b), backend)


def insdel_distance(a, b, backend=None):
    return len(a) + len(b) - 2 * lcs(a, b, backend)


class Outcome(enum.Enum):
    DECODED = "decoded"
    TOO_MANY_ERRORS = "too_many_errors"
    AMBIGUOUS = "ambiguity_detected"


@dataclass(frozen=True)
class DecodeResult:
    outcome: Outcome
    candidates: tuple = ()

    @property
    def message(self):
        return self.candidates[0] if self.outcome is Outcome.DECODED else None

    @classmethod
    def from_candidates(cls, cands):
        cands = tuple(cands)
        if not cands:
            return cls(Outcome.TOO_MANY_ERRORS)
        return cls(Outcome.DECODED if len(cands) == 1 else Outcome.AMBIGUOUS, cands)


# --------------------------------------------------------------------------
# interpolate-and-test decoder for k = 2


def _decoder_inputs(code):
    cache = code._cache
    if "decode" not in cache:
        T = code.tower
        A = np.array([a.coords for a in code.alpha], dtype=np.int64)
        ii, jj = np.triu_indices(code.n, 1)
        invd = np.array([T._inv(T._sub(code.alpha[j].coords, code.alpha[i].coords)) for i, j in zip(ii, jj)], dtype=np.int64)
        cache["decode"] = (A, ii, invd, T.kernel_tables())
    return cache["decode"]


def _codes(coords, q):
    return coords[..., 0] + q * (coords[..., 1] + q * coords[..., 2])


def _coords(codes, q):
    return np.stack([codes % q, (codes // q) % q, codes // (q * q)], axis=-1)


def decode_k2(code, y, backend=None):
    """Unique decoding of an [n, 2] code from up to ``n - 3`` insertions/deletions.

    Any codeword within insdel distance ``n - 3`` of ``y`` (length m) shares a
    common subsequence of length ``L >= (m + 3) / 2 >= 3`` with it, so some
    aligned pair ``y_s = f(a_i)``, ``y_t = f(a_j)`` with ``s < t`` and ``i < j``
    exists and pins down the line ``f``.  Enumerating all such pairs is
    therefore complete.  Each alignment of length ``L`` yields ``C(L, 2)``
    pairs generating the same ``f``, which prunes lines seen too rarely
    before the exact LCS test.
    """
    if code.k != 2:
        raise CodeError("decode_k2 needs a code of dimension 2")
    T = code.tower
    q = T.base.q
    n, m = code.n, len(y)
    radius = decoding_radius(n, 2)
    need = math.ceil((n + m - radius) / 2)  # minimal LCS for distance <= radius
    if m < 2 or need > min(n, m):
        return DecodeResult(Outcome.TOO_MANY_ERRORS)
    A, ii, invd, (ADD, SUB, MUL, G) = _decoder_inputs(code)
    y_codes = _as_ints(y)
    Y = _coords(y_codes, q)
    ss, tt = np.triu_indices(m, 1)

    dy = SUB[Y[tt], Y[ss]]  # (Ps, 3)
    slope = kernels.tower_mul(dy[:, None, :], invd[None, :, :], ADD, MUL, G)
    f0 = SUB[np.broadcast_to(Y[ss][:, None, :], slope.shape), kernels.tower_mul(slope, A[ii][None, :, :], ADD, MUL, G)]
    keys = (_codes(f0, q) * T.order + _codes(slope, q)).ravel()
    uniq, counts = np.unique(keys, return_counts=True)
    cand = uniq[counts >= math.comb(need, 2)]
    if cand.size == 0:
        return DecodeResult(Outcome.TOO_MANY_ERRORS)

    c0 = _coords(cand // T.order, q)
    c1 = _coords(cand % T.order, q)
    words = ADD[c0[:, None, :], kernels.tower_mul(c1[:, None, :], A[None, :, :], ADD, MUL, G)]
    L = kernels.lcs_many(_codes(words, q), y_codes, backend)
    hits = cand[L >= need]
    return DecodeResult.from_candidates(
        MessagePoly((T.decode(int(key // T.order)), T.decode(int(key % T.order)))) for key in hits
    )


# --------------------------------------------------------------------------
# exhaustive oracles


def all_codewords(code):
    """Codewords of every message, as a (|F|^k, n) array of canonical integers.

    Row ``r`` belongs to the message whose coefficient ``f_d`` has canonical
    integer ``(r // |F|^d) % |F|``.
    """
    T = code.tower
    size = T.order**code.k
    if size > ORACLE_LIMIT:
        raise CodeError(f"{size} messages exceed the exhaustive-search limit {ORACLE_LIMIT}")
    cache = code._cache
    if "codewords" not in cache:
        q = T.base.q
        ADD, _, MUL, G = T.kernel_tables()
        A = np.array([a.coords for a in code.alpha], dtype=np.int64)
        idx = np.arange(size, dtype=np.int64)
        acc = np.zeros((size, code.n, 3), dtype=np.int64)
        for d in reversed(range(code.k)):
            coef = _coords((idx // T.order**d) % T.order, q)
            acc = ADD[kernels.tower_mul(acc, A[None, :, :], ADD, MUL, G), coef[:, None, :]]
        cache["codewords"] = np.ascontiguousarray(_codes(acc, q))
    return cache["codewords"]


def _message(code, row):
    T = code.tower
    return MessagePoly(tuple(T.decode((row // T.order**d) % T.order) for d in range(code.k)))


def oracle_decode(code, y, backend=None):
    """Score every message by insdel distance and keep those within ``n - 2k + 1``."""
    W = all_codewords(code)
    y_codes = _as_ints(y)
    radius = decoding_radius(code.n, code.k)
    L = kernels.lcs_many(W, y_codes, backend)
    rows = np.flatnonzero(code.n + y_codes.size - 2 * L <= radius)
    return DecodeResult.from_candidates(_message(code, int(r)) for r in rows)


def confusability_check(code, t, method="pairwise", backend=None):
    """Whether all insdel balls of radius ``t`` around codewords are disjoint.

    Two words have a common neighbour within distance ``t`` exactly when
    their insdel distance is at most ``2t`` (cut a shortest edit path in the
    middle), i.e. when their LCS is at least ``n - t``.  ``method="pairwise"``
    runs the LCS program on every unordered pair of codewords;
    ``method="subsequence"`` instead buckets every length-``(n - t)``
    subsequence of every codeword and looks for a bucket shared by two
    messages.  Returns ``(correctable, witness)`` with ``witness`` a pair of
    messages or ``None``.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    W = all_codewords(code)
    if method == "pairwise":
        hit = kernels.first_confusable(W, code.n - t, backend)
    elif method == "subsequence":
        hit = _shared_subsequence(W, code.n - t)
    else:
        raise ValueError("method must be 'pairwise' or 'subsequence'")
    if hit is None:
        return True, None
    return False, (_message(code, hit[0]), _message(code, hit[1]))


def _shared_subsequence(W, length):
    N, n = W.shape
    if length <= 0:
        return (0, 1) if N > 1 else None
    if length > n:
        return None
    pos = np.array(list(itertools.combinations(range(n), length)), dtype=np.int64)
    sub = W[:, pos].reshape(-1, length)  # (N * C, length)
    owner = np.repeat(np.arange(N), pos.shape[0])
    order = np.lexsort((owner,) + tuple(sub[:, c] for c in reversed(range(length))))
    sub, owner = sub[order], owner[order]
    same = (sub[1:] == sub[:-1]).all(axis=1) & (owner[1:] != owner[:-1])
    if not same.any():
        return None
    # report the lexicographically smallest pair of messages
    idx = np.flatnonzero(same)
    pairs = np.stack([np.minimum(owner[idx], owner[idx + 1]), np.maximum(owner[idx], owner[idx + 1])], axis=1)
    first = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))[0]]
    return int(first[0]), int(first[1])


def messages_from_violation(code, violation):
    """Two distinct lines whose codewords share a length-3 common subsequence.

    A nonzero kernel vector ``(a, b, c)`` of the singular condition matrix
    gives ``f = a + b x`` and ``g = -c x`` with ``f(alpha_{I_t}) = g(alpha_{J_t})``.
    """
    if code.k != 2:
        raise CodeError("defined for k = 2")
    from .insdel_verify import IndexVectorPair, build_condition_matrix

    T = code.tower
    rows = [[x.coords for x in r] for r in build_condition_matrix(code, IndexVectorPair(violation.I, violation.J))]
    a, b, c = _nullvector(T, rows)
    return MessagePoly((TowerElement(T, a), TowerElement(T, b))), MessagePoly((T.zero, TowerElement(T, T._neg(c))))


def _nullvector(T, rows):
    zero = (0, 0, 0)
    rows = [list(r) for r in rows]
    s = len(rows[0])
    pivots = []
    r = 0
    for c in range(s):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = T._inv(rows[r][c])
        rows[r] = [T._mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != zero:
                f = rows[i][c]
                rows[i] = [T._sub(x, T._mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = next((c for c in range(s) if c not in pivots), None)
    if free is None:
        raise ValueError("matrix is nonsingular")
    vec = [zero] * s
    vec[free] = (1, 0, 0)
    for i, c in enumerate(pivots):
        vec[c] = T._neg(rows[i][free])
    return vec

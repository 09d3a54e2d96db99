"""Exhaustive check of the determinant certificate for insdel correction.

For increasing index vectors ``I, J`` of length ``2k - 1`` the condition
matrix has rows ``(1, a_{I_t}, ..., a_{I_t}^{k-1}, a_{J_t}, ..., a_{J_t}^{k-1})``.
If it is nonsingular for every ordered pair agreeing (positionally, ``I_t ==
J_t``) in at most ``k - 1`` places, the code corrects ``n - 2k + 1`` insertions
and deletions.

Indices in this module's public API are 1-based, matching ``[n]``.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

import numpy as np

from . import kernels
from .finite_field import TABLE_LIMIT, TowerElement
from .rs_core import CodeError, ConstructionKind


@dataclass(frozen=True)
class IndexVectorPair:
    I: tuple
    J: tuple

    def __post_init__(self):
        I, J = tuple(self.I), tuple(self.J)
        object.__setattr__(self, "I", I)
        object.__setattr__(self, "J", J)
        if len(I) != len(J):
            raise ValueError("index vectors must have equal length")
        for v in (I, J):
            if any(b <= a for a, b in zip(v, v[1:])):
                raise ValueError(f"{v} is not strictly increasing")
            if v and v[0] < 1:
                raise ValueError("indices are 1-based")

    @property
    def agreement(self):
        return agreement_count(self.I, self.J)


@dataclass(frozen=True)
class Violation:
    I: tuple
    J: tuple
    determinant: TowerElement


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    pairs_checked: int
    violation: Violation | None
    elapsed: float  # seconds
    violations_found: int = 0

    def record(self, timing=True):
        """Flat key/value view; witness indices stay 1-based."""
        out = {"passed": str(self.passed).lower(), "pairs_checked": self.pairs_checked}
        if timing:
            out["elapsed_ms"] = f"{self.elapsed * 1e3:.3f}"
        if self.violation is not None:
            v = self.violation
            out["violation_I"] = ",".join(map(str, v.I))
            out["violation_J"] = ",".join(map(str, v.J))
            out["violation_det"] = v.determinant.value
        return out


def agreement_count(I, J):
    if len(I) != len(J):
        raise ValueError("index vectors must have equal length")
    return sum(1 for a, b in zip(I, J) if a == b)


def build_condition_matrix(code, pair):
    """Rows ``(1, x_I, .., x_I^{k-1}, x_J, .., x_J^{k-1})`` evaluated at the code's points."""
    if not isinstance(pair, IndexVectorPair):
        pair = IndexVectorPair(*pair)
    k, n = code.k, code.n
    if len(pair.I) != 2 * k - 1:
        raise CodeError(f"index vectors must have length 2k-1 = {2 * k - 1}")
    if any(not 1 <= i <= n for i in pair.I + pair.J):
        raise CodeError(f"indices must lie in [1, {n}]")
    one = code.tower.one
    rows = []
    for it, jt in zip(pair.I, pair.J):
        x, y = code.alpha[it - 1], code.alpha[jt - 1]
        row = [one]
        row += [x**d for d in range(1, k)]
        row += [y**d for d in range(1, k)]
        rows.append(row)
    return rows


def determinant(tower, m):
    """Determinant by Gaussian elimination with a nonzero-pivot search."""
    rows = [[tower._check(x) for x in row] for row in m]
    s = len(rows)
    if any(len(r) != s for r in rows):
        raise ValueError("matrix must be square")
    zero = (0, 0, 0)
    det = (1, 0, 0)
    for c in range(s):
        piv = next((r for r in range(c, s) if rows[r][c] != zero), None)
        if piv is None:
            return tower.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = tower._neg(det)
        p = rows[c][c]
        det = tower._mul(det, p)
        p_inv = tower._inv(p)
        for r in range(c + 1, s):
            lead = rows[r][c]
            if lead == zero:
                continue
            f = tower._mul(lead, p_inv)
            rows[r] = [tower._sub(x, tower._mul(f, y)) for x, y in zip(rows[r], rows[c])]
    return TowerElement(tower, det)


def det3(tower, m):
    """Cofactor expansion of a 3x3 matrix."""
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def increasing_vectors(n, length):
    """All increasing vectors in ``[n]^length``, 1-based, lexicographic."""
    return list(itertools.combinations(range(1, n + 1), length))


def _pair_witness(code, tuples, a, b):
    I, J = tuple(int(x) + 1 for x in tuples[a]), tuple(int(x) + 1 for x in tuples[b])
    pair = IndexVectorPair(I, J)
    return Violation(I, J, determinant(code.tower, build_condition_matrix(code, pair)))


def _kernel_inputs(code):
    cache = code._cache
    if "verify" not in cache:
        k, n = code.k, code.n
        tuples = np.array(list(itertools.combinations(range(n), 2 * k - 1)), dtype=np.int64).reshape(-1, 2 * k - 1)
        A = np.array([a.coords for a in code.alpha], dtype=np.int64)
        ADD, SUB, MUL, G = code.tower.kernel_tables()
        if k == 2:
            D12 = SUB[A[tuples[:, 0]], A[tuples[:, 1]]]
            D23 = SUB[A[tuples[:, 1]], A[tuples[:, 2]]]
            extra = (np.ascontiguousarray(D12), np.ascontiguousarray(D23))
        else:
            POW = np.array([[(a**d).coords for d in range(k)] for a in code.alpha], dtype=np.int64)
            extra = (POW,)
        cache["verify"] = (tuples, ADD, SUB, MUL, G, extra)
    return cache["verify"]


def _scan(code, limit, stop, backend):
    if code.n < 2 * code.k - 1:
        raise CodeError("verification needs n >= 2k - 1")
    if code.base.q > TABLE_LIMIT:
        return _scan_reference(code, limit, stop)
    tuples, ADD, SUB, MUL, G, extra = _kernel_inputs(code)
    if tuples.shape[0] == 0:
        return 0, 0, [], tuples
    if code.k == 2:
        D12, D23 = extra
        checked, nviol, idx = kernels.verify_k2(D12, D23, tuples, ADD, MUL, G, limit, stop, backend)
    else:
        (POW,) = extra
        checked, nviol, idx = kernels.verify_general(POW, tuples, code.k, ADD, SUB, MUL, G, limit, stop, backend)
    return checked, nviol, [tuple(map(int, r)) for r in idx], tuples


def _scan_reference(code, limit, stop):
    # Pure-Python path for base fields too large for lookup tables.
    k = code.k
    tuples = list(itertools.combinations(range(code.n), 2 * k - 1))
    checked = nviol = 0
    found = []
    for a, I in enumerate(tuples):
        for b, J in enumerate(tuples):
            if agreement_count(I, J) > k - 1:
                continue
            checked += 1
            pair = IndexVectorPair(tuple(i + 1 for i in I), tuple(j + 1 for j in J))
            if not determinant(code.tower, build_condition_matrix(code, pair)):
                if len(found) < limit:
                    found.append((a, b))
                nviol += 1
                if stop and nviol >= limit:
                    return checked, nviol, found, tuples
    return checked, nviol, found, tuples


def verify_code(code, mode="first", backend=None):
    """Check every qualifying ordered pair ``(I, J)`` in lexicographic order.

    ``mode="first"`` stops at the first violation; ``mode="count"`` scans
    everything and reports the number of violations alongside the first one.
    """
    if mode not in ("first", "count"):
        raise ValueError("mode must be 'first' or 'count'")
    t0 = time.perf_counter()
    checked, nviol, idx, tuples = _scan(code, 1, mode == "first", backend)
    violation = _pair_witness(code, tuples, *idx[0]) if idx else None
    return VerificationReport(
        passed=nviol == 0,
        pairs_checked=checked,
        violation=violation,
        elapsed=time.perf_counter() - t0,
        violations_found=nviol,
    )


def enumerate_violations(code, limit, backend=None):
    """Up to ``limit`` violating pairs in lexicographic ``(I, J)`` order."""
    if limit < 1:
        raise ValueError("limit must be at least 1")
    _, _, idx, tuples = _scan(code, limit, True, backend)
    return [_pair_witness(code, tuples, a, b) for a, b in idx]


def qualifying_pair_count(n, k):
    """Number of ordered pairs of increasing (2k-1)-vectors agreeing in at most k-1 places.

    Counted by a dynamic program over the last entries of both vectors,
    independent of the enumeration used by :func:`verify_code`.
    """
    s = 2 * k - 1
    if s > n:
        return 0
    # state[(x, y)] -> list indexed by agreement count
    state = {}
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            vec = [0] * (s + 1)
            vec[int(x == y)] = 1
            state[(x, y)] = vec
    for _ in range(s - 1):
        nxt = {}
        for (x, y), vec in state.items():
            for x2 in range(x + 1, n + 1):
                for y2 in range(y + 1, n + 1):
                    tgt = nxt.setdefault((x2, y2), [0] * (s + 1))
                    bump = int(x2 == y2)
                    for a, cnt in enumerate(vec):
                        if cnt:
                            tgt[a + bump] += cnt
        state = nxt
    total = [0] * (s + 1)
    for vec in state.values():
        for a, cnt in enumerate(vec):
            total[a] += cnt
    return sum(total[: k])


def coefficient_decomposition(code, pair):
    """``(p0, p1, p2)`` with ``det V_{I,J} = p0 + p1 g + p2 g^2``, from the delta values alone.

    With ``b_i = d_i + h(d_i) g`` for ``h(d) = d^{-1}`` or ``d^2``, and
    ``(b1, b2, b3) = alpha_I``, ``(b4, b5, b6) = alpha_J``, the determinant is
    ``(b1 - b2)(b5 - b6) - (b2 - b3)(b4 - b5)``; expanding gives

        p0 = (d1 - d2)(d5 - d6) - (d2 - d3)(d4 - d5)
        p1 = (d1 - d2)(h5 - h6) + (h1 - h2)(d5 - d6) - (h2 - h3)(d4 - d5) - (d2 - d3)(h4 - h5)
        p2 = (h1 - h2)(h5 - h6) - (h2 - h3)(h4 - h5)
    """
    if code.k != 2:
        raise CodeError("coefficient decomposition is defined for k = 2")
    if code.delta is None:
        raise CodeError("code has no delta-set provenance")
    if not isinstance(pair, IndexVectorPair):
        pair = IndexVectorPair(*pair)
    if len(pair.I) != 3 or any(not 1 <= i <= code.n for i in pair.I + pair.J):
        raise CodeError("pair must consist of two increasing triples in [n]")
    B = code.base
    deltas = [B.decode(code.delta.elements[i - 1]) for i in pair.I + pair.J]
    if code.delta.kind is ConstructionKind.INVERSE:
        hs = [d.inv() for d in deltas]
    else:
        hs = [d * d for d in deltas]
    d1, d2, d3, d4, d5, d6 = deltas
    h1, h2, h3, h4, h5, h6 = hs
    p0 = (d1 - d2) * (d5 - d6) - (d2 - d3) * (d4 - d5)
    p1 = (d1 - d2) * (h5 - h6) + (h1 - h2) * (d5 - d6) - (h2 - h3) * (d4 - d5) - (d2 - d3) * (h4 - h5)
    p2 = (h1 - h2) * (h5 - h6) - (h2 - h3) * (h4 - h5)
    return p0, p1, p2

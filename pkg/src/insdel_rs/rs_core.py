"""Reed-Solomon codes over GF(q^3) and the two explicit [n, 2] constructions.

``INVERSE`` places the points ``d + d^{-1} g`` and works in every
characteristic; ``SQUARE`` places ``d + d^2 g`` and needs odd characteristic.
Here ``d`` runs over a set of nonzero base-field elements and ``g`` generates
the cubic extension.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field

from .finite_field import BaseField, FieldError, TowerElement, TowerField


class CodeError(ValueError):
    pass


class ConstructionKind(enum.Enum):
    INVERSE = "inverse"
    SQUARE = "square"

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        aliases = {"inverse": cls.INVERSE, "inversegamma": cls.INVERSE, "square": cls.SQUARE, "squaregamma": cls.SQUARE}
        try:
            return aliases[str(text).lower()]
        except KeyError:
            raise CodeError(f"unknown construction kind {text!r} (use 'inverse' or 'square')") from None


@dataclass(frozen=True)
class DeltaSet:
    base: BaseField
    elements: tuple  # canonical integers, in evaluation order
    kind: ConstructionKind

    def __post_init__(self):
        vals = self.elements
        if any(v == 0 for v in vals):
            raise CodeError("delta-set elements must be nonzero")
        if len(set(vals)) != len(vals):
            raise CodeError("delta-set elements must be distinct")
        if self.kind is ConstructionKind.SQUARE and self.base.p == 2:
            raise CodeError("the square construction needs odd characteristic")
        if self.kind is ConstructionKind.INVERSE and self.base.p != 2:
            present = set(vals)
            for v in vals:
                if self.base._neg(v) in present:
                    raise CodeError(f"delta-set contains both {v} and its negative")


@dataclass(frozen=True)
class RsCode:
    """An [n, k] Reed-Solomon code given by its evaluation vector."""

    tower: TowerField
    k: int
    alpha: tuple
    delta: DeltaSet | None = None
    ordering: tuple | None = None
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        alpha = tuple(self.tower(a) for a in self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if self.k < 1:
            raise CodeError("dimension must be positive")
        if len(alpha) < self.k:
            raise CodeError("code length must be at least k")
        if len({a.coords for a in alpha}) != len(alpha):
            raise CodeError("evaluation points must be pairwise distinct")
        if self.delta is not None:
            expected = construction_points(self.tower, self.delta)
            if expected != alpha:
                raise CodeError("evaluation points do not match the delta-set construction")

    @property
    def n(self):
        return len(self.alpha)

    @property
    def base(self):
        return self.tower.base

    @property
    def kind(self):
        return None if self.delta is None else self.delta.kind

    def alpha_values(self):
        return [a.value for a in self.alpha]


@dataclass(frozen=True)
class MessagePoly:
    coeffs: tuple  # TowerElements, lowest degree first

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def k(self):
        return len(self.coeffs)

    def __call__(self, x):
        acc = x.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def values(self):
        return tuple(c.value for c in self.coeffs)

    @classmethod
    def from_values(cls, tower, values):
        return cls(tuple(tower.decode(v) for v in values))


def max_length(base, kind):
    kind = ConstructionKind.parse(kind)
    if kind is ConstructionKind.SQUARE:
        return 0 if base.p == 2 else base.q - 1
    return base.q - 1 if base.p == 2 else (base.q - 1) // 2


def select_delta_set(base, n, kind):
    """First ``n`` admissible nonzero elements in canonical order.

    For the inverse construction in odd characteristic only the smaller
    member of each pair ``{d, -d}`` is admissible.
    """
    kind = ConstructionKind.parse(kind)
    if kind is ConstructionKind.SQUARE and base.p == 2:
        raise CodeError("the square construction needs odd characteristic")
    if n < 3:
        raise CodeError("code length must be at least 3")
    limit = max_length(base, kind)
    if n > limit:
        raise CodeError(f"n = {n} exceeds the maximal length {limit} for the {kind.value} construction over GF({base.q})")
    chosen = []
    for v in range(1, base.q):
        if kind is ConstructionKind.INVERSE and base.p != 2 and base._neg(v) < v:
            continue
        chosen.append(v)
        if len(chosen) == n:
            break
    return DeltaSet(base, tuple(chosen), kind)


def construction_point(tower, d, kind):
    B = tower.base
    coef = B._inv(d) if kind is ConstructionKind.INVERSE else B._mul(d, d)
    return TowerElement(tower, (d, coef, 0))


def construction_points(tower, delta):
    return tuple(construction_point(tower, d, delta.kind) for d in delta.elements)


def _resolve_ordering(n, ordering):
    if ordering is None:
        return None
    if isinstance(ordering, int):
        perm = list(range(n))
        random.Random(ordering).shuffle(perm)
        return tuple(perm)
    perm = tuple(int(i) for i in ordering)
    if sorted(perm) != list(range(n)):
        raise CodeError("ordering must be a permutation of range(n)")
    return perm


def construct_code(base, n, kind, ordering=None, tower=None):
    """The [n, 2] code of the chosen construction over ``tower`` (default: canonical cubic).

    ``ordering`` is either a permutation of ``range(n)`` applied to the
    canonical delta-set or an integer seed for a random permutation.
    """
    kind = ConstructionKind.parse(kind)
    canonical = select_delta_set(base, n, kind)
    perm = _resolve_ordering(n, ordering)
    elems = canonical.elements if perm is None else tuple(canonical.elements[i] for i in perm)
    delta = DeltaSet(base, elems, kind)
    if tower is None:
        tower = TowerField(base)
    elif tower.base != base:
        raise CodeError("tower is not built over the requested base field")
    return RsCode(tower, 2, construction_points(tower, delta), delta, perm)


def encode(code, msg):
    if isinstance(msg, MessagePoly):
        coeffs = msg.coeffs
    else:
        coeffs = tuple(code.tower(c) for c in msg)
    if len(coeffs) != code.k:
        raise CodeError(f"message has {len(coeffs)} coefficients, code dimension is {code.k}")
    T = code.tower
    raw = [T._check(c) for c in coeffs]
    out = []
    for a in code.alpha:
        acc = (0, 0, 0)
        for c in reversed(raw):
            acc = T._add(T._mul(acc, a.coords), c)
        out.append(TowerElement(T, acc))
    return tuple(out)


def field_size_bounds(n):
    """``((n+1)^3, C(n,3) - 1)``: achieved field size and the lower bound for length n."""
    if n < 3:
        raise CodeError("n must be at least 3")
    return (n + 1) ** 3, math.comb(n, 3) - 1


def decoding_radius(n, k):
    if n < 2 * k - 1:
        raise CodeError("need n >= 2k - 1")
    return n - 2 * k + 1


# --------------------------------------------------------------------------
# key=value serialisation


FORMAT_TAG = "insdel-rs-code/1"


def _ints(text):
    text = text.strip()
    return [int(t) for t in text.split(",")] if text else []


def dumps(code):
    """Serialise a code as ``key=value`` lines (see README for the field list)."""
    base = code.base
    lines = [
        f"format={FORMAT_TAG}",
        f"p={base.p}",
        f"e={base.e}",
        f"modulus={','.join(map(str, base.modulus)) if base.modulus else ''}",
        f"gamma_min_poly={','.join(map(str, code.tower.gamma_min_poly))}",
        f"k={code.k}",
        f"n={code.n}",
        f"kind={code.kind.value if code.kind else 'none'}",
        f"delta={','.join(map(str, code.delta.elements)) if code.delta else ''}",
        f"alpha={','.join(map(str, code.alpha_values()))}",
    ]
    return "\n".join(lines) + "\n"


def loads(text):
    rec = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise CodeError(f"malformed line {raw!r}")
        rec[key.strip()] = value.strip()
    missing = {"p", "e", "k", "alpha"} - rec.keys()
    if missing:
        raise CodeError(f"code record lacks {sorted(missing)}")
    if rec.get("format", FORMAT_TAG) != FORMAT_TAG:
        raise CodeError(f"unsupported format {rec['format']!r}")
    try:
        modulus = _ints(rec.get("modulus", "")) or None
        base = BaseField(int(rec["p"]), int(rec["e"]), modulus)
        tower = TowerField(base, _ints(rec.get("gamma_min_poly", "")) or None)
        alpha = tuple(tower.decode(v) for v in _ints(rec["alpha"]))
        k = int(rec["k"])
        if "n" in rec and int(rec["n"]) != len(alpha):
            raise CodeError("n does not match the number of evaluation points")
        kind = rec.get("kind", "none")
        delta = None
        if kind != "none":
            delta = DeltaSet(base, tuple(_ints(rec.get("delta", ""))), ConstructionKind.parse(kind))
        return RsCode(tower, k, alpha, delta)
    except FieldError as exc:
        raise CodeError(str(exc)) from exc

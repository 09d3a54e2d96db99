"""Finite fields GF(p^e) and their cubic extensions GF(q^3).

Elements are stored reduced, by their canonical integer encoding:

* base field: ``sum(coeffs[i] * p**i)`` where ``coeffs[i]`` multiplies ``x**i``;
* tower: ``c0 + c1*q + c2*q**2`` for the element ``c0 + c1*g + c2*g**2``,
  ``g`` a root of the defining cubic.

Polynomials are plain lists of canonical integers, lowest degree first.
"""

from __future__ import annotations

import numpy as np

# Multiplication tables (q x q) are only materialised up to this order.
TABLE_LIMIT = 1024
# Python-side log/antilog lists for extension fields up to this order.
LOG_LIMIT = 1 << 16


class FieldError(ValueError):
    pass


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q):
    """Return ``(p, e)`` with ``q == p**e``, or ``None``."""
    if q < 2:
        return None
    for p in prime_factors(q)[:1]:
        e = 0
        while q % p == 0:
            q //= p
            e += 1
        return (p, e) if q == 1 else None
    return None


# --------------------------------------------------------------------------
# polynomials over a field (coefficients are canonical integers)


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F._add(out[i], c)
    return _trim(out)


def poly_sub(F, a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([F._sub(x, y) for x, y in zip(a, b)])


def poly_mul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = F._add(out[i + j], F._mul(x, y))
    return _trim(out)


def poly_divmod(F, a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = F._inv(b[-1])
    quot = [0] * max(len(a) - len(b) + 1, 0)
    r = a
    while len(r) >= len(b):
        c = F._mul(r[-1], inv_lead)
        shift = len(r) - len(b)
        quot[shift] = c
        for i, bi in enumerate(b):
            r[shift + i] = F._sub(r[shift + i], F._mul(c, bi))
        r = _trim(r)
    return _trim(quot), r


def poly_mod(F, a, m):
    return poly_divmod(F, a, m)[1]


def poly_powmod(F, a, n, m):
    result = [1]
    a = poly_mod(F, a, m)
    while n:
        if n & 1:
            result = poly_mod(F, poly_mul(F, result, a), m)
        n >>= 1
        if n:
            a = poly_mod(F, poly_mul(F, a, a), m)
    return result


def poly_gcd(F, a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_mod(F, a, b)
    if a:
        inv = F._inv(a[-1])
        a = [F._mul(c, inv) for c in a]
    return a


def poly_inverse_mod(F, a, m):
    """Inverse of ``a`` modulo ``m`` by the extended Euclidean algorithm."""
    r0, r1 = _trim(m), poly_mod(F, a, m)
    s0, s1 = [], [1]
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    while r1:
        quot, rem = poly_divmod(F, r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, poly_sub(F, s0, poly_mul(F, quot, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("modulus shares a factor with the element")
    inv = F._inv(r0[0])
    return [F._mul(c, inv) for c in s0]


def poly_eval(F, a, x):
    acc = 0
    for c in reversed(a):
        acc = F._add(F._mul(acc, x), c)
    return acc


def poly_str(coeffs, var="x"):
    """Render a coefficient list (lowest degree first) as ``x^3+x+1``."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}*{mono}")
    return "+".join(terms) if terms else "0"


def has_root(F, poly):
    return any(poly_eval(F, poly, x) == 0 for x in range(F.q))


def is_irreducible(F, poly):
    """Irreducibility of a monic polynomial over ``F``.

    Degrees 2 and 3 are decided by the absence of roots.  Higher degrees use
    Rabin's test: ``x^(Q^d) = x mod f`` and ``gcd(x^(Q^(d/r)) - x, f) = 1`` for
    every prime ``r | d``.
    """
    poly = _trim(poly)
    d = len(poly) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if d <= 3:
        return not has_root(F, poly)
    x = [0, 1]
    powers = {0: x}
    cur = x
    for j in range(1, d + 1):
        cur = poly_powmod(F, cur, F.q, poly)
        powers[j] = cur
    if poly_sub(F, powers[d], x):
        return False
    for r in prime_factors(d):
        h = poly_sub(F, powers[d // r], x)
        if len(poly_gcd(F, h, poly)) != 1:
            return False
    return True


def canonical_irreducible(F, degree):
    """First monic irreducible of ``degree`` over ``F`` in canonical lex order.

    Coefficient tuples ``(a_{d-1}, ..., a_0)`` are scanned in ascending order
    with ``a_{d-1}`` most significant, i.e. by ``sum(a_i * Q**i)``.
    """
    if degree < 2:
        raise FieldError("degree must be at least 2")
    Q = F.q
    for idx in range(Q**degree):
        coeffs = []
        for _ in range(degree):
            idx, r = divmod(idx, Q)
            coeffs.append(r)
        poly = coeffs + [1]
        if is_irreducible(F, poly):
            return poly
    raise AssertionError("no irreducible polynomial found")  # unreachable


def irreducible_cubics(F):
    """All monic irreducible cubics over ``F`` in canonical order."""
    Q = F.q
    out = []
    for idx in range(Q**3):
        coeffs = [idx % Q, (idx // Q) % Q, idx // (Q * Q)]
        poly = coeffs + [1]
        if not has_root(F, poly):
            out.append(poly)
    return out


# --------------------------------------------------------------------------
# elements


class BaseElement:
    """An element of GF(p^e), held as its canonical integer."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    @property
    def coeffs(self):
        return self.field.digits(self.value)

    def _other(self, other):
        if not isinstance(other, BaseElement) or other.field != self.field:
            raise FieldError("operands belong to different fields")
        return other.value

    def __add__(self, other):
        return BaseElement(self.field, self.field._add(self.value, self._other(other)))

    def __sub__(self, other):
        return BaseElement(self.field, self.field._sub(self.value, self._other(other)))

    def __mul__(self, other):
        return BaseElement(self.field, self.field._mul(self.value, self._other(other)))

    def __truediv__(self, other):
        return self * other.inv()

    def __neg__(self):
        return BaseElement(self.field, self.field._neg(self.value))

    def __pow__(self, n):
        return self.field.pow(self, n)

    def inv(self):
        return self.field.inv(self)

    def __eq__(self, other):
        return isinstance(other, BaseElement) and self.value == other.value and self.field == other.field

    def __hash__(self):
        return hash((self.field.q, self.value))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"GF({self.field.q})({self.value})"


class TowerElement:
    """``c0 + c1*g + c2*g^2`` with base-field coordinates held as integers."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    @property
    def c0(self):
        return BaseElement(self.field.base, self.coords[0])

    @property
    def c1(self):
        return BaseElement(self.field.base, self.coords[1])

    @property
    def c2(self):
        return BaseElement(self.field.base, self.coords[2])

    @property
    def value(self):
        q = self.field.base.q
        c0, c1, c2 = self.coords
        return c0 + q * (c1 + q * c2)

    def _other(self, other):
        if not isinstance(other, TowerElement) or other.field != self.field:
            raise FieldError("operands belong to different fields")
        return other.coords

    def __add__(self, other):
        return TowerElement(self.field, self.field._add(self.coords, self._other(other)))

    def __sub__(self, other):
        return TowerElement(self.field, self.field._sub(self.coords, self._other(other)))

    def __mul__(self, other):
        return TowerElement(self.field, self.field._mul(self.coords, self._other(other)))

    def __truediv__(self, other):
        return self * other.inv()

    def __neg__(self):
        return TowerElement(self.field, self.field._neg(self.coords))

    def __pow__(self, n):
        return self.field.pow(self, n)

    def inv(self):
        return self.field.inv(self)

    def __eq__(self, other):
        return isinstance(other, TowerElement) and self.coords == other.coords and self.field == other.field

    def __hash__(self):
        return hash(self.coords)

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.coords != (0, 0, 0)

    def __repr__(self):
        return f"Tower{self.coords}"


# --------------------------------------------------------------------------
# contexts


class BaseField:
    """GF(p^e) with an explicit monic irreducible modulus of degree ``e``.

    ``modulus`` is given lowest degree first, leading 1 included.  Without
    one, the canonical irreducible of degree ``e`` over GF(p) is used.
    """

    def __init__(self, p, e=1, modulus=None):
        if not isinstance(p, int) or not is_prime(p):
            raise FieldError(f"characteristic {p!r} is not prime")
        if not isinstance(e, int) or e < 1:
            raise FieldError("extension degree must be a positive integer")
        if p**e >= 1 << 63:
            raise FieldError("field order must fit a signed 64-bit integer")
        self.p = p
        self.e = e
        self.q = p**e
        self._log = self._exp = None
        self._tables = None
        if e == 1:
            if modulus is not None and (len(modulus) != 2 or modulus[-1] != 1):
                raise FieldError("a prime field takes no modulus (or a monic linear one)")
            self.modulus = None
            self.prime_field = self
            return
        self.prime_field = BaseField(p, 1)
        if modulus is None:
            modulus = canonical_irreducible(self.prime_field, e)
        modulus = [int(c) for c in modulus]
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {e}")
        if any(not 0 <= c < p for c in modulus):
            raise FieldError(f"modulus coefficients must lie in [0, {p - 1}]")
        if not is_irreducible(self.prime_field, modulus):
            raise FieldError(f"modulus {poly_str(modulus)} is reducible over GF({p})")
        self.modulus = tuple(modulus)
        if self.q <= LOG_LIMIT:
            self._build_logs()

    # -- identity ---------------------------------------------------------
    def __eq__(self, other):
        return self is other or (
            isinstance(other, BaseField) and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"BaseField(GF({self.p}))"
        return f"BaseField(GF({self.p}^{self.e}), modulus={self.modulus_str()})"

    def modulus_str(self):
        return poly_str(self.modulus) if self.modulus else f"x (prime field GF({self.p}))"

    @property
    def characteristic(self):
        return self.p

    # -- encoding ---------------------------------------------------------
    def digits(self, n):
        out = []
        for _ in range(self.e):
            n, r = divmod(n, self.p)
            out.append(r)
        return tuple(out)

    def from_digits(self, digits):
        n = 0
        for d in reversed(digits):
            n = n * self.p + d
        return n

    def __call__(self, value):
        if isinstance(value, BaseElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return self.decode(value)
        coeffs = [int(c) for c in value]
        if len(coeffs) != self.e or any(not 0 <= c < self.p for c in coeffs):
            raise FieldError(f"expected {self.e} coefficients in [0, {self.p - 1}]")
        return BaseElement(self, self.from_digits(coeffs))

    def encode(self, a):
        return self(a).value

    def decode(self, n):
        if not 0 <= n < self.q:
            raise FieldError(f"{n} is outside [0, {self.q - 1}]")
        return BaseElement(self, n)

    @property
    def zero(self):
        return BaseElement(self, 0)

    @property
    def one(self):
        return BaseElement(self, 1)

    def elements(self):
        return [BaseElement(self, v) for v in range(self.q)]

    # -- raw integer arithmetic -------------------------------------------
    def _add(self, a, b):
        if self.e == 1:
            s = a + b
            return s - self.p if s >= self.p else s
        if self.p == 2:
            return a ^ b
        p, out, scale = self.p, 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * scale
            scale *= p
        return out

    def _neg(self, a):
        if self.e == 1:
            return (self.p - a) % self.p
        if self.p == 2:
            return a
        p, out, scale = self.p, 0, 1
        while a:
            a, x = divmod(a, p)
            out += ((p - x) % p) * scale
            scale *= p
        return out

    def _sub(self, a, b):
        if self.e == 1:
            d = a - b
            return d + self.p if d < 0 else d
        return self._add(a, self._neg(b))

    def _mul(self, a, b):
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        F = self.prime_field
        prod = poly_mod(F, poly_mul(F, _trim(self.digits(a)), _trim(self.digits(b))), self.modulus)
        return self.from_digits(prod + [0] * (self.e - len(prod)))

    def _inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        F = self.prime_field
        inv = poly_inverse_mod(F, _trim(self.digits(a)), self.modulus)
        return self.from_digits(inv + [0] * (self.e - len(inv)))

    def _build_logs(self):
        # Find a generator of the multiplicative group by the standard order test.
        F = self.prime_field
        order = self.q - 1
        factors = prime_factors(order)

        def slow_pow(a, n):
            r = poly_powmod(F, _trim(self.digits(a)), n, self.modulus)
            return self.from_digits(r + [0] * (self.e - len(r)))

        gen = next(g for g in range(2, self.q) if all(slow_pow(g, order // r) != 1 for r in factors))
        exp = [0] * order
        log = [0] * self.q
        cur = 1
        x_poly = _trim(self.digits(gen))
        for i in range(order):
            exp[i] = cur
            log[cur] = i
            r = poly_mod(F, poly_mul(F, _trim(self.digits(cur)), x_poly), self.modulus)
            cur = self.from_digits(r + [0] * (self.e - len(r)))
        self._exp, self._log = exp, log

    # -- element API --------------------------------------------------------
    def _check(self, a):
        if not isinstance(a, BaseElement) or a.field != self:
            raise FieldError("element does not belong to this field")
        return a.value

    def add(self, a, b):
        return BaseElement(self, self._add(self._check(a), self._check(b)))

    def sub(self, a, b):
        return BaseElement(self, self._sub(self._check(a), self._check(b)))

    def neg(self, a):
        return BaseElement(self, self._neg(self._check(a)))

    def mul(self, a, b):
        return BaseElement(self, self._mul(self._check(a), self._check(b)))

    def inv(self, a):
        v = self._check(a)
        if v == 0:
            raise ZeroDivisionError("zero has no inverse")
        return BaseElement(self, self._inv(v))

    def pow(self, a, n):
        """``a**n`` by square-and-multiply; ``0**0`` is taken to be 1."""
        v = self._check(a)
        if n < 0:
            v, n = self._inv(v), -n
        out = 1
        while n:
            if n & 1:
                out = self._mul(out, v)
            v = self._mul(v, v)
            n >>= 1
        return BaseElement(self, out)

    # -- numpy tables for the kernels -----------------------------------------
    def tables(self):
        """``(ADD, SUB, MUL, NEG, INV)`` int64 arrays indexed by canonical integers."""
        if self._tables is None:
            if self.q > TABLE_LIMIT:
                raise FieldError(f"arithmetic tables need q <= {TABLE_LIMIT} (q = {self.q})")
            q, p = self.q, self.p
            r = np.arange(q, dtype=np.int64)
            if self.e == 1:
                add = (r[:, None] + r[None, :]) % p
                sub = (r[:, None] - r[None, :]) % p
                mul = (r[:, None] * r[None, :]) % p
            else:
                digs = np.array([self.digits(v) for v in range(q)], dtype=np.int64)
                weights = p ** np.arange(self.e, dtype=np.int64)
                add = ((digs[:, None, :] + digs[None, :, :]) % p) @ weights
                sub = ((digs[:, None, :] - digs[None, :, :]) % p) @ weights
                log = np.array(self._log, dtype=np.int64)
                exp = np.array(self._exp, dtype=np.int64)
                mul = exp[(log[:, None] + log[None, :]) % (q - 1)]
                mul[0, :] = 0
                mul[:, 0] = 0
            neg = sub[0].copy()
            inv = np.zeros(q, dtype=np.int64)
            inv[1:] = [self._inv(v) for v in range(1, q)]
            tabs = (add, sub, mul, neg, inv)
            for t in tabs:
                t.setflags(write=False)
            self._tables = tabs
        return self._tables


class TowerField:
    """GF(q^3) as triples over a base field, reduced by a monic cubic.

    ``gamma_min_poly`` is lowest degree first with the leading 1 included,
    coefficients as base-field canonical integers.  It defaults to the
    canonical irreducible cubic.
    """

    def __init__(self, base, gamma_min_poly=None):
        self.base = base
        if gamma_min_poly is None:
            gamma_min_poly = canonical_irreducible(base, 3)
        poly = [int(c) for c in gamma_min_poly]
        if len(poly) != 4 or poly[-1] != 1:
            raise FieldError("gamma_min_poly must be a monic cubic")
        if any(not 0 <= c < base.q for c in poly):
            raise FieldError("gamma_min_poly coefficients must be base-field elements")
        if has_root(base, poly):
            raise FieldError(f"{poly_str(poly)} has a root in GF({base.q}), so it is reducible")
        self.gamma_min_poly = tuple(poly)
        self.order = base.q**3
        B = base
        # g^3 = -(m0 + m1 g + m2 g^2);  g^4 = g * g^3
        r0, r1, r2 = (B._neg(c) for c in poly[:3])
        self._g3 = (r0, r1, r2)
        self._g4 = (B._mul(r2, r0), B._add(r0, B._mul(r2, r1)), B._add(r1, B._mul(r2, r2)))

    def __eq__(self, other):
        return self is other or (
            isinstance(other, TowerField) and self.base == other.base and self.gamma_min_poly == other.gamma_min_poly
        )

    def __hash__(self):
        return hash((self.base, self.gamma_min_poly))

    def __repr__(self):
        return f"TowerField(GF({self.base.q})^3, gamma: {poly_str(self.gamma_min_poly, 'g')})"

    # -- encoding ---------------------------------------------------------
    def __call__(self, value):
        if isinstance(value, TowerElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, BaseElement):
            return self.embed(value)
        if isinstance(value, int):
            return self.decode(value)
        coords = tuple(self.base.encode(c) if isinstance(c, BaseElement) else int(c) for c in value)
        if len(coords) != 3 or any(not 0 <= c < self.base.q for c in coords):
            raise FieldError("expected three base-field coordinates")
        return TowerElement(self, coords)

    def encode(self, a):
        return self(a).value

    def decode(self, n):
        if not 0 <= n < self.order:
            raise FieldError(f"{n} is outside [0, {self.order - 1}]")
        q = self.base.q
        return TowerElement(self, (n % q, (n // q) % q, n // (q * q)))

    def embed(self, a):
        if not isinstance(a, BaseElement) or a.field != self.base:
            raise FieldError("element is not in the base field")
        return TowerElement(self, (a.value, 0, 0))

    @property
    def zero(self):
        return TowerElement(self, (0, 0, 0))

    @property
    def one(self):
        return TowerElement(self, (1, 0, 0))

    @property
    def gamma(self):
        return TowerElement(self, (0, 1, 0))

    def elements(self):
        return [self.decode(v) for v in range(self.order)]

    # -- raw triple arithmetic ----------------------------------------------
    def _add(self, a, b):
        add = self.base._add
        return (add(a[0], b[0]), add(a[1], b[1]), add(a[2], b[2]))

    def _sub(self, a, b):
        sub = self.base._sub
        return (sub(a[0], b[0]), sub(a[1], b[1]), sub(a[2], b[2]))

    def _neg(self, a):
        neg = self.base._neg
        return (neg(a[0]), neg(a[1]), neg(a[2]))

    def _mul(self, a, b):
        B = self.base
        add, mul = B._add, B._mul
        a0, a1, a2 = a
        b0, b1, b2 = b
        d0 = mul(a0, b0)
        d1 = add(mul(a0, b1), mul(a1, b0))
        d2 = add(add(mul(a0, b2), mul(a1, b1)), mul(a2, b0))
        d3 = add(mul(a1, b2), mul(a2, b1))
        d4 = mul(a2, b2)
        g3, g4 = self._g3, self._g4
        return tuple(add(add(d, mul(d3, g3[i])), mul(d4, g4[i])) for i, d in enumerate((d0, d1, d2)))

    def _inv(self, a):
        if a == (0, 0, 0):
            raise ZeroDivisionError("inverse of zero")
        inv = poly_inverse_mod(self.base, _trim(a), list(self.gamma_min_poly))
        return tuple(inv + [0] * (3 - len(inv)))

    # -- element API --------------------------------------------------------
    def _check(self, a):
        if not isinstance(a, TowerElement) or a.field != self:
            raise FieldError("element does not belong to this field")
        return a.coords

    def add(self, a, b):
        return TowerElement(self, self._add(self._check(a), self._check(b)))

    def sub(self, a, b):
        return TowerElement(self, self._sub(self._check(a), self._check(b)))

    def neg(self, a):
        return TowerElement(self, self._neg(self._check(a)))

    def mul(self, a, b):
        return TowerElement(self, self._mul(self._check(a), self._check(b)))

    def inv(self, a):
        return TowerElement(self, self._inv(self._check(a)))

    def pow(self, a, n):
        """``a**n`` by square-and-multiply; ``0**0`` is taken to be 1."""
        v = self._check(a)
        if n < 0:
            v, n = self._inv(v), -n
        out = (1, 0, 0)
        while n:
            if n & 1:
                out = self._mul(out, v)
            v = self._mul(v, v)
            n >>= 1
        return TowerElement(self, out)

    def kernel_tables(self):
        """Base tables plus the reduction rows for g^3 and g^4, as used by the kernels."""
        add, sub, mul, neg, inv = self.base.tables()
        G = np.array([self._g3, self._g4], dtype=np.int64)
        return add, sub, mul, G


def base_context_create(p, e=1, modulus=None):
    return BaseField(p, e, modulus)


def tower_create(base, gamma_min_poly=None):
    return TowerField(base, gamma_min_poly)


def field_from_order(q):
    """The base field of order ``q`` with its canonical modulus."""
    pe = prime_power(q)
    if pe is None:
        raise FieldError(f"{q} is not a prime power")
    return BaseField(*pe)

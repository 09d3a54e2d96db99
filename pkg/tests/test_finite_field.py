import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from insdel_rs import kernels
from insdel_rs.finite_field import (
    BaseField,
    FieldError,
    TowerField,
    canonical_irreducible,
    field_from_order,
    irreducible_cubics,
    is_irreducible,
    poly_str,
)


def brute_first_irreducible_cubic(p):
    """Lex scan over (a2, a1, a0) with plain modular arithmetic: irreducible iff no root."""
    for a2, a1, a0 in itertools.product(range(p), repeat=3):
        if all((x**3 + a2 * x * x + a1 * x + a0) % p for x in range(p)):
            return [a0, a1, a2, 1]


def clmul_mod(a, b, modulus_bits, degree):
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> degree & 1:
            a ^= modulus_bits
    return out


class TestBaseContext:
    def test_prime_field(self, gf7):
        assert gf7.q == 7 and gf7.modulus is None

    def test_gf8_modulus(self, gf8):
        assert gf8.modulus == (1, 1, 0, 1)
        assert brute_first_irreducible_cubic(2) == list(gf8.modulus)
        assert poly_str(gf8.modulus) == "x^3+x+1"

    @pytest.mark.parametrize("p", [4, 1, 0, 9, 15])
    def test_non_prime(self, p):
        with pytest.raises(FieldError):
            BaseField(p)

    def test_reducible_modulus(self):
        with pytest.raises(FieldError):
            BaseField(2, 3, [1, 0, 0, 1])  # x^3 + 1 = (x + 1)(x^2 + x + 1)

    def test_malformed_modulus(self):
        with pytest.raises(FieldError):
            BaseField(2, 3, [1, 1, 1])
        with pytest.raises(FieldError):
            BaseField(2, 3, [1, 1, 0, 2])

    def test_explicit_modulus(self):
        F = BaseField(2, 3, [1, 0, 1, 1])
        assert F.modulus == (1, 0, 1, 1)
        assert F(2) * F(4) == F(5)  # x^3 = x^2 + 1

    def test_gf16_needs_rabin(self):
        F = BaseField(2, 4)
        assert F.modulus == (1, 1, 0, 0, 1)
        assert not is_irreducible(BaseField(2), [1, 0, 1, 0, 1])  # (x^2 + x + 1)^2, no roots

    def test_gf9(self, gf9):
        assert gf9.modulus == (1, 0, 1)


class TestCanonicalIrreducible:
    @pytest.mark.parametrize(
        "p, expected",
        [(7, [2, 0, 0, 1]), (2, [1, 1, 0, 1]), (5, [1, 1, 0, 1])],
    )
    def test_cubics(self, p, expected):
        assert canonical_irreducible(BaseField(p), 3) == expected
        assert brute_first_irreducible_cubic(p) == expected

    @pytest.mark.parametrize("p", [3, 11, 13])
    def test_against_brute_force(self, p):
        assert canonical_irreducible(BaseField(p), 3) == brute_first_irreducible_cubic(p)

    def test_count_of_irreducible_cubics(self):
        # (q^3 - q) / 3 monic irreducible cubics over GF(q)
        for q in (2, 3, 4, 5, 7, 8):
            F = field_from_order(q)
            assert len(irreducible_cubics(F)) == (q**3 - q) // 3

    def test_degree_validation(self, gf7):
        with pytest.raises(FieldError):
            canonical_irreducible(gf7, 1)


class TestArithmeticExamples:
    def test_add(self, gf7, gf8):
        assert gf7(3) + gf7(5) == gf7(1)
        assert gf8(3) + gf8(5) == gf8(6)
        T = TowerField(gf7)
        assert T((1, 2, 3)) + T((6, 5, 4)) == T.zero

    def test_mul(self, gf8):
        assert gf8(2) * gf8(2) == gf8(4)
        assert gf8(2) * gf8(4) == gf8(3)
        for a in range(8):
            for b in range(8):
                assert gf8._mul(a, b) == clmul_mod(a, b, 0b1011, 3)

    def test_inv(self, gf7, gf8):
        assert gf7(3).inv() == gf7(5)
        assert gf8(2).inv() == gf8(5)
        assert [b for b in range(1, 8) if clmul_mod(2, b, 0b1011, 3) == 1] == [5]
        with pytest.raises(ZeroDivisionError):
            gf7.zero.inv()
        with pytest.raises(ZeroDivisionError):
            TowerField(gf7).zero.inv()

    def test_pow(self, gf7):
        assert gf7.pow(gf7.zero, 0) == gf7.one
        assert gf7(3) ** 6 == gf7.one
        T = TowerField(gf7)
        rng = random.Random(3)
        for _ in range(20):
            t = T.decode(rng.randrange(1, 343))
            assert t**342 == T.one

    def test_context_mismatch(self, gf7, gf8):
        with pytest.raises(FieldError):
            gf7(1) + gf8(1)
        with pytest.raises(FieldError):
            gf7.add(gf7(1), gf8(1))
        with pytest.raises(FieldError):
            TowerField(gf7).one * TowerField(BaseField(5)).one

    def test_encoding(self, gf7, gf8):
        assert gf8((1, 0, 1)).value == 5
        assert gf8.encode(gf8((1, 0, 1))) == 5
        T = TowerField(gf7)
        assert T.encode(T((1, 2, 3))) == 162
        assert T.decode(162).coords == (1, 2, 3)
        with pytest.raises(FieldError):
            gf8.decode(8)
        with pytest.raises(FieldError):
            T.decode(343)
        with pytest.raises(FieldError):
            T.decode(-1)


class TestTower:
    def test_gf7_tower(self, gf7):
        T = TowerField(gf7)
        assert T.order == 343
        assert T.gamma**3 == T((5, 0, 0))

    def test_gf2_tower(self):
        T = TowerField(BaseField(2))
        assert T.gamma_min_poly == (1, 1, 0, 1) and T.order == 8

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16])
    def test_gamma_is_root(self, q):
        T = TowerField(field_from_order(q))
        g = T.gamma
        m = [T.embed(T.base.decode(c)) for c in T.gamma_min_poly]
        assert m[0] + m[1] * g + m[2] * g**2 + m[3] * g**3 == T.zero

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
    def test_basis_independence(self, q):
        # 1, g, g^2 independent <=> defining cubic has no base-field root
        F = field_from_order(q)
        T = TowerField(F)
        m = T.gamma_min_poly
        for x in F.elements():
            val = F.zero
            for c in reversed(m):
                val = val * x + F.decode(c)
            assert val != F.zero

    def test_reducible_gamma_poly(self, gf7):
        with pytest.raises(FieldError):
            TowerField(gf7, [6, 0, 0, 1])  # x^3 - 1 has root 1

    def test_embed_is_homomorphism(self, gf9):
        T = TowerField(gf9)
        assert T.embed(gf9.zero) == T.zero
        assert T.embed(gf9.one) == T.one
        for a in gf9.elements():
            for b in gf9.elements():
                assert T.embed(a) * T.embed(b) == T.embed(a * b)
                assert T.embed(a) + T.embed(b) == T.embed(a + b)
        with pytest.raises(FieldError):
            T.embed(BaseField(7)(1))


# -- exhaustive axiom suites ---------------------------------------------------


def _check_tables(add, mul, neg, inv, order):
    """Exhaustive axioms on full operation tables (vectorised over triples)."""
    r = np.arange(order)
    assert (add == add.T).all() and (mul == mul.T).all()
    assert (add[0] == r).all() and (mul[1] == r).all()
    assert (add[r, neg] == 0).all()
    assert (mul[r[1:], inv[1:]] == 1).all()
    for a in range(order):
        assert (add[add[a][:, None], r[None, :]] == add[a][add]).all()
        assert (mul[mul[a][:, None], r[None, :]] == mul[a][mul]).all()
        assert (mul[a][add] == add[mul[a][:, None], mul[a][None, :]]).all()


def _base_tables(F):
    add, sub, mul, neg, inv = F.tables()
    return add, mul, neg, inv


def _tower_tables(T):
    """Full tables of the tower, built by the vectorised kernel arithmetic."""
    q = T.base.q
    ADD, SUB, MUL, G = T.kernel_tables()
    codes = np.arange(T.order)
    C = np.stack([codes % q, (codes // q) % q, codes // (q * q)], axis=-1)
    enc = lambda X: X[..., 0] + q * (X[..., 1] + q * X[..., 2])  # noqa: E731
    add = enc(ADD[C[:, None, :], C[None, :, :]])
    mul = enc(kernels.tower_mul(C[:, None, :], C[None, :, :], ADD, MUL, G))
    neg = enc(SUB[0][C])
    inv = np.zeros(T.order, dtype=np.int64)
    inv[1:] = [T.decode(v).inv().value for v in range(1, T.order)]
    return add, mul, neg, inv


@pytest.mark.parametrize("q", [7, 8, 9])
def test_base_axioms_exhaustive(q):
    F = field_from_order(q)
    els = F.elements()
    for a, b, c in itertools.product(els, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a, b in itertools.product(els, repeat=2):
        assert a + b == b + a and a * b == b * a
        assert a - b == a + (-b)
    for a in els:
        assert a + (-a) == F.zero
        if a:
            assert a * a.inv() == F.one
            assert a ** (q - 1) == F.one
    _check_tables(*_base_tables(F), q)


@pytest.mark.parametrize("q", [7, 8, 9])
def test_tower_axioms_exhaustive(q):
    T = TowerField(field_from_order(q))
    add, mul, neg, inv = _tower_tables(T)
    _check_tables(add, mul, neg, inv, T.order)
    # element-level arithmetic agrees with the tables on every pair
    els = T.elements()
    for a in els:
        for b in els[:: max(1, T.order // 64)]:
            assert (a * b).value == mul[a.value, b.value]
            assert (a + b).value == add[a.value, b.value]
    for a in els[1:]:
        assert a ** (T.order - 1) == T.one


def test_tower_gf31_randomised():
    T = TowerField(BaseField(31))
    rng = random.Random(31)
    for _ in range(10_000):
        a, b, c = (T.decode(rng.randrange(T.order)) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a and a + b == b + a
        if a:
            assert a * a.inv() == T.one


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 24388), st.integers(0, 24388))
def test_tower_encoding_roundtrip(x, y):
    T = TowerField(field_from_order(29))
    a, b = T.decode(x), T.decode(y)
    assert T.decode(a.value) == a and a.value == x
    assert (a - b) + b == a


@pytest.mark.parametrize("q", [7, 8, 9, 16])
def test_base_encoding_bijection(q):
    F = field_from_order(q)
    assert sorted(F.encode(a) for a in F.elements()) == list(range(q))
    for a in F.elements():
        assert F(a.coeffs) == a


def test_large_extension_without_tables():
    F = BaseField(2, 17)  # beyond the log-table limit
    a, b = F(12345), F(99999)
    assert a * a.inv() == F.one
    assert (a * b) * a.inv() == b
    with pytest.raises(FieldError):
        F.tables()

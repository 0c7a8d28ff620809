import numpy as np
import pytest

from multispace.errors import (
    ContextMismatch,
    DivisionByZero,
    FieldTooLarge,
    FormatError,
    NotIrreducible,
    NotPrime,
)
from multispace.fields import Embedding, FieldCtx, extension, field, parse_field_spec


def poly_mulmod(a, b, mod, p):
    """Independent schoolbook oracle on little-endian base-p encodings."""

    def coeffs(v):
        cs = []
        while v:
            cs.append(v % p)
            v //= p
        return cs

    def enc(cs):
        out = 0
        for c in reversed(cs):
            out = out * p + c
        return out

    ca, cb = coeffs(a), coeffs(b)
    prod = [0] * (len(ca) + len(cb) or 1)
    for i, x in enumerate(ca):
        for j, y in enumerate(cb):
            prod[i + j] = (prod[i + j] + x * y) % p
    cm = coeffs(mod)
    dm = len(cm) - 1
    while len(prod) > dm:
        lead = prod[-1]
        if lead:
            for j, y in enumerate(cm):
                prod[len(prod) - 1 - dm + j] = (prod[len(prod) - 1 - dm + j] - lead * y) % p
        prod.pop()
    return enc(prod)


def test_default_moduli():
    assert field(2).modulus == 2  # the polynomial x
    assert field(2, 2).modulus == 7  # x^2 + x + 1
    assert field(2, 3).modulus == 11  # x^3 + x + 1
    assert field(2, 4).modulus == 19  # x^4 + x + 1
    assert field(3, 2).modulus == 10  # x^2 + 1 (2 is not a square mod 3)


def test_f4_modulus_is_the_unique_irreducible_quadratic():
    # all monic quadratics over GF(2): x^2, x^2+1, x^2+x, x^2+x+1 (encodings 4..7)
    reducible = set()
    for a in range(2):
        for b in range(2):
            # (x+a)(x+b) = x^2 + (a+b)x + ab
            reducible.add(4 + ((a + b) % 2) * 2 + (a * b) % 2)
    assert reducible == {4, 5, 6}
    assert field(2, 2).modulus == 7


def test_construction_errors():
    with pytest.raises(NotPrime):
        field(4, 1)
    with pytest.raises(NotPrime):
        field(1)
    with pytest.raises(FieldTooLarge):
        field(2, 17)
    with pytest.raises(NotIrreducible):
        field(2, 2, modulus=5)  # x^2+1 = (x+1)^2 over GF(2)
    with pytest.raises(NotIrreducible):
        field(2, 2, modulus=19)  # wrong degree


def test_prime_field_arithmetic():
    f2 = field(2)
    assert f2.add(1, 1) == 0
    f5 = field(5)
    assert f5.inv(2) == 3 and (2 * 3) % 5 == 1
    assert f5.neg(2) == 3
    assert f5.sub(1, 3) == 3
    with pytest.raises(DivisionByZero):
        f5.inv(0)


def test_f4_multiplication_against_poly_oracle():
    f4 = field(2, 2)
    assert f4.mul(2, 2) == 3  # x * x = x + 1
    for a in range(4):
        for b in range(4):
            assert f4.mul(a, b) == poly_mulmod(a, b, f4.modulus, 2)


def test_f9_multiplication_against_poly_oracle():
    f9 = field(3, 2)
    for a in range(9):
        for b in range(9):
            assert f9.mul(a, b) == poly_mulmod(a, b, f9.modulus, 3)


ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81, 128, 256]


def _ctx_of_order(q):
    p, e = q, 1
    for base in (2, 3, 5, 7):
        ee = 0
        qq = q
        while qq % base == 0:
            qq //= base
            ee += 1
        if qq == 1 and ee >= 1:
            p, e = base, ee
            break
    return field(p, e)


@pytest.mark.parametrize("q", ORDERS)
def test_field_laws_exhaustive(q):
    ctx = _ctx_of_order(q)
    vals = np.arange(q, dtype=np.int64)
    a = np.repeat(vals, q)
    b = np.tile(vals, q)
    # commutativity
    assert np.array_equal(ctx.add_arr(a, b), ctx.add_arr(b, a))
    assert np.array_equal(ctx.mul_arr(a, b), ctx.mul_arr(b, a))
    # inverses
    nz = vals[1:]
    assert np.all(ctx.mul_arr(nz, ctx.inv_arr(nz)) == 1)
    # associativity and distributivity over all triples, chunked on the first axis
    for x in range(q):
        xa = np.full(q * q, x, dtype=np.int64)
        assert np.array_equal(
            ctx.mul_arr(ctx.mul_arr(xa, a), b), ctx.mul_arr(xa, ctx.mul_arr(a, b))
        )
        assert np.array_equal(
            ctx.add_arr(ctx.add_arr(xa, a), b), ctx.add_arr(xa, ctx.add_arr(a, b))
        )
        assert np.array_equal(
            ctx.mul_arr(xa, ctx.add_arr(a, b)),
            ctx.add_arr(ctx.mul_arr(xa, a), ctx.mul_arr(xa, b)),
        )


@pytest.mark.parametrize("q", ORDERS)
def test_frobenius_is_additive(q):
    ctx = _ctx_of_order(q)
    vals = np.arange(q, dtype=np.int64)
    a = np.repeat(vals, q)
    b = np.tile(vals, q)
    lhs = ctx.frobenius_arr(ctx.add_arr(a, b), 1)  # characteristic power
    rhs = ctx.add_arr(ctx.frobenius_arr(a, 1), ctx.frobenius_arr(b, 1))
    assert np.array_equal(lhs, rhs)


def test_frobenius_base_q_is_identity():
    for p, e in [(2, 1), (2, 2), (2, 3), (3, 2), (5, 1)]:
        ctx = field(p, e)
        for a in range(ctx.q):
            assert ctx.frobenius(a, 1, base=ctx.q) == a


def test_frobenius_examples_and_periodicity():
    f4 = field(2, 2)
    assert f4.frobenius(2, 1, base=2) == 3  # x^2 = x + 1 mod x^2+x+1
    assert f4.frobenius(0, 5, base=2) == 0
    f16 = field(2, 4)
    for a in range(16):
        assert f16.frobenius(a, 4, base=2) == a  # period divides the degree
        assert f16.frobenius(a, 2, base=4) == a
    f81 = field(3, 4)
    for a in range(0, 81, 7):
        assert f81.frobenius(a, 4, base=3) == a
    with pytest.raises(ContextMismatch):
        f16.frobenius(3, 1, base=8)  # 8 = 2^3 does not divide the tower


def test_element_wrapper():
    f5 = field(5)
    a, b = f5.element(2), f5.element(4)
    assert (a + b).value == 1
    assert (a * b).value == 3
    assert (-a).value == 3
    assert (a - b).value == 3
    assert (a / b).value == f5.mul(2, f5.inv(4))
    assert (a ** 4).value == 1
    assert a.inverse().value == 3
    assert a == 2 and a != b
    assert len({a, f5.element(2)}) == 1
    with pytest.raises(ContextMismatch):
        a + field(3).element(1)
    with pytest.raises(DivisionByZero):
        f5.element(0).inverse()


def test_field_spec_parsing():
    assert parse_field_spec("2") == field(2)
    assert parse_field_spec("2^2/7") == field(2, 2)
    assert parse_field_spec("3^2") == field(3, 2)
    for ctx in [field(2), field(2, 2), field(3, 2), field(5)]:
        assert parse_field_spec(ctx.spec) == ctx
    with pytest.raises(FormatError):
        parse_field_spec("banana")
    with pytest.raises(FormatError):
        parse_field_spec("2^x")


def test_context_equality_and_checks():
    assert field(2, 2) == FieldCtx(2, 2, 7)
    assert field(2, 2) != field(2, 3)
    with pytest.raises(ContextMismatch):
        field(2).check_same(field(3))


def test_embedding_into_extension():
    small = field(2, 2)
    big, emb = extension(small, 2)
    assert big == field(2, 4)
    assert emb.embed_int(0) == 0 and emb.embed_int(1) == 1
    # the chosen root really is a root of the small modulus (x^2 + x + 1)
    r = emb.root
    assert big.add(big.add(big.mul(r, r), r), 1) == 0
    # homomorphism on all pairs
    for a in range(4):
        for b in range(4):
            assert emb.embed_int(small.mul(a, b)) == big.mul(emb.embed_int(a), emb.embed_int(b))
            assert emb.embed_int(small.add(a, b)) == big.add(emb.embed_int(a), emb.embed_int(b))


def test_embedding_odd_characteristic():
    small = field(3)
    big, emb = extension(small, 2)
    assert big == field(3, 2)
    for a in range(3):
        for b in range(3):
            assert emb.embed_int(small.mul(a, b)) == big.mul(emb.embed_int(a), emb.embed_int(b))


def test_generator_and_tables():
    for q in (4, 8, 9, 27):
        ctx = _ctx_of_order(q)
        seen = {1}
        x = 1
        for _ in range(q - 2):
            x = ctx.mul(x, ctx.generator)
            seen.add(x)
        assert len(seen) == q - 1  # the generator really generates

"""F_p^2 arithmetic for inert primes: Frobenius, exact orders, order records."""

import random

import pytest

from quadartin.arith import factorize, is_prime, primes_up_to
from quadartin.fp2 import (
    Fp2Context,
    Fp2Elem,
    OrderRecord,
    frobenius,
    mult_order,
    order_record,
    reduce_elem,
)
from quadartin.quadfield import FieldContext, conjugate, is_inert, norm


def inert_primes_under(delta, bound):
    ctx = FieldContext(delta)
    return [
        p for p in primes_up_to(bound)
        if p > 2 and delta % p and is_inert(p, ctx)
    ]


def brute_order(a):
    x = a
    for k in range(1, a.ctx.p**2):
        if x.is_one():
            return k
        x = x * a
    raise AssertionError("no order found")


@pytest.fixture
def c7():
    return Fp2Context.for_prime(7, FieldContext(5))


# ---------------------------------------------------------------------------
# context validation

def test_for_prime_accepts_inert(c7):
    assert c7.p == 7
    assert c7.delta_mod_p == 5
    assert c7.fact_pm1.value == 6
    assert c7.fact_pp1.value == 8
    assert c7.group_primes == (2, 3)


def test_for_prime_rejects_split_ramified_and_two():
    ctx = FieldContext(5)
    with pytest.raises(ValueError):
        Fp2Context.for_prime(11, ctx)  # splits
    with pytest.raises(ValueError):
        Fp2Context.for_prime(5, ctx)  # ramified
    with pytest.raises(ValueError):
        Fp2Context.for_prime(2, ctx)


def test_context_rejects_mismatched_factorizations():
    with pytest.raises(ValueError):
        Fp2Context(7, 5, factorize(8), factorize(8))


def test_elem_range_check(c7):
    with pytest.raises(ValueError):
        Fp2Elem(7, 0, c7)
    with pytest.raises(ValueError):
        Fp2Elem(0, -1, c7)


# ---------------------------------------------------------------------------
# reduction

def test_reduce_examples(c7):
    f5 = FieldContext(5)
    assert reduce_elem(f5.integer(3, 1), c7) == Fp2Elem(3, 1, c7)
    assert reduce_elem(f5.integer(7, 7), c7) == Fp2Elem(0, 0, c7)
    assert reduce_elem(f5.integer(10, 1), c7) == Fp2Elem(3, 1, c7)
    assert reduce_elem(f5.integer(-1, -8), c7) == Fp2Elem(6, 6, c7)


def test_reduce_rejects_non_integral(c7):
    from fractions import Fraction

    a = FieldContext(5).element(Fraction(1, 2), 1)
    with pytest.raises(ValueError):
        reduce_elem(a, c7)


def test_reduce_is_ring_homomorphism(c7):
    f5 = FieldContext(5)
    rng = random.Random(41)
    for _ in range(200):
        a = f5.integer(rng.randrange(-30, 31), rng.randrange(-30, 31))
        b = f5.integer(rng.randrange(-30, 31), rng.randrange(-30, 31))
        assert reduce_elem(a * b, c7) == reduce_elem(a, c7) * reduce_elem(b, c7)


# ---------------------------------------------------------------------------
# multiplication / powers

def test_mul_identity_and_sqrt_square(c7):
    one = Fp2Elem(1, 0, c7)
    s = Fp2Elem(0, 1, c7)
    x = Fp2Elem(3, 4, c7)
    assert one * x == x
    assert s * s == Fp2Elem(5, 0, c7)  # s^2 = delta
    # (3,1) * (3,-1) = norm = 9 - 5 = 4
    assert Fp2Elem(3, 1, c7) * Fp2Elem(3, 6, c7) == Fp2Elem(4, 0, c7)


def test_pow_examples(c7):
    a = Fp2Elem(3, 1, c7)
    assert a**1 == a
    assert a**8 == Fp2Elem(4, 0, c7)  # alpha^(p+1) = N(alpha)
    # group order kills everything
    for c0 in range(7):
        for c1 in range(7):
            x = Fp2Elem(c0, c1, c7)
            if not x.is_zero():
                assert (x**48).is_one()


def test_pow_negative_exponent(c7):
    a = Fp2Elem(3, 1, c7)
    assert a**-1 == a.inverse()
    assert (a**-5) * (a**5) == Fp2Elem(1, 0, c7)


def test_norm_and_inverse(c7):
    a = Fp2Elem(3, 1, c7)
    assert a.norm() == 4
    assert a * a.inverse() == Fp2Elem(1, 0, c7)
    with pytest.raises(ZeroDivisionError):
        Fp2Elem(0, 0, c7).inverse()
    # norm equals the (p+1)-th power, which lands in the prime subfield
    for c0 in range(7):
        for c1 in range(7):
            x = Fp2Elem(c0, c1, c7)
            assert x**8 == Fp2Elem(x.norm(), 0, c7)


# ---------------------------------------------------------------------------
# frobenius

def test_frobenius_examples(c7):
    assert frobenius(Fp2Elem(3, 1, c7)) == Fp2Elem(3, 6, c7)
    assert frobenius(Fp2Elem(4, 0, c7)) == Fp2Elem(4, 0, c7)
    x = Fp2Elem(2, 5, c7)
    assert frobenius(frobenius(x)) == x


def test_frobenius_is_pth_power():
    # the defining identity, across several fields and primes
    for delta in (2, 3, 5, 13):
        field = FieldContext(delta)
        for p in inert_primes_under(delta, 200):
            ctx = Fp2Context.for_prime(p, field)
            rng = random.Random(p * delta)
            for _ in range(10):
                x = Fp2Elem(rng.randrange(p), rng.randrange(p), ctx)
                assert x**p == frobenius(x), (delta, p, x)


def test_frobenius_matches_conjugate():
    f5 = FieldContext(5)
    ctx = Fp2Context.for_prime(17, f5)
    rng = random.Random(99)
    for _ in range(50):
        a = f5.integer(rng.randrange(-40, 41), rng.randrange(-40, 41))
        assert reduce_elem(conjugate(a), ctx) == frobenius(reduce_elem(a, ctx))


# ---------------------------------------------------------------------------
# orders

def test_mult_order_examples(c7):
    assert mult_order(Fp2Elem(1, 0, c7)) == 1
    assert mult_order(Fp2Elem(4, 0, c7)) == 3  # 4, 2, 1 mod 7
    ctx3 = Fp2Context.for_prime(3, FieldContext(2))
    assert mult_order(Fp2Elem(0, 1, ctx3)) == 4  # s^2 = 2, s^4 = 4 = 1
    with pytest.raises(ValueError):
        mult_order(Fp2Elem(0, 0, c7))


def test_mult_order_exhaustive_small_primes():
    # every nonzero element, brute-force oracle
    field = FieldContext(5)
    for p in (3, 7, 13, 17, 23):
        ctx = Fp2Context.for_prime(p, field)
        for c0 in range(p):
            for c1 in range(p):
                x = Fp2Elem(c0, c1, ctx)
                if x.is_zero():
                    continue
                assert mult_order(x) == brute_order(x), (p, c0, c1)


def test_mult_order_sampled_larger_primes():
    field = FieldContext(5)
    for p in (37, 43, 47):
        ctx = Fp2Context.for_prime(p, field)
        rng = random.Random(p)
        for _ in range(60):
            x = Fp2Elem(rng.randrange(p), rng.randrange(p), ctx)
            if x.is_zero():
                continue
            n = mult_order(x)
            assert (x**n).is_one()
            for q in set(factorize(n).primes):
                assert not (x ** (n // q)).is_one(), (p, x, n, q)


def test_order_divides_group_order():
    field = FieldContext(13)
    for p in inert_primes_under(13, 300):
        ctx = Fp2Context.for_prime(p, field)
        rng = random.Random(p)
        for _ in range(20):
            x = Fp2Elem(rng.randrange(p), rng.randrange(p), ctx)
            if x.is_zero():
                continue
            assert (p * p - 1) % mult_order(x) == 0


# ---------------------------------------------------------------------------
# order records

def test_order_record_example_3_plus_sqrt5(c7):
    rec = order_record(FieldContext(5).integer(3, 1), c7)
    assert rec.ord_n == 3
    assert 8 % rec.ord_m == 0
    assert (2 * rec.ord_alpha) % (rec.ord_m * rec.ord_n) == 0
    # brute force over the 48 powers
    a = Fp2Elem(3, 1, c7)
    assert rec.ord_alpha == brute_order(a)
    m = frobenius(a) * a.inverse()
    assert rec.ord_m == brute_order(m)


def test_order_record_rational_element(c7):
    # norm of a rational element is its square, so ord_n is ord_alpha with
    # any factor 2 removed; ord_m collapses to 1
    rec = order_record(FieldContext(5).integer(3, 0), c7)
    assert rec.ord_m == 1
    assert rec.ord_alpha % rec.ord_n == 0
    assert (2 * rec.ord_n) % rec.ord_alpha == 0
    assert (rec.ord_alpha, rec.ord_n) == (6, 3)  # 3 has order 6 mod 7, 9 = 2 has order 3


def test_order_record_sqrt_delta_case():
    ctx3 = Fp2Context.for_prime(3, FieldContext(2))
    rec = order_record(FieldContext(2).integer(0, 1), ctx3)
    assert rec.ord_alpha == 4
    assert rec.ord_n == 1  # norm is -2 = 1 mod 3


def test_order_record_rejects_bad_input(c7):
    f5 = FieldContext(5)
    # for an inert prime, zero norm mod p happens only at zero reduction
    with pytest.raises(ValueError):
        order_record(f5.integer(7, 7), c7)
    with pytest.raises(ValueError):
        order_record(f5.integer(14, 0), c7)
    from fractions import Fraction

    with pytest.raises(ValueError):
        order_record(f5.element(Fraction(1, 2), 1), c7)


def test_order_record_attained_flag():
    field = FieldContext(5)
    for p in (7, 13, 17, 23):
        ctx = Fp2Context.for_prime(p, field)
        rng = random.Random(p + 1)
        for _ in range(30):
            a = field.integer(rng.randrange(-50, 51), rng.randrange(-50, 51))
            c0, c1 = int(a.x) % p, int(a.y) % p
            if (c0 * c0 - ctx.delta_mod_p * c1 * c1) % p == 0:
                continue
            rec = order_record(a, ctx)
            assert rec.attained == (24 * rec.ord_alpha >= p * p - 1)


def test_order_record_invariant_cases():
    # good record passes
    OrderRecord(7, 48, 6, 8, True)
    # ord_alpha must divide p^2 - 1
    with pytest.raises(ValueError):
        OrderRecord(7, 5, 1, 1, False)
    # chain violation: ord_m * ord_n = 36 does not divide 2 * 8 = 16
    with pytest.raises(ValueError):
        OrderRecord(7, 8, 6, 6, False)
    # attained flag must match the threshold comparison
    with pytest.raises(ValueError):
        OrderRecord(7, 48, 6, 8, False)

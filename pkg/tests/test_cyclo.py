import json
import random
from fractions import Fraction
from math import gcd

import pytest

from reflbench import cyclo
from reflbench.cyclo import CycNum, embed_complex, from_json, galois, rational, root_of_unity, to_json


def test_sum_of_cube_roots_is_zero_like():
    # 1 + z3 + z3^2 = 0, so z3 + z3^2 = -1
    assert root_of_unity(3, 1) + root_of_unity(3, 2) == rational(-1)


def test_sqrt_minus_three_squares_to_minus_three():
    s = root_of_unity(3, 1) - root_of_unity(3, 2)
    assert s * s == rational(-3)


def test_zeta4_squared():
    assert root_of_unity(4, 2) == rational(-1)


def test_field_inverse():
    a = rational(2) + root_of_unity(5)
    assert a * a.inverse() == rational(1)


def test_sqrt_minus_three_inverse():
    s = root_of_unity(3, 1) - root_of_unity(3, 2)
    assert (rational(1) / s) * s == rational(1)


def test_order_minimization_on_product():
    assert root_of_unity(8) * root_of_unity(8) == root_of_unity(4)
    z6 = root_of_unity(6)
    assert z6.order == 3  # zeta_6 = 1 + zeta_3 lives in Q(zeta_3)


def test_multiplicative_order_contract():
    for n in (1, 2, 3, 4, 6, 8, 12):
        for k in range(0, n):
            z = root_of_unity(n, k)
            expected = n // gcd(n, k) if k else 1
            p = z
            order = 1
            while p != rational(1):
                p = p * z
                order += 1
                assert order <= n
            assert order == expected


def test_galois_conjugation():
    z3 = root_of_unity(3)
    assert galois(z3, -1) == root_of_unity(3, 2)
    s = z3 - root_of_unity(3, 2)
    assert galois(s, -1) == -s  # conjugate of sqrt(-3)
    a = rational(Fraction(7, 3)) + root_of_unity(8, 3)
    assert galois(a, 1) == a


def test_galois_rejects_noncoprime():
    with pytest.raises(ValueError):
        galois(root_of_unity(8), 2)


def test_galois_composition_and_involution():
    rng = random.Random(1)
    for _ in range(50):
        n = rng.choice([5, 7, 8, 9, 12])
        a = CycNum(n, [Fraction(rng.randint(-3, 3)) for _ in range(cyclo.euler_phi(n))])
        units = [k for k in range(1, n) if gcd(k, n) == 1]
        k1, k2 = rng.choice(units), rng.choice(units)
        m = a.order
        if m == 1:
            continue
        u1 = k1 % m if gcd(k1, m) == 1 else 1
        u2 = k2 % m if gcd(k2, m) == 1 else 1
        assert galois(galois(a, u1), u2) == galois(a, (u1 * u2) % m)
        assert galois(galois(a, -1), -1) == a


def test_embed_floats():
    assert embed_complex(rational(1)) == 1.0 + 0j
    assert abs(embed_complex(root_of_unity(4)) - 1j) < 1e-12
    s = root_of_unity(3) - root_of_unity(3, 2)
    assert abs(embed_complex(s) - 1.7320508075688772j) < 1e-9


def test_field_axioms_random_triples():
    rng = random.Random(42)

    def rand():
        n = rng.choice([1, 3, 4, 5, 8, 12])
        return CycNum(
            n, [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(cyclo.euler_phi(n))]
        )

    for _ in range(300):
        a, b, c = rand(), rand(), rand()
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a and a * b == b * a
        if b:
            assert (a / b) * b == a


def test_division_by_zero_is_distinct_error():
    with pytest.raises(ZeroDivisionError):
        rational(1) / rational(0)


def test_normalization_idempotent():
    a = CycNum(12, [Fraction(1), Fraction(0), Fraction(2), Fraction(0)])
    b = CycNum(a.order, a.coeffs)
    assert a == b and a.order == b.order and a.coeffs == b.coeffs


def test_json_roundtrip_bit_exact():
    values = [
        rational(Fraction(-22, 7)),
        root_of_unity(8, 3) + rational(2),
        root_of_unity(3) - root_of_unity(3, 2),
        cyclo.ZERO,
    ]
    for v in values:
        blob = json.dumps(to_json(v), sort_keys=True)
        again = from_json(json.loads(blob))
        assert again == v
        assert json.dumps(to_json(again), sort_keys=True) == blob


def test_json_rejects_malformed():
    with pytest.raises(ValueError):
        from_json({"order": 5, "coeffs": [["1", "1"]]})  # wrong length


def test_sqrt_rational():
    for q in (2, 3, 5, -1, -3, 12, Fraction(9, 4), Fraction(-27, 2)):
        r = cyclo.sqrt_rational(q)
        assert r * r == rational(q)

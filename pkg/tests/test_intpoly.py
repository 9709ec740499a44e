import random

import pytest

from divflag import intpoly
from divflag.intpoly import (
    ZERO,
    div_rem,
    divides,
    eval_at,
    from_roots,
    gcd_monic,
    linear_roots,
    mul,
    poly,
    sub,
)


def test_div_rem_division_chain():
    f = from_roots([1, 3, 3, 5])
    g = from_roots([1, 3, 3])
    q, r = div_rem(f, g)
    assert q == poly([-5, 1])
    assert r == ZERO


def test_div_rem_with_remainder():
    # long division done by hand: t^3-4t^2+6t-4 = (t-1)(t^2-3t+3) - 1
    f = poly([-4, 6, -4, 1])
    g = poly([3, -3, 1])
    q, r = div_rem(f, g)
    assert q == poly([-1, 1])
    assert r == poly([-1])


def test_div_rem_self():
    f = poly([2, 0, 1])
    q, r = div_rem(f, f)
    assert q == poly([1])
    assert r == ZERO


def test_div_rem_nonmonic_rejected():
    with pytest.raises(ValueError):
        div_rem(poly([1, 1]), poly([1, 2]))


def test_div_rem_by_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        div_rem(poly([1, 1]), ZERO)


def test_reconstruction_property():
    rng = random.Random(5)
    for _ in range(200):
        f = poly([rng.randint(-6, 6) for _ in range(rng.randint(0, 6))])
        g_body = [rng.randint(-4, 4) for _ in range(rng.randint(0, 4))]
        g = poly(g_body + [1])
        q, r = div_rem(f, g)
        assert intpoly.add(mul(q, g), r) == f
        assert intpoly.degree(r) < intpoly.degree(g)


def test_divides_cases():
    assert divides(from_roots([1, 3]), from_roots([1, 3, 3]))
    assert not divides(mul(poly([-1, 1]), poly([3, -3, 1])),
                       mul(poly([-1, 1]), poly([-4, 6, -4, 1])))
    assert divides(poly([1]), from_roots([2, 7]))


def test_mutual_division_forces_equality():
    rng = random.Random(17)
    for _ in range(50):
        f = from_roots([rng.randint(0, 4) for _ in range(rng.randint(0, 4))])
        g = from_roots([rng.randint(0, 4) for _ in range(rng.randint(0, 4))])
        if divides(f, g) and divides(g, f):
            assert f == g


def test_linear_roots_splits():
    assert linear_roots(from_roots([1, 3, 3, 5])) == (1, 3, 3, 5)
    assert linear_roots(poly([0, 0, 1])) == (0, 0)
    assert linear_roots(poly([1])) == ()


def test_linear_roots_not_split():
    # has the single integer root 2 but does not split completely
    assert linear_roots(poly([-4, 6, -4, 1])) is None
    assert linear_roots(poly([1, 0, 1])) is None


def test_linear_roots_random_multisets():
    rng = random.Random(23)
    for _ in range(100):
        roots = sorted(rng.randint(0, 6) for _ in range(rng.randint(0, 5)))
        assert linear_roots(from_roots(roots)) == tuple(roots)


def test_linear_roots_negative():
    assert linear_roots(from_roots([-2, 3])) == (-2, 3)


def test_eval_and_sub():
    f = from_roots([1, 3])
    assert eval_at(f, 7) == 6 * 4
    assert sub(f, f) == ZERO


def test_gcd_monic():
    f = from_roots([1, 3, 5])
    g = from_roots([1, 3, 7])
    assert gcd_monic(f, g) == from_roots([1, 3])
    assert gcd_monic(f, from_roots([2])) == poly([1])

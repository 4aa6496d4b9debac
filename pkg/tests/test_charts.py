"""Superfunction algebra: products, partials, parity, body evaluation."""

import random
from fractions import Fraction

import pytest

from lambdageo.charts import (
    Chart,
    ChartMismatch,
    SuperFunction,
    eval_body,
    multiply,
    parse_superfunction,
    partial_even,
    partial_odd,
)
from lambdageo.grassmann import LambdaElement

CH = Chart(n=2, m=3, lambda_gens=4, max_x_degree=8)


def rand_superfunction(rng, chart=CH, terms=4):
    out = chart.zero()
    for _ in range(terms):
        mask = rng.randrange(1 << chart.m)
        exp = tuple(rng.randint(0, 2) for _ in range(chart.n))
        lam_mask = rng.randrange(1 << chart.lambda_gens)
        coef = LambdaElement(
            chart.lambda_gens, {lam_mask: Fraction(rng.randint(-4, 4), rng.randint(1, 3))}
        )
        out = out + SuperFunction(chart, {(mask, exp): coef})
    return out


def rand_homogeneous(rng, bit, chart=CH):
    f = rand_superfunction(rng, chart)
    fe, fo = f.parity_parts()
    return fe if bit == 0 else fo


def test_theta_squares_to_zero():
    th1 = CH.theta(1)
    assert multiply(th1, th1).is_zero()


def test_theta_anticommute():
    th1, th2 = CH.theta(1), CH.theta(2)
    assert multiply(th2, th1) == -multiply(th1, th2)


def test_lambda_past_theta_sign():
    # (eta1 th1) * (eta2 th2) carries the Koszul sign of eta2 passing th1
    f = CH.lam(1) * CH.theta(1)
    g = CH.lam(2) * CH.theta(2)
    expected = -((CH.lam(1) * CH.lam(2)) * (CH.theta(1) * CH.theta(2)))
    assert multiply(f, g) == expected


def test_partial_odd_examples():
    th1, th2 = CH.theta(1), CH.theta(2)
    th12 = th1 * th2
    assert partial_odd(th12, 1) == th2
    assert partial_odd(th12, 2) == -th1


def test_partial_even_example():
    f = CH.x(1) * CH.x(2) * CH.theta(1)
    assert partial_even(f, 1) == CH.x(2) * CH.theta(1)


def test_partial_commutes_even_even():
    rng = random.Random(0)
    f = rand_superfunction(rng)
    assert partial_even(partial_even(f, 1), 2) == partial_even(partial_even(f, 2), 1)


def test_partial_odd_anticommute():
    rng = random.Random(1)
    f = rand_superfunction(rng)
    a = partial_odd(partial_odd(f, 1), 2)
    b = partial_odd(partial_odd(f, 2), 1)
    assert a == -b
    assert partial_odd(partial_odd(f, 1), 1).is_zero()


def test_graded_commutativity():
    rng = random.Random(2)
    for _ in range(100):
        pf, pg = rng.randint(0, 1), rng.randint(0, 1)
        f, g = rand_homogeneous(rng, pf), rand_homogeneous(rng, pg)
        fg = multiply(f, g)
        gf = multiply(g, f)
        assert fg == (gf.scale(-1) if pf * pg else gf)


def test_associativity():
    rng = random.Random(3)
    for _ in range(60):
        f, g, h = (rand_superfunction(rng, terms=3) for _ in range(3))
        assert multiply(multiply(f, g), h) == multiply(f, multiply(g, h))


def test_odd_leibniz():
    rng = random.Random(4)
    for _ in range(100):
        pf = rng.randint(0, 1)
        f = rand_homogeneous(rng, pf)
        g = rand_superfunction(rng)
        lhs = partial_odd(multiply(f, g), 2)
        rhs = multiply(partial_odd(f, 2), g) + multiply(f, partial_odd(g, 2)).scale(
            -1 if pf else 1
        )
        assert lhs == rhs


def test_eval_body_is_homomorphism():
    rng = random.Random(5)
    for _ in range(60):
        f, g = rand_superfunction(rng), rand_superfunction(rng)
        assert eval_body(multiply(f, g)) == multiply(eval_body(f), eval_body(g))


def test_eval_body_examples():
    f = CH.x(1) + CH.x(2) * CH.theta(1) * CH.theta(2)
    assert eval_body(f) == CH.x(1)
    assert eval_body(CH.theta(1)).is_zero()


def test_parity_classification():
    assert CH.x(1).parity() == "even"
    assert CH.theta(1).parity() == "odd"
    assert (CH.lam(1) * CH.theta(1)).parity() == "even"
    assert CH.lam(1).parity() == "odd"
    assert (CH.x(1) + CH.theta(1)).parity() == "mixed"
    assert CH.zero().parity() == "even"


def test_parity_parts_recombine():
    rng = random.Random(6)
    for _ in range(40):
        f = rand_superfunction(rng)
        fe, fo = f.parity_parts()
        assert fe + fo == f
        assert fe.parity_bit() in (0, None) and fe.parity() != "odd"


def test_truncation_flag_sticky():
    small = Chart(n=1, m=0, lambda_gens=0, max_x_degree=3)
    x = small.x(1)
    x2 = multiply(x, x)
    assert not x2.truncated
    x4 = multiply(x2, x2)
    assert x4.truncated and x4.is_zero()
    assert (x4 + small.one()).truncated


def test_chart_mismatch_rejected():
    other = Chart(n=2, m=3, lambda_gens=5)
    with pytest.raises(ChartMismatch):
        multiply(CH.one(), other.one())


def test_serialize_roundtrip():
    rng = random.Random(7)
    for _ in range(40):
        f = rand_superfunction(rng)
        assert parse_superfunction(CH, f.serialize()) == f


def test_subs_x():
    f = CH.x(1) * CH.x(1) + CH.x(2) * CH.theta(1)
    g = f.subs_x([Fraction(3), Fraction(-2)])
    assert g == CH.const(9) + CH.theta(1).scale(-2)

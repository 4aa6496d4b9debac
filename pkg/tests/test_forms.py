"""Forms: wedge, exterior differential, interior product, evaluation."""

import random

from helpers import brute_evaluate, rand_field, rand_form, rand_homogeneous

from lambdageo.charts import Chart
from lambdageo.forms import (
    SuperForm,
    exterior_d,
    interior,
    wedge_forms,
)
from lambdageo.vectorfields import SuperVectorField

CH = Chart(n=2, m=2, lambda_gens=3, max_x_degree=8)


def dx(i):
    return SuperForm.coordinate_differential(CH, i - 1)


def dth(a):
    return SuperForm.coordinate_differential(CH, CH.n + a - 1)


def test_differential_pairing_rule():
    # df(X) = (-1)^{|X||f|} X.f
    rng = random.Random(30)
    for _ in range(40):
        pf, px = rng.randint(0, 1), rng.randint(0, 1)
        f = rand_homogeneous(rng, pf, CH)
        X = rand_field(rng, px, CH)
        df = exterior_d(SuperForm.from_function(f, pf))
        lhs = df.evaluate([X])
        rhs = X.apply(f)
        if pf and px:
            rhs = -rhs
        assert lhs == rhs


def test_dx_on_dx_basis():
    assert dx(1).evaluate([SuperVectorField.d_dx(CH, 1)]) == CH.one()
    assert dx(1).evaluate([SuperVectorField.d_dx(CH, 2)]).is_zero()


def test_d_squared_zero_on_functions():
    rng = random.Random(31)
    for _ in range(60):
        f = rand_homogeneous(rng, rng.randint(0, 1), CH)
        form = SuperForm.from_function(f, f.parity_bit() if f else 0)
        assert exterior_d(exterior_d(form)).is_zero()


def test_d_squared_zero_on_one_forms():
    rng = random.Random(32)
    for _ in range(60):
        w = rand_form(rng, CH, 1, rng.randint(0, 1))
        assert exterior_d(exterior_d(w)).is_zero()


def test_d_squared_zero_on_two_forms():
    rng = random.Random(33)
    for _ in range(30):
        w = rand_form(rng, CH, 2, rng.randint(0, 1))
        assert exterior_d(exterior_d(w)).is_zero()


def test_d_theta_twice():
    assert exterior_d(dth(1)).is_zero()


def test_leibniz_on_wedge():
    rng = random.Random(34)
    for _ in range(25):
        q, qp = rng.randint(0, 2), rng.randint(0, 2)
        w = rand_form(rng, CH, q, rng.randint(0, 1), n_components=2)
        v = rand_form(rng, CH, qp, rng.randint(0, 1), n_components=2)
        lhs = exterior_d(wedge_forms(w, v))
        rhs = wedge_forms(exterior_d(w), v)
        second = wedge_forms(w, exterior_d(v))
        rhs = rhs + (second.scale(-1) if q & 1 else second)
        assert lhs == rhs


def test_wedge_graded_commutativity():
    rng = random.Random(35)
    for _ in range(25):
        q, qp = rng.randint(0, 2), rng.randint(0, 2)
        pw, pv = rng.randint(0, 1), rng.randint(0, 1)
        w = rand_form(rng, CH, q, pw, n_components=2)
        v = rand_form(rng, CH, qp, pv, n_components=2)
        lhs = wedge_forms(w, v)
        rhs = wedge_forms(v, w)
        sign = -1 if (q * qp + pw * pv) & 1 else 1
        assert lhs == (rhs if sign > 0 else -rhs)


def test_wedge_associativity():
    rng = random.Random(36)
    for _ in range(15):
        w = rand_form(rng, CH, 1, rng.randint(0, 1), n_components=2)
        v = rand_form(rng, CH, 1, rng.randint(0, 1), n_components=2)
        u = rand_form(rng, CH, 1, rng.randint(0, 1), n_components=2)
        assert wedge_forms(wedge_forms(w, v), u) == wedge_forms(w, wedge_forms(v, u))


def test_interior_definition():
    # i_X w(Y1, ..) = w(X, Y1, ..), against the brute-force evaluator
    rng = random.Random(37)
    for _ in range(25):
        w = rand_form(rng, CH, 2, rng.randint(0, 1), n_components=2)
        X = rand_field(rng, rng.randint(0, 1), CH)
        Y = rand_field(rng, rng.randint(0, 1), CH)
        assert interior(X, w).evaluate([Y]) == brute_evaluate(w, [X, Y])


def test_interior_example_sign_fixed():
    # i_{d/dth1}(dth1 ^ dth2) pinned against the brute-force evaluator
    w = wedge_forms(dth(1), dth(2))
    got = interior(SuperVectorField.d_dth(CH, 1), w)
    for b in range(CH.dim):
        want = brute_evaluate(
            w, [SuperVectorField.d_dth(CH, 1), SuperVectorField.coordinate(CH, b)]
        )
        assert got.evaluate([SuperVectorField.coordinate(CH, b)]) == want
    # and the value itself: dth1^dth2 (dth_1-slot, dth_2-slot) contraction
    assert got.component((CH.n + 1,)) == CH.one() or got.component(
        (CH.n + 1,)
    ) == -CH.one()


def test_evaluation_matches_brute_force():
    rng = random.Random(38)
    for _ in range(20):
        q = rng.randint(1, 3)
        w = rand_form(rng, CH, q, rng.randint(0, 1), n_components=2)
        fields = [rand_field(rng, rng.randint(0, 1), CH, terms=2) for _ in range(q)]
        assert w.evaluate(fields) == brute_evaluate(w, fields)


def test_evaluation_graded_skew():
    rng = random.Random(39)
    for _ in range(25):
        w = rand_form(rng, CH, 2, rng.randint(0, 1), n_components=2)
        px, py = rng.randint(0, 1), rng.randint(0, 1)
        X = rand_field(rng, px, CH, terms=2)
        Y = rand_field(rng, py, CH, terms=2)
        lhs = w.evaluate([X, Y])
        rhs = w.evaluate([Y, X])
        sign = 1 if px and py else -1
        assert lhs == (rhs if sign > 0 else -rhs)


def test_evaluation_function_linearity():
    rng = random.Random(40)
    for _ in range(25):
        pw = rng.randint(0, 1)
        w = rand_form(rng, CH, 2, pw, n_components=2)
        pf, px, py = (rng.randint(0, 1) for _ in range(3))
        f = rand_homogeneous(rng, pf, CH, terms=2)
        X = rand_field(rng, px, CH, terms=2)
        Y = rand_field(rng, py, CH, terms=2)
        lhs = w.evaluate([f * X, Y])
        rhs = f * w.evaluate([X, Y])
        if pf and pw:
            rhs = -rhs
        assert lhs == rhs

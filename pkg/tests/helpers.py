"""Shared random generators for the test suite (all seeded, all exact)."""

from fractions import Fraction

from lambdageo.charts import Chart, SuperFunction
from lambdageo.grassmann import LambdaElement
from lambdageo.vectorfields import SuperVectorField


def rand_lambda(rng, n_gen, terms=3):
    out = {}
    for _ in range(terms):
        mask = rng.randrange(1 << n_gen)
        out[mask] = Fraction(rng.randint(-6, 6), rng.randint(1, 5))
    return LambdaElement(n_gen, out)


def rand_superfunction(rng, chart, terms=4, max_exp=2):
    out = chart.zero()
    for _ in range(terms):
        mask = rng.randrange(1 << chart.m)
        exp = tuple(rng.randint(0, max_exp) for _ in range(chart.n))
        lam_mask = rng.randrange(1 << chart.lambda_gens) if chart.lambda_gens else 0
        coef = LambdaElement(
            chart.lambda_gens,
            {lam_mask: Fraction(rng.randint(-4, 4), rng.randint(1, 3))},
        )
        out = out + SuperFunction(chart, {(mask, exp): coef})
    return out


def rand_homogeneous(rng, bit, chart, terms=4, max_exp=2):
    f = rand_superfunction(rng, chart, terms, max_exp)
    fe, fo = f.parity_parts()
    return fe if bit == 0 else fo


def rand_field(rng, bit, chart, terms=3, max_exp=2):
    """Random homogeneous supervector field of the requested parity."""
    comps = []
    for a in range(chart.dim):
        want = (bit + chart.coord_parity(a)) & 1
        comps.append(rand_homogeneous(rng, want, chart, terms, max_exp))
    return SuperVectorField(chart, comps)


def rand_form(rng, chart, degree, parity_bit, n_components=3, terms=2, max_exp=2):
    """Random homogeneous q-form with the requested intrinsic parity."""
    from lambdageo.forms import SuperForm, canonical_tuples

    keys = list(canonical_tuples(chart, degree, range(chart.dim)))
    comps = {}
    for _ in range(n_components):
        key = keys[rng.randrange(len(keys))]
        want = (parity_bit + sum(chart.coord_parity(a) for a in key)) & 1
        f = rand_homogeneous(rng, want, chart, terms, max_exp)
        if f.is_zero():
            continue
        comps[key] = comps.get(key, chart.zero()) + f
    comps = {k: v for k, v in comps.items() if not v.is_zero()}
    return SuperForm(chart, degree, parity_bit, comps)


def brute_evaluate(w, fields):
    """Independent multilinear expansion of a form on homogeneous fields.

    Pulls component functions out slot by slot; slot k costs the Koszul factor
    of its coefficient passing the form and the earlier contraction slots.
    """
    import itertools as _it

    chart = w.chart
    total = chart.zero()
    for ids in _it.product(range(chart.dim), repeat=w.degree):
        comp = w.component(ids)
        if comp.is_zero():
            continue
        prod = chart.one()
        sign_exp_prefix = w.parity_bit
        ok = True
        for k, a in enumerate(ids):
            coeff = fields[k].components[a]
            if coeff.is_zero():
                ok = False
                break
            ce, co = coeff.parity_parts()
            adjusted = ce + (co.scale(-1) if sign_exp_prefix & 1 else co)
            prod = prod * adjusted
            sign_exp_prefix += chart.coord_parity(a)
        if not ok:
            continue
        total = total + prod * comp
    return total

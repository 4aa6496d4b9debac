"""Differential forms on a chart, in graded-skew component form.

A q-form of parity p is stored through its components on coordinate frames,

    w[a_1, ..., a_q] = w(d_{a_1}, ..., d_{a_q}),

keyed by canonical index tuples: non-decreasing coordinate ids, where a
repeated even id forces a zero component while repeated odd ids are allowed
(swapping two odd arguments of a graded-skew tensor is symmetric, so there is
no top degree in the odd directions).  All other components are reconstructed
through the transport sign of the reordering.

The exterior differential acts on components as the alternating sum of
coordinate partials with Koszul factors; it is the unique bidegree-(1, 0)
derivation extending the differential on superfunctions, for which
df(X) = (-1)^{|X||f|} X.f, and it squares to zero (enforced by the test
suite, which is the arbiter for all sign conventions here).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Mapping, Sequence

from .charts import Chart, ChartMismatch, SuperFunction, partial
from .vectorfields import SuperVectorField

Idx = tuple


def transport_sign(order: Sequence[int], parities: Sequence[int]) -> int:
    """Graded-skew reordering factor.

    ``order`` lists original argument slots in their new sequence; each
    inverted pair (u before v with u > v) contributes -(-1)^{p_u p_v}.
    ``parities`` is indexed by original slot.
    """
    sign = 1
    q = len(order)
    for i in range(q):
        for j in range(i + 1, q):
            if order[i] > order[j]:
                if not (parities[order[i]] and parities[order[j]]):
                    sign = -sign
    return sign


def canonicalize(chart: Chart, idx: Sequence[int]):
    """Return (sign, canonical tuple) or None when the component must vanish.

    Sorts the coordinate ids; every adjacent swap contributes the graded-skew
    factor.  A repeated even id kills the component.
    """
    ids = list(idx)
    sign = 1
    # insertion sort, tracking adjacent-swap signs
    for i in range(1, len(ids)):
        j = i
        while j > 0 and ids[j - 1] > ids[j]:
            pa = chart.coord_parity(ids[j - 1])
            pb = chart.coord_parity(ids[j])
            if not (pa and pb):
                sign = -sign
            ids[j - 1], ids[j] = ids[j], ids[j - 1]
            j -= 1
    for a, b in zip(ids, ids[1:]):
        if a == b and chart.coord_parity(a) == 0:
            return None
    return sign, tuple(ids)


class SuperForm:
    """Homogeneous (degree, parity) graded-skew covariant tensor."""

    __slots__ = ("chart", "degree", "parity_bit", "components")

    def __init__(
        self,
        chart: Chart,
        degree: int,
        parity_bit: int,
        components: Mapping[Idx, SuperFunction] | None = None,
    ):
        if degree < 0:
            raise ValueError("negative form degree")
        if parity_bit not in (0, 1):
            raise ValueError("parity bit must be 0 or 1")
        self.chart = chart
        self.degree = degree
        self.parity_bit = parity_bit
        comps: dict[Idx, SuperFunction] = {}
        if components:
            for idx, f in components.items():
                if len(idx) != degree:
                    raise ValueError(f"index tuple {idx} has wrong length")
                if f.is_zero():
                    continue
                canon = canonicalize(chart, idx)
                if canon is None:
                    raise ValueError(f"component {idx} must vanish (repeated even id)")
                sign, key = canon
                if key != tuple(idx):
                    raise ValueError(f"component key {idx} is not canonical")
                want = (parity_bit + sum(chart.coord_parity(a) for a in idx)) & 1
                got = f.parity_bit()
                if got is not None and got != want:
                    raise ValueError(
                        f"component {idx} has parity {got}, expected {want}"
                    )
                if got is None:
                    raise ValueError(f"component {idx} has mixed parity")
                comps[key] = f
        self.components = comps

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, chart: Chart, degree: int, parity_bit: int = 0) -> "SuperForm":
        return cls(chart, degree, parity_bit)

    @classmethod
    def from_function(cls, f: SuperFunction, parity_bit=None) -> "SuperForm":
        bit = f.parity_bit() if parity_bit is None else parity_bit
        if bit is None:
            raise ValueError("mixed-parity superfunction; split it first")
        if f.is_zero():
            return cls(f.chart, 0, bit)
        return cls(f.chart, 0, bit, {(): f})

    @classmethod
    def coordinate_differential(cls, chart: Chart, coord_id: int) -> "SuperForm":
        """d(xi^a) as a 1-form; see the sign rule in exterior_d."""
        return exterior_d(cls.from_function(_coordinate_function(chart, coord_id)))

    def component(self, idx: Sequence[int]) -> SuperFunction:
        """Component on an arbitrary (not necessarily canonical) index tuple."""
        canon = canonicalize(self.chart, idx)
        if canon is None:
            return self.chart.zero()
        sign, key = canon
        f = self.components.get(key)
        if f is None:
            return self.chart.zero()
        return f.scale(sign)

    # -- linear structure -------------------------------------------------------

    def _check(self, other: "SuperForm") -> None:
        if self.chart != other.chart:
            raise ChartMismatch("forms on different charts")
        if self.degree != other.degree:
            raise ValueError("form degrees differ")
        if self.parity_bit != other.parity_bit and self.components and other.components:
            raise ValueError("form parities differ")

    def __add__(self, other):
        if not isinstance(other, SuperForm):
            return NotImplemented
        self._check(other)
        comps = dict(self.components)
        for key, f in other.components.items():
            s = comps.get(key)
            s = f if s is None else s + f
            if s.is_zero():
                comps.pop(key, None)
            else:
                comps[key] = s
        bit = self.parity_bit if self.components else other.parity_bit
        return SuperForm(self.chart, self.degree, bit, comps)

    def __neg__(self):
        return SuperForm(
            self.chart,
            self.degree,
            self.parity_bit,
            {k: -f for k, f in self.components.items()},
        )

    def __sub__(self, other):
        if not isinstance(other, SuperForm):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "SuperForm":
        return SuperForm(
            self.chart,
            self.degree,
            self.parity_bit,
            {k: f.scale(c) for k, f in self.components.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, SuperForm):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.degree == other.degree
            and self.components == other.components
            and (self.parity_bit == other.parity_bit or not self.components)
        )

    def __hash__(self):
        return hash((self.chart, self.degree, frozenset(self.components.items())))

    def is_zero(self) -> bool:
        return not self.components

    def __repr__(self):
        if not self.components:
            return f"0 ({self.degree}-form)"
        names = self.chart.coord_name
        parts = [
            "[" + ",".join(names(a) for a in key) + "]: " + repr(f)
            for key, f in sorted(self.components.items())
        ]
        return "{" + "; ".join(parts) + "}"

    # -- evaluation ---------------------------------------------------------

    def interior(self, X: SuperVectorField) -> "SuperForm":
        return interior(X, self)

    def evaluate(self, fields: Sequence[SuperVectorField]) -> SuperFunction:
        """Full evaluation w(X_1, ..., X_q) by iterated interior products."""
        if len(fields) != self.degree:
            raise ValueError("argument count does not match form degree")
        form = self
        for X in fields:
            form = interior(X, form)
        return form.components.get((), self.chart.zero())

    def eval_body_on(self, coord_ids: Sequence[int]) -> SuperFunction:
        """Component on coordinate directions, with all thetas set to zero."""
        return self.component(coord_ids).eval_body()


def _coordinate_function(chart: Chart, coord_id: int) -> SuperFunction:
    if coord_id < chart.n:
        return chart.x(coord_id + 1)
    return chart.theta(coord_id - chart.n + 1)


def interior(X: SuperVectorField, w: SuperForm) -> SuperForm:
    """Interior product i_X w(Y_1, ..) = w(X, Y_1, ..).

    Pulling the component function X^a out of the first slot costs the Koszul
    factor (-1)^{|X^a| |w|}.
    """
    if X.chart != w.chart:
        raise ChartMismatch("field and form on different charts")
    if w.degree == 0:
        raise ValueError("interior product of a 0-form")
    chart = w.chart
    xb = X.parity_bit()
    if xb is None:
        xe, xo = X.parity_parts()
        return interior(xe, w) + interior(xo, w)
    out: dict[Idx, SuperFunction] = {}
    for key in _contraction_keys(chart, w):
        total = chart.zero()
        for a in range(chart.dim):
            comp = X.components[a]
            if comp.is_zero():
                continue
            src = w.component((a,) + key)
            if src.is_zero():
                continue
            ce, co = comp.parity_parts()
            factor = ce + (co.scale(-1) if w.parity_bit else co)
            total = total + factor * src
        if not total.is_zero():
            out[key] = total
    bit = (w.parity_bit + xb) & 1
    return SuperForm(chart, w.degree - 1, bit, out)


def _contraction_keys(chart: Chart, w: SuperForm):
    """All canonical (q-1)-tuples obtainable by dropping one slot of a key."""
    seen = set()
    for key in w.components:
        for k in range(len(key)):
            rest = key[:k] + key[k + 1 :]
            canon = canonicalize(chart, rest)
            if canon is None:
                continue
            seen.add(canon[1])
    return seen


def wedge_forms(w: SuperForm, v: SuperForm) -> "SuperForm":
    """Wedge product via the super-shuffle formula.

    (w ^ v)(Y_1..Y_{q+q'}) sums over position subsets S of size q the product
    w(Y_S) v(Y_Sc) with the reordering transport sign and the Koszul factor of
    v passing the Y_S block.
    """
    if w.chart != v.chart:
        raise ChartMismatch("forms on different charts")
    chart = w.chart
    q, qp = w.degree, v.degree
    bit = (w.parity_bit + v.parity_bit) & 1
    if w.is_zero() or v.is_zero():
        return SuperForm.zero(chart, q + qp, bit)
    targets = set()
    for ik in w.components:
        for jk in v.components:
            canon = canonicalize(chart, ik + jk)
            if canon is not None:
                targets.add(canon[1])
    out: dict[Idx, SuperFunction] = {}
    positions = range(q + qp)
    for J in targets:
        parities = [chart.coord_parity(a) for a in J]
        total = chart.zero()
        for S in itertools.combinations(positions, q):
            Sc = tuple(p for p in positions if p not in S)
            order = list(S) + list(Sc)
            sign = transport_sign(order, parities)
            # Koszul: v (parity |v|) passes the arguments in slots S
            if v.parity_bit and sum(parities[p] for p in S) & 1:
                sign = -sign
            left = w.component(tuple(J[p] for p in S))
            if left.is_zero():
                continue
            right = v.component(tuple(J[p] for p in Sc))
            if right.is_zero():
                continue
            term = (left * right).scale(sign)
            total = total + term
        if not total.is_zero():
            out[J] = total
    return SuperForm(chart, q + qp, bit, out)


def exterior_d(w: SuperForm) -> SuperForm:
    """Exterior differential in components.

    (dw)_{a_0..a_q} = sum_k (-1)^k (-1)^{|a_k| (|w| + |a_0| + .. + |a_{k-1}|)}
                      d_{a_k} ( w_{a_0 .. ^a_k .. a_q} ).

    On superfunctions this is df(X) = (-1)^{|X||f|} X.f; d^2 = 0 follows from
    graded symmetry of second partials.
    """
    chart = w.chart
    targets = set()
    for key, f in w.components.items():
        for b in _dependency_coords(f):
            canon = canonicalize(chart, (b,) + key)
            if canon is not None:
                targets.add(canon[1])
    out: dict[Idx, SuperFunction] = {}
    for J in targets:
        parities = [chart.coord_parity(a) for a in J]
        total = chart.zero()
        prefix = 0  # parity sum |a_0| + ... + |a_{k-1}|
        for k in range(len(J)):
            rest = J[:k] + J[k + 1 :]
            src = w.component(rest)
            if not src.is_zero():
                df = partial(src, J[k])
                if not df.is_zero():
                    sign = -1 if k & 1 else 1
                    if parities[k] and (w.parity_bit + prefix) & 1:
                        sign = -sign
                    total = total + df.scale(sign)
            prefix += parities[k]
        if not total.is_zero():
            out[J] = total
    return SuperForm(chart, w.degree + 1, w.parity_bit, out)


def _dependency_coords(f: SuperFunction):
    """Coordinate ids the superfunction actually depends on."""
    chart = f.chart
    deps = set()
    for (mask, exp) in f.terms:
        for i, k in enumerate(exp):
            if k:
                deps.add(i)
        a = 0
        while mask:
            if mask & 1:
                deps.add(chart.n + a)
            mask >>= 1
            a += 1
    return deps


def form_from_frame_evaluations(
    chart: Chart,
    degree: int,
    parity_bit: int,
    evaluator,
    coords: Sequence[int] | None = None,
) -> SuperForm:
    """Build a form from a callable on coordinate index tuples.

    ``evaluator(idx)`` must return the component superfunction on the
    coordinate directions ``idx`` (a canonical tuple).  Used to materialize
    forms defined by evaluation formulas.
    """
    ids = list(coords) if coords is not None else list(range(chart.dim))
    comps: dict[Idx, SuperFunction] = {}
    for key in canonical_tuples(chart, degree, ids):
        val = evaluator(key)
        if val is not None and not val.is_zero():
            comps[key] = val
    return SuperForm(chart, degree, parity_bit, comps)


def canonical_tuples(chart: Chart, degree: int, ids: Sequence[int]):
    """Canonical index tuples of the given length over a coordinate id pool."""
    ids = sorted(ids)

    def rec(start, left):
        if left == 0:
            yield ()
            return
        for pos in range(start, len(ids)):
            a = ids[pos]
            nxt = pos if chart.coord_parity(a) else pos + 1
            for tail in rec(nxt, left - 1):
                yield (a,) + tail

    yield from rec(0, degree)

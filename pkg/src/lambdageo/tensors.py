"""General tensor fields in coordinate components and Lie derivatives.

Covers types (0, q) and (1, q), which is what the flow/transport machinery
and the gravity-field checks consume.  Components are stored on full ordered
index tuples; declared graded symmetry or skew-symmetry is validated rather
than used for storage.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .charts import Chart, ChartMismatch, SuperFunction, partial
from .forms import SuperForm
from .vectorfields import SuperVectorField, graded_bracket

Idx = tuple


class SuperTensor:
    """Tensor of type (p, q) with p in {0, 1}, homogeneous parity.

    Keys are (upper, lowers) with upper None for p = 0; lowers is an ordered
    coordinate id tuple of length q.
    """

    __slots__ = ("chart", "p", "q", "parity_bit", "components", "symmetry")

    def __init__(
        self,
        chart: Chart,
        p: int,
        q: int,
        parity_bit: int,
        components: Mapping | None = None,
        symmetry: str = "none",
    ):
        if p not in (0, 1):
            raise ValueError("only tensor types (0,q) and (1,q) are supported")
        if symmetry not in ("none", "sym", "skew"):
            raise ValueError(f"unknown symmetry flag {symmetry!r}")
        self.chart = chart
        self.p = p
        self.q = q
        self.parity_bit = parity_bit
        comps: dict = {}
        if components:
            for (upper, lowers), f in components.items():
                if (upper is None) != (p == 0):
                    raise ValueError("upper index does not match tensor type")
                if len(lowers) != q:
                    raise ValueError("lower index tuple has wrong length")
                if f.is_zero():
                    continue
                want = parity_bit
                if upper is not None:
                    want ^= chart.coord_parity(upper)
                for a in lowers:
                    want ^= chart.coord_parity(a)
                got = f.parity_bit()
                if got is not None and got != want:
                    raise ValueError(
                        f"component {(upper, lowers)} parity {got}, expected {want}"
                    )
                comps[(upper, tuple(lowers))] = f
        self.components = comps
        self.symmetry = symmetry
        if symmetry != "none":
            self._validate_symmetry()

    def _validate_symmetry(self) -> None:
        # sym:  T(..X,Y..) =  (-1)^{|X||Y|} T(..Y,X..)
        # skew: T(..X,Y..) = -(-1)^{|X||Y|} T(..Y,X..)
        flip = 1 if self.symmetry == "sym" else -1
        for (upper, lowers), f in self.components.items():
            for k in range(self.q - 1):
                a, b = lowers[k], lowers[k + 1]
                swapped = lowers[:k] + (b, a) + lowers[k + 2 :]
                koszul = -1 if self.chart.coord_parity(a) and self.chart.coord_parity(b) else 1
                if f != self.component(upper, swapped).scale(flip * koszul):
                    raise ValueError("declared symmetry violated")

    def component(self, upper, lowers) -> SuperFunction:
        return self.components.get(
            (upper, tuple(lowers)), self.chart.zero()
        )

    def __add__(self, other):
        if not isinstance(other, SuperTensor):
            return NotImplemented
        if (self.chart, self.p, self.q) != (other.chart, other.p, other.q):
            raise ValueError("tensor shapes differ")
        comps = dict(self.components)
        for key, f in other.components.items():
            s = comps.get(key)
            s = f if s is None else s + f
            if s.is_zero():
                comps.pop(key, None)
            else:
                comps[key] = s
        return SuperTensor(self.chart, self.p, self.q, self.parity_bit, comps)

    def __neg__(self):
        return SuperTensor(
            self.chart,
            self.p,
            self.q,
            self.parity_bit,
            {k: -f for k, f in self.components.items()},
        )

    def __sub__(self, other):
        if not isinstance(other, SuperTensor):
            return NotImplemented
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, SuperTensor):
            return NotImplemented
        return (
            (self.chart, self.p, self.q) == (other.chart, other.p, other.q)
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.chart, self.p, self.q, frozenset(self.components.items())))

    def is_zero(self) -> bool:
        return not self.components

    def eval_body(self) -> "SuperTensor":
        return SuperTensor(
            self.chart,
            self.p,
            self.q,
            self.parity_bit,
            {k: f.eval_body() for k, f in self.components.items()},
        )

    # -- evaluation -----------------------------------------------------------

    def evaluate(self, fields: Sequence[SuperVectorField]):
        """Contract all lower slots; returns a superfunction (p=0) or field."""
        if len(fields) != self.q:
            raise ValueError("argument count does not match tensor valence")
        chart = self.chart
        if self.p == 0:
            upper_ids = [None]
        else:
            upper_ids = list(range(chart.dim))
        values = {}
        for c in upper_ids:
            total = chart.zero()
            for (upper, lowers), comp in self.components.items():
                if upper != c:
                    continue
                prod = chart.one()
                prefix = self.parity_bit
                if upper is not None:
                    prefix ^= chart.coord_parity(upper)
                dead = False
                for k, a in enumerate(lowers):
                    coeff = fields[k].components[a]
                    if coeff.is_zero():
                        dead = True
                        break
                    ce, co = coeff.parity_parts()
                    adjusted = ce + (co.scale(-1) if prefix & 1 else co)
                    prod = prod * adjusted
                    prefix ^= chart.coord_parity(a)
                if dead:
                    continue
                total = total + prod * comp
            values[c] = total
        if self.p == 0:
            return values[None]
        return SuperVectorField(
            chart, [values.get(c, chart.zero()) for c in range(chart.dim)]
        )

    @classmethod
    def from_form(cls, w: SuperForm) -> "SuperTensor":
        comps = {}
        for key, f in w.components.items():
            comps[(None, key)] = f
        t = cls(w.chart, 0, w.degree, w.parity_bit, comps)
        return t


def _require_even(V: SuperVectorField) -> None:
    if V.parity_bit() != 0:
        raise ValueError("Lie transport requires an even supervector field")


def lie_derivative(V: SuperVectorField, obj):
    """Lie derivative along an even field V.

    The unique contraction-compatible extension of V. on functions and
    [V, .] on vector fields; odd fields are rejected (no flow exists).
    """
    _require_even(V)
    if isinstance(obj, SuperFunction):
        return V.apply(obj)
    if isinstance(obj, SuperVectorField):
        return graded_bracket(V, obj)
    if isinstance(obj, SuperForm):
        return _lie_form(V, obj)
    if isinstance(obj, SuperTensor):
        return _lie_tensor(V, obj)
    raise TypeError(f"unsupported object {type(obj).__name__}")


def _coefficient_pull_sign(chart: Chart, ak: int, b: int, prefix_bit: int) -> int:
    # sign for pulling (d_{a_k} V^b) out through the tensor and earlier slots
    return -1 if (chart.coord_parity(ak) ^ chart.coord_parity(b)) and prefix_bit else 1


def _lie_lower_corrections(
    chart: Chart, V: SuperVectorField, lowers: Idx, parity_bit: int, lookup
) -> SuperFunction:
    """Sum over lower slots of T(.., [V, d_{a_k}], ..) with signs, negated."""
    out = chart.zero()
    prefix = parity_bit
    for k, ak in enumerate(lowers):
        for b in range(chart.dim):
            dV = partial(V.components[b], ak)
            if dV.is_zero():
                continue
            src = lookup(lowers[:k] + (b,) + lowers[k + 1 :])
            if src.is_zero():
                continue
            sign = _coefficient_pull_sign(chart, ak, b, prefix & 1)
            out = out + (dV * src).scale(sign)
        prefix += chart.coord_parity(ak)
    return out


def _lie_form(V: SuperVectorField, w: SuperForm) -> SuperForm:
    chart = w.chart
    keys = set(w.components)
    # insertion of [V, d_a] can move support between canonical keys
    for key in list(keys):
        for k in range(len(key)):
            for b in range(chart.dim):
                if V.components[b].is_zero():
                    continue
                cand = canonical_or_none(chart, key[:k] + (b,) + key[k + 1 :])
                if cand is not None:
                    keys.add(cand)
    comps = {}
    for key in keys:
        total = V.apply(w.component(key))
        total = total + _lie_lower_corrections(
            chart, V, key, w.parity_bit, w.component
        )
        if not total.is_zero():
            comps[key] = total
    return SuperForm(chart, w.degree, w.parity_bit, comps)


def canonical_or_none(chart: Chart, idx):
    from .forms import canonicalize

    canon = canonicalize(chart, idx)
    return None if canon is None else canon[1]


def _lie_tensor(V: SuperVectorField, T: SuperTensor) -> SuperTensor:
    chart = T.chart
    keys = set(T.components)
    for (upper, lowers) in list(keys):
        for k in range(len(lowers)):
            for b in range(chart.dim):
                if not V.components[b].is_zero():
                    keys.add((upper, lowers[:k] + (b,) + lowers[k + 1 :]))
        if upper is not None:
            for c in range(chart.dim):
                if not V.components[c].is_zero():
                    keys.add((c, lowers))
    comps = {}
    for (upper, lowers) in keys:
        total = V.apply(T.component(upper, lowers))
        total = total + _lie_lower_corrections(
            chart,
            V,
            lowers,
            T.parity_bit ^ (chart.coord_parity(upper) if upper is not None else 0),
            lambda idx, u=upper: T.component(u, idx),
        )
        if upper is not None:
            # value-level bracket part: -(T^b_I) d_b V^upper
            for b in range(chart.dim):
                src = T.component(b, lowers)
                if src.is_zero():
                    continue
                dV = partial(V.components[upper], b)
                if dV.is_zero():
                    continue
                total = total - src * dV
        if not total.is_zero():
            comps[(upper, lowers)] = total
    return SuperTensor(chart, T.p, T.q, T.parity_bit, comps, symmetry="none")

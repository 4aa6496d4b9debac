"""Supervector fields on a chart and their graded bracket.

A field X = X^j d/dx^j + X^a d/dth^a is stored through its component
superfunctions, indexed by coordinate id (x coordinates first).  Parity is
the usual one: X is even when the X^j are even-valued and the X^a odd-valued,
odd in the reversed case.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .charts import Chart, ChartMismatch, SuperFunction, partial


def super_sign(sigma: Sequence[int], parities: Sequence[int]) -> int:
    """Super-sign of a permutation acting on homogeneous arguments.

    For sigma in S_q (0-based images), the sign is -1 to the number of
    inversion pairs (i, j) counted as 1 + |X_i||X_j| each.  It reduces to the
    classical permutation sign when all arguments are even, and rearranging a
    graded-skew tensor obeys  w(X_sigma(1), ..) = super_sign * w(X_1, ..).
    """
    if len(sigma) != len(parities):
        raise ValueError("permutation and parity list lengths differ")
    total = 0
    q = len(sigma)
    for i in range(q):
        for j in range(i + 1, q):
            if sigma[i] > sigma[j]:
                total += 1 + parities[i] * parities[j]
    return -1 if total & 1 else 1


class SuperVectorField:
    """Derivation of the superfunction algebra with no action on lambda."""

    __slots__ = ("chart", "components")

    def __init__(self, chart: Chart, components: Sequence[SuperFunction]):
        if len(components) != chart.dim:
            raise ValueError(
                f"need {chart.dim} components, got {len(components)}"
            )
        for comp in components:
            if comp.chart != chart:
                raise ChartMismatch("component on wrong chart")
        self.chart = chart
        self.components = tuple(components)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, chart: Chart) -> "SuperVectorField":
        return cls(chart, [chart.zero()] * chart.dim)

    @classmethod
    def coordinate(cls, chart: Chart, coord_id: int) -> "SuperVectorField":
        comps = [chart.zero()] * chart.dim
        comps[coord_id] = chart.one()
        return cls(chart, comps)

    @classmethod
    def d_dx(cls, chart: Chart, i: int) -> "SuperVectorField":
        return cls.coordinate(chart, i - 1)

    @classmethod
    def d_dth(cls, chart: Chart, alpha: int) -> "SuperVectorField":
        return cls.coordinate(chart, chart.n + alpha - 1)

    @classmethod
    def from_dict(cls, chart: Chart, comps: dict) -> "SuperVectorField":
        full = [chart.zero()] * chart.dim
        for coord_id, f in comps.items():
            full[coord_id] = f
        return cls(chart, full)

    # -- module structure -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, SuperVectorField):
            return NotImplemented
        if self.chart != other.chart:
            raise ChartMismatch("fields on different charts")
        return SuperVectorField(
            self.chart,
            [a + b for a, b in zip(self.components, other.components)],
        )

    def __neg__(self):
        return SuperVectorField(self.chart, [-a for a in self.components])

    def __sub__(self, other):
        if not isinstance(other, SuperVectorField):
            return NotImplemented
        return self + (-other)

    def left_mul(self, f) -> "SuperVectorField":
        """Multiply by a superfunction (or scalar) from the left: (f X)."""
        if isinstance(f, (int, Fraction)):
            return SuperVectorField(self.chart, [c.scale(f) for c in self.components])
        return SuperVectorField(self.chart, [f * c for c in self.components])

    def __rmul__(self, f):
        if isinstance(f, (int, Fraction, SuperFunction)):
            return self.left_mul(f)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, SuperVectorField):
            return NotImplemented
        return self.chart == other.chart and self.components == other.components

    def __hash__(self):
        return hash((self.chart, self.components))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    # -- grading --------------------------------------------------------------

    def parity_bit(self):
        """0 / 1 / None for even / odd / mixed.  Zero counts as even."""
        bits = set()
        for a, comp in enumerate(self.components):
            if comp.is_zero():
                continue
            bit = comp.parity_bit()
            if bit is None:
                return None
            bits.add((bit + self.chart.coord_parity(a)) & 1)
            if len(bits) > 1:
                return None
        return bits.pop() if bits else 0

    def parity(self) -> str:
        bit = self.parity_bit()
        return "mixed" if bit is None else ("even" if bit == 0 else "odd")

    def parity_parts(self):
        evens, odds = [], []
        for a, comp in enumerate(self.components):
            ce, co = comp.parity_parts()
            if self.chart.coord_parity(a) == 0:
                evens.append(ce)
                odds.append(co)
            else:
                evens.append(co)
                odds.append(ce)
        return (
            SuperVectorField(self.chart, evens),
            SuperVectorField(self.chart, odds),
        )

    # -- action ---------------------------------------------------------------

    def apply(self, f: SuperFunction) -> SuperFunction:
        """X . f = sum_a X^a (df/dxi^a)."""
        out = self.chart.zero()
        for a, comp in enumerate(self.components):
            if comp.is_zero():
                continue
            out = out + comp * partial(f, a)
        return out

    def __call__(self, f: SuperFunction) -> SuperFunction:
        return self.apply(f)

    def eval_body(self) -> "SuperVectorField":
        return SuperVectorField(self.chart, [c.eval_body() for c in self.components])

    def __repr__(self):
        parts = [
            f"({comp!r}) d/d{self.chart.coord_name(a)}"
            for a, comp in enumerate(self.components)
            if not comp.is_zero()
        ]
        return " + ".join(parts) if parts else "0"


def graded_bracket(X: SuperVectorField, Y: SuperVectorField) -> SuperVectorField:
    """[X, Y] = X Y - (-1)^{|X||Y|} Y X, extended bilinearly.

    Mixed-parity inputs are split into homogeneous parts first; the bracket of
    two odd fields is the anticommutator.
    """
    if X.chart != Y.chart:
        raise ChartMismatch("fields on different charts")
    xb, yb = X.parity_bit(), Y.parity_bit()
    if xb is None or yb is None:
        xe, xo = X.parity_parts()
        ye, yo = Y.parity_parts()
        out = SuperVectorField.zero(X.chart)
        for part_x in (xe, xo):
            for part_y in (ye, yo):
                if part_x.is_zero() or part_y.is_zero():
                    continue
                out = out + graded_bracket(part_x, part_y)
        return out
    sign = -1 if xb and yb else 1
    comps = []
    for a in range(X.chart.dim):
        lead = X.apply(Y.components[a])
        trail = Y.apply(X.components[a]).scale(sign)
        comps.append(lead - trail)
    return SuperVectorField(X.chart, comps)

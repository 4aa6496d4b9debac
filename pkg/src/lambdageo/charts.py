"""Chart-level superfunctions.

A superfunction on a chart with even coordinates x^1..x^n and odd coordinates
th^1..th^m is a finite sum of terms

    lam * x-monomial * th-monomial

where lam is an exterior-algebra coefficient (see :mod:`lambdageo.grassmann`).
The odd coordinates anticommute among themselves and with the odd part of the
coefficient algebra (one Koszul sign rule throughout, implemented by the same
merge-count routine as blade products).  x-dependence is polynomial with an
explicit degree bound; any product that would exceed the bound drops the
offending terms and sets a sticky ``truncated`` flag, so truncation is never
silent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .grassmann import LambdaElement, blade_degree, merge_sign

Rat = Fraction
_ZERO = Fraction(0)


class ChartMismatch(ValueError):
    """Operation between superfunctions on different charts."""


@dataclass(frozen=True)
class Chart:
    """A local model for an (n|m) superdomain over N lambda generators."""

    n: int
    m: int
    lambda_gens: int
    max_x_degree: int = 12

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise ValueError("coordinate counts must be nonnegative")
        if self.max_x_degree < 0:
            raise ValueError("max_x_degree must be nonnegative")

    @property
    def dim(self) -> int:
        return self.n + self.m

    def coord_parity(self, a: int) -> int:
        """Parity of coordinate id a (x-coords first, then theta-coords)."""
        if not 0 <= a < self.dim:
            raise IndexError(f"coordinate id {a} out of range")
        return 0 if a < self.n else 1

    def coord_name(self, a: int) -> str:
        if a < self.n:
            return f"x{a + 1}"
        return f"th{a - self.n + 1}"

    def recommended(self) -> bool:
        return self.lambda_gens >= self.m

    # -- element constructors ------------------------------------------------

    def zero(self) -> "SuperFunction":
        return SuperFunction(self, {})

    def one(self) -> "SuperFunction":
        return self.const(1)

    def const(self, value) -> "SuperFunction":
        if not isinstance(value, LambdaElement):
            value = LambdaElement.scalar(self.lambda_gens, value)
        elif value.n_gen != self.lambda_gens:
            raise ChartMismatch("lambda generator count does not match chart")
        if value.is_zero():
            return self.zero()
        return SuperFunction(self, {(0, (0,) * self.n): value})

    def x(self, i: int) -> "SuperFunction":
        """Coordinate function x^i, 1-based."""
        if not 1 <= i <= self.n:
            raise IndexError(f"x index {i} out of range 1..{self.n}")
        exp = tuple(1 if k == i - 1 else 0 for k in range(self.n))
        return SuperFunction(self, {(0, exp): LambdaElement.one(self.lambda_gens)})

    def theta(self, alpha: int) -> "SuperFunction":
        """Coordinate function th^alpha, 1-based."""
        if not 1 <= alpha <= self.m:
            raise IndexError(f"theta index {alpha} out of range 1..{self.m}")
        return SuperFunction(
            self,
            {(1 << (alpha - 1), (0,) * self.n): LambdaElement.one(self.lambda_gens)},
        )

    def lam(self, *indices) -> "SuperFunction":
        """Constant superfunction given by a lambda-algebra blade."""
        return self.const(LambdaElement.blade(self.lambda_gens, indices))


Key = tuple  # (theta mask, x exponent tuple)


class SuperFunction:
    """Sparse canonical form: {(theta mask, x exponents) -> lambda coefficient}."""

    __slots__ = ("chart", "terms", "truncated")

    def __init__(self, chart: Chart, terms: Mapping[Key, LambdaElement] | None = None,
                 truncated: bool = False):
        self.chart = chart
        clean: dict[Key, LambdaElement] = {}
        if terms:
            for key, coef in terms.items():
                if coef.is_zero():
                    continue
                clean[key] = coef
        self.terms = clean
        self.truncated = truncated

    def _check(self, other: "SuperFunction") -> None:
        if self.chart != other.chart:
            raise ChartMismatch("superfunctions live on different charts")

    # -- basic ring ops ------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, LambdaElement)):
            other = self.chart.const(other)
        if not isinstance(other, SuperFunction):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = s
        return SuperFunction(self.chart, terms, self.truncated or other.truncated)

    __radd__ = __add__

    def __neg__(self):
        return SuperFunction(
            self.chart, {k: -c for k, c in self.terms.items()}, self.truncated
        )

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, LambdaElement)):
            other = self.chart.const(other)
        if not isinstance(other, SuperFunction):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SuperFunction":
        """Multiply by an exact rational (no parity bookkeeping needed)."""
        if not isinstance(c, (int, Fraction)):
            raise TypeError("scale expects a rational; use * for lambda factors")
        return SuperFunction(
            self.chart, {k: v.scale(c) for k, v in self.terms.items()}, self.truncated
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, LambdaElement):
            other = self.chart.const(other)
        if not isinstance(other, SuperFunction):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, LambdaElement):
            return multiply(self.chart.const(other), self)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LambdaElement)):
            other = self.chart.const(other)
        if not isinstance(other, SuperFunction):
            return NotImplemented
        return self.chart == other.chart and self.terms == other.terms

    def __hash__(self):
        return hash((self.chart, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- grading -------------------------------------------------------------

    def parity_bit(self):
        """0 / 1 / None for even / odd / mixed.  Zero counts as even."""
        bits = set()
        for (mask, _), coef in self.terms.items():
            lam_bit = coef.parity_bit()
            if lam_bit is None:
                return None
            bits.add((blade_degree(mask) + lam_bit) & 1)
            if len(bits) > 1:
                return None
        return bits.pop() if bits else 0

    def parity(self) -> str:
        bit = self.parity_bit()
        return "mixed" if bit is None else ("even" if bit == 0 else "odd")

    def parity_parts(self):
        """Split into (even, odd) homogeneous superfunctions."""
        even: dict[Key, LambdaElement] = {}
        odd: dict[Key, LambdaElement] = {}
        for (mask, exp), coef in self.terms.items():
            th_bit = blade_degree(mask) & 1
            lam_even, lam_odd = coef.parity_parts()
            for lam, lam_bit in ((lam_even, 0), (lam_odd, 1)):
                if lam.is_zero():
                    continue
                target = even if (th_bit + lam_bit) & 1 == 0 else odd
                key = (mask, exp)
                prev = target.get(key)
                target[key] = lam if prev is None else prev + lam
        return (
            SuperFunction(self.chart, even, self.truncated),
            SuperFunction(self.chart, odd, self.truncated),
        )

    # -- evaluation ----------------------------------------------------------

    def eval_body(self) -> "SuperFunction":
        """Set every theta to zero (the evaluation map onto the body)."""
        terms = {k: c for k, c in self.terms.items() if k[0] == 0}
        return SuperFunction(self.chart, terms, self.truncated)

    def constant_term(self) -> LambdaElement:
        """Coefficient of the theta-free, x-free term."""
        return self.terms.get(
            (0, (0,) * self.chart.n), LambdaElement.zero(self.chart.lambda_gens)
        )

    def as_constant(self) -> LambdaElement:
        """The element itself when constant; raises otherwise."""
        zero_key = (0, (0,) * self.chart.n)
        for key in self.terms:
            if key != zero_key:
                raise ValueError("superfunction is not constant")
        return self.constant_term()

    def subs_x(self, point) -> "SuperFunction":
        """Substitute rational values for all x coordinates, keeping thetas."""
        if len(point) != self.chart.n:
            raise ValueError("point dimension mismatch")
        vals = [Fraction(p) for p in point]
        terms: dict[Key, LambdaElement] = {}
        zero_exp = (0,) * self.chart.n
        for (mask, exp), coef in self.terms.items():
            factor = Fraction(1)
            for v, k in zip(vals, exp):
                factor *= v**k
            c = coef.scale(factor)
            if c.is_zero():
                continue
            key = (mask, zero_exp)
            prev = terms.get(key)
            s = c if prev is None else prev + c
            if s.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = s
        return SuperFunction(self.chart, terms, self.truncated)

    def max_x_degree_used(self) -> int:
        return max((sum(exp) for (_, exp) in self.terms), default=0)

    # -- text form -----------------------------------------------------------

    def serialize(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (mask, exp) in sorted(self.terms, key=lambda k: (k[0], k[1])):
            coef = self.terms[(mask, exp)]
            xs = "*".join(
                f"x{i + 1}^{k}" if k > 1 else f"x{i + 1}"
                for i, k in enumerate(exp)
                if k
            ) or "1"
            ths = "*".join(
                f"th{a + 1}" for a in range(self.chart.m) if mask >> a & 1
            ) or "1"
            parts.append(f"{coef.serialize()} * {xs} * {ths}")
        return " + ".join(parts)

    @classmethod
    def parse(cls, chart: Chart, text: str) -> "SuperFunction":
        return parse_superfunction(chart, text)

    def __repr__(self):
        return self.serialize()


def multiply(f: SuperFunction, g: SuperFunction) -> SuperFunction:
    """Product in the superfunction algebra.

    Theta monomials merge with the transposition-count sign, lambda
    coefficients wedge, and the odd part of the right-hand lambda coefficient
    anticommutes past the left-hand theta monomial.
    """
    f._check(g)
    chart = f.chart
    terms: dict[Key, LambdaElement] = {}
    truncated = f.truncated or g.truncated
    g_split = [(key, coef.parity_parts()) for key, coef in g.terms.items()]
    for (mask_a, exp_a), lam_a in f.terms.items():
        deg_a = blade_degree(mask_a)
        for (mask_b, exp_b), (g_even, g_odd) in g_split:
            if mask_a & mask_b:
                continue
            exp = tuple(p + q for p, q in zip(exp_a, exp_b))
            if sum(exp) > chart.max_x_degree:
                truncated = True
                continue
            sign = merge_sign(mask_a, mask_b)
            lam_b = g_even + (g_odd.scale(-1) if deg_a & 1 else g_odd)
            coef = (lam_a ^ lam_b).scale(sign)
            if coef.is_zero():
                continue
            key = (mask_a | mask_b, exp)
            prev = terms.get(key)
            s = coef if prev is None else prev + coef
            if s.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = s
    return SuperFunction(chart, terms, truncated)


def partial_even(f: SuperFunction, i: int) -> SuperFunction:
    """d/dx^i, 1-based index."""
    chart = f.chart
    if not 1 <= i <= chart.n:
        raise IndexError(f"x index {i} out of range 1..{chart.n}")
    terms: dict[Key, LambdaElement] = {}
    for (mask, exp), coef in f.terms.items():
        k = exp[i - 1]
        if not k:
            continue
        new_exp = exp[: i - 1] + (k - 1,) + exp[i:]
        key = (mask, new_exp)
        c = coef.scale(k)
        prev = terms.get(key)
        s = c if prev is None else prev + c
        if s.is_zero():
            terms.pop(key, None)
        else:
            terms[key] = s
    return SuperFunction(chart, terms, f.truncated)


def partial_odd(f: SuperFunction, alpha: int) -> SuperFunction:
    """d/dth^alpha acting from the left, 1-based index.

    The derivation is odd: it picks up a sign from passing the lambda
    coefficient (per its parity) and from the thetas preceding th^alpha.
    """
    chart = f.chart
    if not 1 <= alpha <= chart.m:
        raise IndexError(f"theta index {alpha} out of range 1..{chart.m}")
    bit = 1 << (alpha - 1)
    terms: dict[Key, LambdaElement] = {}
    for (mask, exp), coef in f.terms.items():
        if not mask & bit:
            continue
        below = blade_degree(mask & (bit - 1))
        # odd derivation passes the lambda coefficient: odd part flips sign
        lam_even, lam_odd = coef.parity_parts()
        c = lam_even - lam_odd
        if below & 1:
            c = -c
        key = (mask ^ bit, exp)
        prev = terms.get(key)
        s = c if prev is None else prev + c
        if s.is_zero():
            terms.pop(key, None)
        else:
            terms[key] = s
    return SuperFunction(chart, terms, f.truncated)


def partial(f: SuperFunction, coord_id: int) -> SuperFunction:
    """Partial derivative along a coordinate id (x coords first)."""
    if coord_id < f.chart.n:
        return partial_even(f, coord_id + 1)
    return partial_odd(f, coord_id - f.chart.n + 1)


def eval_body(f: SuperFunction) -> SuperFunction:
    return f.eval_body()


# -- parsing -----------------------------------------------------------------


def _split_top(text: str, sep: str) -> list[str]:
    """Split on sep at brace depth zero."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_superfunction(chart: Chart, text: str) -> SuperFunction:
    """Parse the serialized sum-of-terms form."""
    text = text.strip()
    if text in ("0", ""):
        return chart.zero()
    total = chart.zero()
    for raw in _split_top(text, "+"):
        term = raw.strip()
        if not term:
            continue
        factors = [p.strip() for p in _split_top(term, "*")]
        # re-join a leading lambda literal that may contain '*' free text? none
        if not factors:
            raise ValueError(f"empty term in {text!r}")
        coef_text = factors[0]
        if coef_text.startswith("{"):
            coef = LambdaElement.deserialize(chart.lambda_gens, coef_text)
        else:
            coef = LambdaElement.scalar(chart.lambda_gens, Fraction(coef_text))
        exp = [0] * chart.n
        mask = 0
        for factor in factors[1:]:
            if factor == "1":
                continue
            if factor.startswith("x"):
                name, _, power = factor.partition("^")
                idx = int(name[1:])
                if not 1 <= idx <= chart.n:
                    raise ValueError(f"bad x index in {factor!r}")
                exp[idx - 1] += int(power) if power else 1
            elif factor.startswith("th"):
                idx = int(factor[2:])
                if not 1 <= idx <= chart.m:
                    raise ValueError(f"bad theta index in {factor!r}")
                bit = 1 << (idx - 1)
                if mask & bit:
                    raise ValueError(f"repeated theta in term {term!r}")
                mask |= bit
            else:
                raise ValueError(f"bad factor {factor!r}")
        if sum(exp) > chart.max_x_degree:
            raise ValueError("term exceeds chart max_x_degree")
        total = total + SuperFunction(chart, {(mask, tuple(exp)): coef})
    return total

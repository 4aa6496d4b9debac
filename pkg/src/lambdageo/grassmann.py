"""Exact arithmetic in the exterior algebra over N generators.

Elements are sparse sums of basis blades e_{i1} ^ ... ^ e_{ik} (i1 < ... < ik)
with arbitrary-precision rational coefficients.  A blade is encoded as a bit
mask over the generator set {1, ..., N}, so N is capped at the machine word
size.  This algebra is the coefficient ring for everything downstream; no
floating point is allowed anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

MAX_GENERATORS = 64

Rat = Fraction


class DimensionMismatch(ValueError):
    """Binary operation between elements over different generator counts."""


class NotInvertible(ZeroDivisionError):
    """Inversion of an element whose real (degree-0) part is zero."""


def blade_degree(mask: int) -> int:
    return bin(mask).count("1")


def merge_sign(a: int, b: int) -> int:
    """Sign of merging two disjoint increasing blades a and b.

    Counts the transpositions needed to interleave the generators of b into
    those of a, i.e. the number of pairs (i in a, j in b) with i > j.
    """
    sign = 1
    rest = a
    while rest:
        low = rest & -rest
        # generators of b strictly below this generator of a
        if blade_degree(b & (low - 1)) & 1:
            sign = -sign
        rest ^= low
    return sign


def _as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact rational required, got {type(x).__name__}")


class LambdaElement:
    """An element of the exterior algebra over ``n_gen`` generators.

    ``terms`` maps a blade mask to a nonzero rational coefficient; the zero
    element has an empty map.  Instances are immutable value objects.
    """

    __slots__ = ("n_gen", "terms", "_hash")

    def __init__(self, n_gen: int, terms: Mapping[int, Fraction] | None = None):
        if not 0 <= n_gen <= MAX_GENERATORS:
            raise ValueError(f"generator count must lie in [0, {MAX_GENERATORS}]")
        clean: dict[int, Fraction] = {}
        if terms:
            top = (1 << n_gen) - 1
            for mask, coef in terms.items():
                if mask & ~top:
                    raise ValueError(f"blade mask {mask:#x} exceeds {n_gen} generators")
                c = _as_rat(coef)
                if c:
                    clean[mask] = c
        self.n_gen = n_gen
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def scalar(cls, n_gen: int, value) -> "LambdaElement":
        return cls(n_gen, {0: _as_rat(value)})

    @classmethod
    def zero(cls, n_gen: int) -> "LambdaElement":
        return cls(n_gen, {})

    @classmethod
    def one(cls, n_gen: int) -> "LambdaElement":
        return cls.scalar(n_gen, 1)

    @classmethod
    def generator(cls, n_gen: int, i: int) -> "LambdaElement":
        """The generator e_i, 1-based index."""
        if not 1 <= i <= n_gen:
            raise ValueError(f"generator index {i} out of range 1..{n_gen}")
        return cls(n_gen, {1 << (i - 1): Fraction(1)})

    @classmethod
    def blade(cls, n_gen: int, indices: Iterable[int], coef=1) -> "LambdaElement":
        """The blade e_{i1} ^ ... ^ e_{ik} for strictly increasing indices."""
        mask = 0
        prev = 0
        for i in indices:
            if not 1 <= i <= n_gen:
                raise ValueError(f"generator index {i} out of range 1..{n_gen}")
            if i <= prev:
                raise ValueError("blade indices must be strictly increasing")
            mask |= 1 << (i - 1)
            prev = i
        return cls(n_gen, {mask: _as_rat(coef)})

    # -- ring structure ------------------------------------------------------

    def _check(self, other: "LambdaElement") -> None:
        if self.n_gen != other.n_gen:
            raise DimensionMismatch(
                f"generator counts differ: {self.n_gen} vs {other.n_gen}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LambdaElement.scalar(self.n_gen, other)
        if not isinstance(other, LambdaElement):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for mask, c in other.terms.items():
            s = terms.get(mask, _ZERO) + c
            if s:
                terms[mask] = s
            else:
                terms.pop(mask, None)
        return LambdaElement(self.n_gen, terms)

    __radd__ = __add__

    def __neg__(self):
        return LambdaElement(self.n_gen, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LambdaElement.scalar(self.n_gen, other)
        if not isinstance(other, LambdaElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "LambdaElement":
        c = _as_rat(c)
        if not c:
            return LambdaElement.zero(self.n_gen)
        return LambdaElement(self.n_gen, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, LambdaElement):
            return wedge(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LambdaElement.scalar(self.n_gen, other)
        if not isinstance(other, LambdaElement):
            return NotImplemented
        return self.n_gen == other.n_gen and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n_gen, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- structure queries ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def max_degree(self) -> int:
        return max((blade_degree(m) for m in self.terms), default=0)

    def parity_bit(self):
        """0 if purely even, 1 if purely odd, None if mixed.  Zero is even."""
        if not self.terms:
            return 0
        bits = {blade_degree(m) & 1 for m in self.terms}
        if len(bits) > 1:
            return None
        return bits.pop()

    def parity_parts(self):
        """Split into (even part, odd part)."""
        even: dict[int, Fraction] = {}
        odd: dict[int, Fraction] = {}
        for m, c in self.terms.items():
            (odd if blade_degree(m) & 1 else even)[m] = c
        return (LambdaElement(self.n_gen, even), LambdaElement(self.n_gen, odd))

    def real_part(self) -> Fraction:
        return self.terms.get(0, _ZERO)

    def is_invertible(self) -> bool:
        return bool(self.real_part())

    # -- serialization -------------------------------------------------------

    def serialize(self) -> str:
        """Canonical text form: blade-mask hex keys mapped to p/q coefficients."""
        items = ", ".join(
            f"{m:#x}:{c.numerator}/{c.denominator}" for m, c in sorted(self.terms.items())
        )
        return "{" + items + "}"

    @classmethod
    def deserialize(cls, n_gen: int, text: str) -> "LambdaElement":
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise ValueError(f"bad lambda element literal: {text!r}")
        terms: dict[int, Fraction] = {}
        body = body[1:-1].strip()
        if body:
            for item in body.split(","):
                key, _, val = item.partition(":")
                if not val:
                    raise ValueError(f"bad lambda term: {item!r}")
                terms[int(key.strip(), 16)] = Fraction(val.strip())
        return cls(n_gen, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mask, c in sorted(self.terms.items()):
            idx = [i + 1 for i in range(self.n_gen) if mask >> i & 1]
            blade = "^".join(f"e{i}" for i in idx) if idx else "1"
            parts.append(f"{c}*{blade}" if idx else f"{c}")
        return " + ".join(parts)


_ZERO = Fraction(0)


def parity(a: LambdaElement) -> str:
    """Parity class of an element: 'even', 'odd' or 'mixed'.

    The zero element lies in both homogeneous parts; it reports 'even' by
    convention.
    """
    bit = a.parity_bit()
    if bit is None:
        return "mixed"
    return "even" if bit == 0 else "odd"


def wedge(a: LambdaElement, b: LambdaElement) -> LambdaElement:
    """Exterior product.  Repeated generators annihilate; the sign on blades
    is the parity of the merge-transposition count."""
    a._check(b)
    terms: dict[int, Fraction] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            if ma & mb:
                continue
            c = ca * cb
            if merge_sign(ma, mb) < 0:
                c = -c
            m = ma | mb
            s = terms.get(m, _ZERO) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
    return LambdaElement(a.n_gen, terms)


def conjugate(a: LambdaElement) -> LambdaElement:
    """Standard conjugation: the anti-automorphism that fixes degrees 0 and 1.

    On a degree-k blade it reverses the factor order, contributing the sign
    (-1)^(k(k-1)/2).  Coefficients are real rationals, so no further action.
    """
    terms = {}
    for m, c in a.terms.items():
        k = blade_degree(m)
        terms[m] = -c if (k * (k - 1) // 2) & 1 else c
    return LambdaElement(a.n_gen, terms)


def real_part(a: LambdaElement) -> Fraction:
    return a.real_part()


def is_invertible(a: LambdaElement) -> bool:
    return a.is_invertible()


def invert(a: LambdaElement) -> LambdaElement:
    """Two-sided inverse of an element with nonzero real part.

    Writing a = r(1 + u) with r real and u of strictly positive degree, u is
    nilpotent (u^(N+1) = 0), so 1/a = (1/r) * sum_k (-u)^k with at most N+1
    terms.  The result is exact: a * invert(a) == 1.
    """
    r = a.real_part()
    if not r:
        raise NotInvertible("element has zero real part")
    u = (a - LambdaElement.scalar(a.n_gen, r)).scale(Fraction(1, 1) / r)
    acc = LambdaElement.one(a.n_gen)
    power = LambdaElement.one(a.n_gen)
    for _ in range(a.n_gen):
        power = wedge(power, u).scale(-1)
        if power.is_zero():
            break
        acc = acc + power
    return acc.scale(Fraction(1, 1) / r)

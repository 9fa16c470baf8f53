"""Exact scalar, polynomial, and localized-fraction arithmetic.

Two normal forms carry the whole kernel:

* ``MultiPoly`` -- sparse multivariate polynomials over ``Fraction``, keyed
  by exponent tuples.  Term order is graded lex with the last variable least
  significant; by convention the last variable is the Rees parameter hbar.
* ``OreFraction`` -- fractions whose denominators are multisets of linear
  factors ``coroot - shift*hbar``.  Common linear factors are cancelled at
  construction, so two equal fractions are componentwise identical.

Scalars are ``fractions.Fraction`` throughout; nothing here ever touches
floating point.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

from .errors import DimensionMismatch, LevelMismatch, NonDivisible

Rational = Fraction
Scalar = Union[int, Fraction]
Expo = Tuple[int, ...]

_ZERO = Fraction(0)


def _coerce(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected int or Fraction, got {type(c).__name__}")


def term_sort_key(expo: Expo):
    """Graded lex key: total degree first, then exponents left to right.

    The last variable (hbar) sits in the least significant lex slot, which
    is exactly the pinned ordering.
    """
    return (sum(expo), expo)


class MultiPoly:
    """Immutable sparse polynomial in ``nvars`` variables over Fraction."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Expo, Scalar]] = None):
        clean = {}
        if terms:
            for expo, coeff in terms.items():
                e = tuple(int(k) for k in expo)
                if len(e) != nvars:
                    raise DimensionMismatch(
                        f"exponent {e} has length {len(e)}, expected {nvars}")
                if any(k < 0 for k in e):
                    raise ValueError(f"negative exponent in {e}")
                c = _coerce(coeff)
                if c:
                    clean[e] = c
        object.__setattr__(self, "nvars", int(nvars))
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "MultiPoly":
        """Trusted constructor: terms already normalized (no zero coeffs)."""
        self = object.__new__(cls)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)
        return self

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "MultiPoly":
        return cls.constant(nvars, 1)

    @classmethod
    def constant(cls, nvars: int, c: Scalar) -> "MultiPoly":
        c = _coerce(c)
        if not c:
            return cls.zero(nvars)
        return cls._raw(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise DimensionMismatch(f"variable index {index} out of range")
        expo = tuple(1 if i == index else 0 for i in range(nvars))
        return cls._raw(nvars, {expo: Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Sequence[Scalar], constant: Scalar = 0) -> "MultiPoly":
        """Linear form sum(coeffs[i] * x_i) + constant."""
        nvars = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = _coerce(c)
            if c:
                terms[tuple(1 if j == i else 0 for j in range(nvars))] = c
        c0 = _coerce(constant)
        if c0:
            terms[(0,) * nvars] = c0
        return cls._raw(nvars, terms)

    # -- predicates and views -------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def sorted_terms(self):
        """Terms in descending graded-lex order (deterministic)."""
        return sorted(self.terms.items(), key=lambda kv: term_sort_key(kv[0]),
                      reverse=True)

    def leading(self):
        """(exponent, coefficient) of the leading term; None if zero."""
        if not self.terms:
            return None
        expo = max(self.terms, key=term_sort_key)
        return expo, self.terms[expo]

    def coefficient(self, expo: Expo) -> Fraction:
        return self.terms.get(tuple(expo), _ZERO)

    def homogeneous_components(self) -> dict:
        out = {}
        for e, c in self.terms.items():
            out.setdefault(sum(e), {})[e] = c
        return {d: MultiPoly._raw(self.nvars, t) for d, t in sorted(out.items())}

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def partial(self, index: int) -> "MultiPoly":
        """Formal partial derivative with respect to variable ``index``."""
        if not 0 <= index < self.nvars:
            raise DimensionMismatch(f"variable index {index} out of range")
        out = {}
        for e, c in self.terms.items():
            k = e[index]
            if k:
                e2 = e[:index] + (k - 1,) + e[index + 1:]
                out[e2] = out.get(e2, _ZERO) + c * k
        return MultiPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    # -- ring operations -------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if other.nvars != self.nvars:
            raise DimensionMismatch(
                f"mixing polynomials in {self.nvars} and {other.nvars} variables")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, _ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce(other)
            if not c:
                return MultiPoly.zero(self.nvars)
            return MultiPoly._raw(self.nvars,
                                  {e: k * c for e, k in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, _ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.one(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.nvars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- evaluation and substitution --------------------------------------

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise DimensionMismatch(
                f"point has length {len(point)}, expected {self.nvars}")
        pt = [_coerce(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            value = c
            for x, k in zip(pt, e):
                if k:
                    value *= x ** k
            total += value
        return total

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Ring homomorphism sending variable i to images[i].

        All images must share a variable count; the result lives in that
        ring (it may differ from self.nvars).
        """
        if len(images) != self.nvars:
            raise DimensionMismatch(
                f"{len(images)} images for {self.nvars} variables")
        if not images:
            return MultiPoly.zero(0) if self.is_zero() else MultiPoly.constant(0, next(iter(self.terms.values())))
        target_nvars = images[0].nvars
        for im in images:
            if im.nvars != target_nvars:
                raise DimensionMismatch("images live in different rings")
        power_cache = [{0: MultiPoly.one(target_nvars)} for _ in range(self.nvars)]

        def power(i: int, k: int) -> MultiPoly:
            cache = power_cache[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        result = MultiPoly.zero(target_nvars)
        for e, c in self.sorted_terms():
            term = MultiPoly.constant(target_nvars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    # -- exact division ----------------------------------------------------

    def exact_divide(self, divisor: "MultiPoly") -> "MultiPoly":
        """Quotient self/divisor; raises NonDivisible when it does not exist."""
        if not isinstance(divisor, MultiPoly):
            raise TypeError("divisor must be a MultiPoly")
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return MultiPoly.zero(self.nvars)
        d_expo, d_coeff = divisor.leading()
        remainder = dict(self.terms)
        quotient = {}
        while remainder:
            r_expo = max(remainder, key=term_sort_key)
            r_coeff = remainder[r_expo]
            q_expo = tuple(a - b for a, b in zip(r_expo, d_expo))
            if any(k < 0 for k in q_expo):
                raise NonDivisible(
                    f"leading term {r_expo} not divisible by {d_expo}")
            q_coeff = r_coeff / d_coeff
            quotient[q_expo] = quotient.get(q_expo, _ZERO) + q_coeff
            for e, c in divisor.terms.items():
                key = tuple(a + b for a, b in zip(q_expo, e))
                s = remainder.get(key, _ZERO) - q_coeff * c
                if s:
                    remainder[key] = s
                else:
                    remainder.pop(key, None)
        return MultiPoly._raw(self.nvars, {e: c for e, c in quotient.items() if c})

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.exact_divide(self)
            return True
        except NonDivisible:
            return False

    # -- rendering ---------------------------------------------------------

    def render(self, names: Sequence[str]) -> str:
        if len(names) != self.nvars:
            raise DimensionMismatch("wrong number of variable names")
        if self.is_zero():
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            body = "*".join(factors)
            if not body:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(body)
            elif c == -1:
                pieces.append(f"-{body}")
            else:
                pieces.append(f"{c}*{body}")
        text = " + ".join(pieces)
        return text.replace("+ -", "- ")

    def __repr__(self):
        names = [f"x{i}" for i in range(self.nvars)]
        return f"MultiPoly({self.render(names)})"


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Named dispatcher over the four exact ring operations."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "exact_div":
        return a.exact_divide(b)
    raise ValueError(f"unknown operation {op!r}")


def substitute_linear(f: MultiPoly, images: Sequence[MultiPoly]) -> MultiPoly:
    """Apply an affine-linear substitution (every image has degree <= 1)."""
    for i, im in enumerate(images):
        if im.degree() > 1:
            raise ValueError(f"image of variable {i} has degree {im.degree()}")
    return f.substitute(images)


class OreFactor:
    """One linear denominator factor, stored as (coroot, shift).

    At the generic level it denotes ``coroot - shift*hbar``; at a numeric
    level c it denotes ``coroot - shift*c``.  The coroot is a primitive
    integer vector with positive leading entry, over the t-coordinates
    (hbar excluded); shifts are integers.  Whether the vector is actually a
    coroot of the ambient datum is the caller's invariant: the layers that
    build elements only ever construct factors from genuine coroots, and
    the group action preserves that.
    """

    __slots__ = ("coroot", "shift", "_hash")

    def __init__(self, coroot: Sequence[int], shift: int):
        v = tuple(int(c) for c in coroot)
        if not any(v):
            raise ValueError("zero vector is not a valid factor")
        g = 0
        for c in v:
            g = math.gcd(g, abs(c))
        if g != 1:
            raise ValueError(f"coroot {v} is not primitive")
        lead = next(c for c in v if c)
        if lead < 0:
            raise ValueError(f"coroot {v} must have positive leading entry")
        object.__setattr__(self, "coroot", v)
        object.__setattr__(self, "shift", int(shift))
        object.__setattr__(self, "_hash", hash((v, int(shift))))

    @classmethod
    def from_linear(cls, coeffs: Sequence[Scalar], hbar_coeff: Scalar):
        """Normalize the linear form sum(coeffs[i] x_i) + hbar_coeff*hbar.

        Returns (scale, factor) with form == scale * factor.  Raises
        ValueError when the normalized shift is not an integer (such forms
        never arise from coroots).
        """
        coeffs = [_coerce(c) for c in coeffs]
        hb = _coerce(hbar_coeff)
        if not any(coeffs):
            raise ValueError("factor must involve the t-coordinates")
        denom_lcm = 1
        for c in list(coeffs) + [hb]:
            denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
        ints = [int(c * denom_lcm) for c in coeffs]
        g = 0
        for c in ints:
            g = math.gcd(g, abs(c))
        lead = next(c for c in ints if c)
        if lead < 0:
            g = -g
        scale = Fraction(g, denom_lcm)
        shift = -hb / scale
        if shift.denominator != 1:
            raise ValueError("normalized shift is not an integer")
        return scale, cls([c // g for c in ints], int(shift))

    def as_poly(self, nvars: int, level: Optional[Fraction] = None) -> MultiPoly:
        """The factor as a polynomial in nvars variables (hbar last)."""
        if nvars != len(self.coroot) + 1:
            raise DimensionMismatch(
                f"factor over {len(self.coroot)} t-coordinates, ring has {nvars} variables")
        if level is None:
            return MultiPoly.linear(list(self.coroot) + [-self.shift])
        return MultiPoly.linear(list(self.coroot) + [0],
                                constant=-Fraction(level) * self.shift)

    def sort_key(self):
        return (self.coroot, self.shift)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __eq__(self, other):
        if not isinstance(other, OreFactor):
            return NotImplemented
        return self.coroot == other.coroot and self.shift == other.shift

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"OreFactor({self.coroot}, shift={self.shift})"


def _cancel(num: MultiPoly, factors: Sequence[OreFactor],
            level: Optional[Fraction]):
    """Cancel denominator factors that exactly divide the numerator.

    Confluent because the polynomial ring is a UFD: the surviving numerator
    is num divided by every linear factor to its maximal dividing power, so
    the result does not depend on processing order.
    """
    if num.is_zero():
        return num, ()
    kept = []
    for f in sorted(factors):
        divisor = f.as_poly(num.nvars, level)
        try:
            num = num.exact_divide(divisor)
        except NonDivisible:
            kept.append(f)
    return num, tuple(kept)


class OreFraction:
    """Numerator / product of linear factors, in cancelled normal form.

    ``level`` is None for the generic (graded) form or the Fraction value
    hbar has been specialized at.  Mixing levels raises LevelMismatch.
    There is no separate scale field: rational multiples live in the
    numerator, which keeps equality componentwise.
    """

    __slots__ = ("num", "den", "level", "_hash")

    def __init__(self, num: MultiPoly, den: Iterable[OreFactor] = (),
                 level: Optional[Scalar] = None):
        den = tuple(den)
        for f in den:
            if len(f.coroot) + 1 != num.nvars:
                raise DimensionMismatch("factor and numerator variable counts differ")
        lvl = None if level is None else _coerce(level)
        num, den = _cancel(num, den, lvl)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "level", lvl)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def from_poly(cls, p: MultiPoly, level: Optional[Scalar] = None) -> "OreFraction":
        return cls(p, (), level)

    @classmethod
    def zero(cls, nvars: int, level: Optional[Scalar] = None) -> "OreFraction":
        return cls(MultiPoly.zero(nvars), (), level)

    @classmethod
    def one(cls, nvars: int, level: Optional[Scalar] = None) -> "OreFraction":
        return cls(MultiPoly.one(nvars), (), level)

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den

    def _check(self, other: "OreFraction"):
        if self.level != other.level:
            raise LevelMismatch(f"levels {self.level} and {other.level}")
        if self.nvars != other.nvars:
            raise DimensionMismatch("variable counts differ")

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return OreFraction(self.num * other, self.den, self.level)
        if isinstance(other, MultiPoly):
            other = OreFraction.from_poly(other, self.level)
        if not isinstance(other, OreFraction):
            return NotImplemented
        self._check(other)
        return OreFraction(self.num * other.num, self.den + other.den, self.level)

    def __rmul__(self, other):
        # multiplication of coefficients is commutative
        return self.__mul__(other)

    def __neg__(self):
        return OreFraction(-self.num, self.den, self.level)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = OreFraction.from_poly(
                MultiPoly.constant(self.nvars, other), self.level)
        if isinstance(other, MultiPoly):
            other = OreFraction.from_poly(other, self.level)
        if not isinstance(other, OreFraction):
            return NotImplemented
        self._check(other)
        mine = Counter(self.den)
        theirs = Counter(other.den)
        common = mine | theirs
        num_a = self.num
        num_b = other.num
        for f, mult in sorted(common.items(), key=lambda kv: kv[0].sort_key()):
            poly = f.as_poly(self.nvars, self.level)
            for _ in range(mult - mine[f]):
                num_a = num_a * poly
            for _ in range(mult - theirs[f]):
                num_b = num_b * poly
        den = tuple(sorted(common.elements()))
        return OreFraction(num_a + num_b, den, self.level)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            return self + (-OreFraction.from_poly(
                other if isinstance(other, MultiPoly)
                else MultiPoly.constant(self.nvars, other), self.level))
        if not isinstance(other, OreFraction):
            return NotImplemented
        return self + (-other)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = OreFraction.from_poly(
                MultiPoly.constant(self.nvars, other), self.level)
        if not isinstance(other, OreFraction):
            return NotImplemented
        return (self.level == other.level and self.num == other.num
                and Counter(self.den) == Counter(other.den))

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.num, tuple(sorted(self.den)), self.level))
            object.__setattr__(self, "_hash", h)
        return h

    def as_poly(self) -> MultiPoly:
        """The numerator, provided the denominator is trivial."""
        if self.den:
            raise NonDivisible("fraction has a nontrivial denominator")
        return self.num

    def render(self, names: Sequence[str]) -> str:
        num = self.num.render(names)
        if not self.den:
            return num
        parts = []
        for f in sorted(self.den):
            parts.append("(" + f.as_poly(self.nvars, self.level).render(names) + ")")
        return f"({num}) / ({'*'.join(parts)})"

    def __repr__(self):
        names = [f"x{i}" for i in range(self.nvars)]
        return f"OreFraction({self.render(names)})"


def ore_fraction_mul(a: OreFraction, b: OreFraction) -> OreFraction:
    """Product in the localization; cancellation happens in the constructor."""
    return a * b

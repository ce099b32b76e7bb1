"""Exact scalars over the Gaussian rationals Q(i).

Every matrix entry used by the library (Pauli matrices, involution matrices,
conjugators, character values) lives in Q(i), so all subspace comparisons
are decided exactly.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "GaussianRational",
    "ExactArithmeticError",
    "arith",
    "conj",
    "gr",
    "parse_scalar",
    "format_scalar",
    "ZERO",
    "ONE",
    "I",
]

ScalarLike = Union["GaussianRational", int, Fraction, complex, str]


class ExactArithmeticError(ArithmeticError):
    """Raised for undefined exact operations (division by zero, bad input)."""


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """The number ``re + im*i`` with rational parts.

    ``Fraction`` already keeps numerator/denominator coprime with a positive
    denominator, so structural equality is value equality.
    """

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        # accept ints / Rationals for convenience, store Fractions
        if type(self.re) is not Fraction:
            object.__setattr__(self, "re", _as_fraction(self.re))
        if type(self.im) is not Fraction:
            object.__setattr__(self, "im", _as_fraction(self.im))

    @classmethod
    def coerce(cls, x: ScalarLike) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, str):
            return parse_scalar(x)
        if isinstance(x, complex):
            if x.real != int(x.real) or x.imag != int(x.imag):
                raise ExactArithmeticError(
                    f"complex literal {x!r} is not a Gaussian integer; pass Fractions"
                )
            return cls(Fraction(int(x.real)), Fraction(int(x.imag)))
        if isinstance(x, (int, Rational)):
            return cls(Fraction(x), Fraction(0))
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ExactArithmeticError("division by zero in Q(i)")
        return self * GaussianRational(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else ONE / self
        out = ONE
        for _ in range(abs(k)):
            out = out * base
        return out

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def canonical(self) -> GaussianRational:
        return GaussianRational(self.re, self.im)

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"rational part must be rational, got {x!r}")


def _coerce_or_none(x):
    if isinstance(x, GaussianRational):
        return x
    try:
        return GaussianRational.coerce(x)
    except (TypeError, ExactArithmeticError):
        return None


ZERO = GaussianRational(Fraction(0), Fraction(0))
ONE = GaussianRational(Fraction(1), Fraction(0))
I = GaussianRational(Fraction(0), Fraction(1))


def gr(re=0, im=0) -> GaussianRational:
    """Shorthand constructor: ``gr(1, -2)`` is 1 - 2i; parts may be strings."""
    return GaussianRational(_as_fraction(re), _as_fraction(im))


_OPS = {
    "add": lambda x, y: x + y,
    "sub": lambda x, y: x - y,
    "mul": lambda x, y: x * y,
    "div": lambda x, y: x / y,
}


def arith(x: ScalarLike, y: ScalarLike, op: str) -> GaussianRational:
    """Apply one of ``add``, ``sub``, ``mul``, ``div`` exactly."""
    try:
        f = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown op {op!r}; expected one of {sorted(_OPS)}") from None
    return f(GaussianRational.coerce(x), GaussianRational.coerce(y))


def conj(x: ScalarLike) -> GaussianRational:
    return GaussianRational.coerce(x).conjugate()


def format_scalar(x: GaussianRational) -> str:
    """Canonical string: ``"3/2"``, ``"-1i"``, ``"1/2-3i"``."""
    re_, im_ = x.re, x.im
    if im_ == 0:
        return str(re_)
    if re_ == 0:
        return f"{im_}i"
    sign = "+" if im_ > 0 else "-"
    return f"{re_}{sign}{abs(im_)}i"


_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^\s*(?:(?P<re>{_RAT})(?=$|[+-]))?\s*(?:(?P<im>[+-]?(?:\d+(?:/\d+)?)?)i)?\s*$"
)


def parse_scalar(s: str) -> GaussianRational:
    """Inverse of :func:`format_scalar`; also accepts ``"i"``, ``"-i"``, ``"1+i"``."""
    if not isinstance(s, str):
        raise TypeError(f"expected a string, got {type(s).__name__}")
    m = _SCALAR_RE.match(s)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ExactArithmeticError(f"malformed scalar string {s!r}")
    re_ = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_s = m.group("im")
    if im_s is None:
        im_ = Fraction(0)
    elif im_s in ("", "+"):
        im_ = Fraction(1)
    elif im_s == "-":
        im_ = Fraction(-1)
    else:
        im_ = Fraction(im_s)
    return GaussianRational(re_, im_)

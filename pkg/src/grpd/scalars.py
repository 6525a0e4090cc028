"""Exact Gaussian-rational scalars.

Coefficients throughout the convolution algebras and modules are complex
numbers with rational real and imaginary parts, kept exact via
:class:`fractions.Fraction`.  Floating point enters only at the very end,
inside operator-norm estimation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise InputError(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class Scalar:
    """A Gaussian rational ``re + im*i`` with exact Fraction parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __mul__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|z|^2, exactly."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    # -- conversions --------------------------------------------------------

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def to_quad(self):
        """[re_num, re_den, im_num, im_den], the on-disk form."""
        return [self.re.numerator, self.re.denominator,
                self.im.numerator, self.im.denominator]

    @staticmethod
    def from_quad(quad) -> "Scalar":
        if not (isinstance(quad, (list, tuple)) and len(quad) == 4
                and all(isinstance(q, int) for q in quad)):
            raise InputError(f"scalar must be [re_num, re_den, im_num, im_den]: {quad!r}")
        if quad[1] == 0 or quad[3] == 0:
            raise InputError(f"scalar denominator is zero: {quad!r}")
        return Scalar(Fraction(quad[0], quad[1]), Fraction(quad[2], quad[3]))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = Scalar()
ONE = Scalar(Fraction(1))
I = Scalar(Fraction(0), Fraction(1))


def scalar(re, im=0) -> Scalar:
    """Convenience constructor accepting ints, Fractions or 'p/q' strings."""
    return Scalar(_frac(re), _frac(im))

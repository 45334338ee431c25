"""Exact arithmetic over numbers of the form p + q*sqrt(2) with rational p, q.

Every coordinate and length in this package lives in this field, so all
geometric decisions (signs, comparisons, incidence) are exact.  No radical is
ever evaluated in floating point on a logic path; floats appear only when a
value is exported for display.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

# Convergent of sqrt(2), good to ~1.6e-12.  Used only to seed the exact
# floor() fix-up loop, never for decisions.
_SQRT2_APPROX = Fraction(665857, 470832)

_RationalLike = int | Fraction


@total_ordering
class QuadraticRational:
    """Immutable exact value p + q*sqrt(2), p and q rational."""

    __slots__ = ("p", "q")

    p: Fraction
    q: Fraction

    def __init__(self, p: _RationalLike = 0, q: _RationalLike = 0) -> None:
        object.__setattr__(self, "p", Fraction(p))
        object.__setattr__(self, "q", Fraction(q))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("QuadraticRational is immutable")

    # -- construction / destructuring -------------------------------------

    @classmethod
    def from_int(cls, n: int) -> QuadraticRational:
        return cls(n, 0)

    @classmethod
    def from_ints(cls, quad: tuple[int, int, int, int]) -> QuadraticRational:
        pn, pd, qn, qd = quad
        if pd <= 0 or qd <= 0:
            raise ValueError(f"denominators must be positive, got {quad!r}")
        return cls(Fraction(pn, pd), Fraction(qn, qd))

    def to_ints(self) -> tuple[int, int, int, int]:
        """Serialize as (p_num, p_den, q_num, q_den), denominators > 0."""
        return (
            self.p.numerator,
            self.p.denominator,
            self.q.numerator,
            self.q.denominator,
        )

    # -- ring / field operations ------------------------------------------

    def _coerce(self, other: object) -> QuadraticRational | None:
        if isinstance(other, QuadraticRational):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticRational(other, 0)
        return None

    def __add__(self, other: object) -> QuadraticRational:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticRational(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __sub__(self, other: object) -> QuadraticRational:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticRational(self.p - o.p, self.q - o.q)

    def __rsub__(self, other: object) -> QuadraticRational:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticRational(o.p - self.p, o.q - self.q)

    def __neg__(self) -> QuadraticRational:
        return QuadraticRational(-self.p, -self.q)

    def __abs__(self) -> QuadraticRational:
        return -self if self.sign() < 0 else self

    def __mul__(self, other: object) -> QuadraticRational:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticRational(
            self.p * o.p + 2 * self.q * o.q,
            self.p * o.q + self.q * o.p,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadraticRational:
        return QuadraticRational(self.p, -self.q)

    def norm(self) -> Fraction:
        """Rational field norm p^2 - 2*q^2 (zero only for the zero value)."""
        return self.p * self.p - 2 * self.q * self.q

    def __truediv__(self, other: object) -> QuadraticRational:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in QuadraticRational")
        c = o.conjugate()
        return QuadraticRational(
            (self.p * c.p + 2 * self.q * c.q) / n,
            (self.p * c.q + self.q * c.p) / n,
        )

    def __rtruediv__(self, other: object) -> QuadraticRational:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int) -> QuadraticRational:
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = QuadraticRational(1, 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- ordering -----------------------------------------------------------

    def sign(self) -> int:
        """Sign of the real value, decided without evaluating sqrt(2).

        With mixed-sign components the comparison reduces to the integer
        comparison of p^2 against 2*q^2; equality there is impossible for a
        nonzero value because sqrt(2) is irrational.
        """
        sp = (self.p > 0) - (self.p < 0)
        sq = (self.q > 0) - (self.q < 0)
        if sq == 0:
            return sp
        if sp == 0:
            return sq
        if sp == sq:
            return sp
        return sp if self.p * self.p > 2 * self.q * self.q else sq

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.p == o.p and self.q == o.q

    def __lt__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        return hash((self.p, self.q))

    def __bool__(self) -> bool:
        return bool(self.p) or bool(self.q)

    # -- integrality / rounding ---------------------------------------------

    def is_rational(self) -> bool:
        return self.q == 0

    def is_integer(self) -> bool:
        return self.q == 0 and self.p.denominator == 1

    def as_integer(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self.p.numerator

    def floor(self) -> int:
        """Largest integer n with n <= value, computed exactly."""
        est = self.p + self.q * _SQRT2_APPROX
        n = est.numerator // est.denominator
        while (self - n).sign() < 0:
            n -= 1
        while (self - (n + 1)).sign() >= 0:
            n += 1
        return n

    def frac(self) -> QuadraticRational:
        """Fractional part: self - floor(self), in [0, 1)."""
        return self - self.floor()

    # -- display -------------------------------------------------------------

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * 1.4142135623730951

    def __repr__(self) -> str:
        return f"QuadraticRational({self.p!r}, {self.q!r})"

    def __str__(self) -> str:
        if self.q == 0:
            return str(self.p)
        if self.p == 0:
            return f"{self.q}√2"
        sign = "+" if self.q > 0 else "-"
        return f"{self.p}{sign}{abs(self.q)}√2"


ZERO = QuadraticRational(0, 0)
ONE = QuadraticRational(1, 0)
SQRT2 = QuadraticRational(0, 1)
HALF_SQRT2 = QuadraticRational(0, Fraction(1, 2))

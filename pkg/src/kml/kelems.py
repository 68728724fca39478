"""Exact arithmetic in K = Q(sqrt(-D)): elements u + v*sqrt(-D) with rational u, v."""

from __future__ import annotations

from fractions import Fraction

from .numtheory import ord_p

Frac = Fraction


class KElem:
    """Element u + v*sqrt(-D) of Q(sqrt(-D)), exact."""

    __slots__ = ("u", "v", "D")

    def __init__(self, u, v, D: int):
        self.u = Fraction(u)
        self.v = Fraction(v)
        self.D = D

    # -- ring ops ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        return KElem(self.u + o.u, self.v + o.v, self.D)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        o = self._coerce(other)
        return KElem(self.u - o.u, self.v - o.v, self.D)

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __neg__(self):
        return KElem(-self.u, -self.v, self.D)

    def __mul__(self, other):
        o = self._coerce(other)
        return KElem(
            self.u * o.u - self.D * self.v * o.v,
            self.u * o.v + self.v * o.u,
            self.D,
        )

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in K")
        c = self * o.conj()
        return KElem(c.u / n, c.v / n, self.D)

    def _coerce(self, other) -> "KElem":
        if isinstance(other, KElem):
            if other.D != self.D:
                raise ValueError("mixed discriminants")
            return other
        return KElem(Fraction(other), 0, self.D)

    def __eq__(self, other):
        if isinstance(other, KElem):
            return self.D == other.D and self.u == other.u and self.v == other.v
        return self.v == 0 and self.u == Fraction(other)

    def __hash__(self):
        return hash((self.u, self.v, self.D))

    def __repr__(self):
        if self.v == 0:
            return f"K({self.u})"
        return f"K({self.u}+{self.v}*sqrt(-{self.D}))"

    def __bool__(self):
        return self.u != 0 or self.v != 0

    # -- field structure --------------------------------------------------
    def conj(self) -> "KElem":
        return KElem(self.u, -self.v, self.D)

    def norm(self) -> Fraction:
        return self.u * self.u + self.D * self.v * self.v

    def trace(self) -> Fraction:
        return 2 * self.u

    def is_rational(self) -> bool:
        return self.v == 0

    # -- integrality ------------------------------------------------------
    def o_coords(self) -> tuple[Fraction, Fraction]:
        """Coordinates (x, y) with self = x + y*omega, omega = (t+sqrt(-D))/2."""
        t = 1 if self.D % 4 == 3 else 0
        y = 2 * self.v
        x = self.u - t * self.v
        return x, y

    @classmethod
    def from_o_coords(cls, x, y, D: int) -> "KElem":
        t = 1 if D % 4 == 3 else 0
        x, y = Fraction(x), Fraction(y)
        return cls(x + t * y / 2, y / 2, D)

    def in_O(self) -> bool:
        x, y = self.o_coords()
        return x.denominator == 1 and y.denominator == 1

    def in_O_p(self, p: int) -> bool:
        x, y = self.o_coords()
        return x.denominator % p != 0 and y.denominator % p != 0

    def nu(self, p: int) -> int:
        """nu_{K_p} = ord_p of the norm; raises on zero."""
        return ord_p(self.norm(), p)

    def sqrt_mD(self) -> "KElem":
        return KElem(0, 1, self.D)


def ksqrt_mD(D: int) -> KElem:
    return KElem(0, 1, D)


def kone(D: int) -> KElem:
    return KElem(1, 0, D)


def kzero(D: int) -> KElem:
    return KElem(0, 0, D)

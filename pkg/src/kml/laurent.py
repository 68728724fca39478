"""Laurent polynomials in X over Q, and truncated power series in t over them."""

from __future__ import annotations

from fractions import Fraction


class LaurentPolynomial:
    """Map exponent -> exact rational coefficient; zero coefficients dropped."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        self.c: dict[int, Fraction] = {}
        if coeffs:
            for k, v in coeffs.items():
                v = Fraction(v)
                if v:
                    self.c[int(k)] = v

    @classmethod
    def const(cls, v) -> "LaurentPolynomial":
        return cls({0: Fraction(v)})

    @classmethod
    def monomial(cls, coeff, exp: int) -> "LaurentPolynomial":
        return cls({exp: Fraction(coeff)})

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.c == other.c
        return self.c == LaurentPolynomial.const(other).c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.c)
        for k, v in other.c.items():
            w = out.get(k, Fraction(0)) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return LaurentPolynomial(out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return LaurentPolynomial({k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        return self.__add__(self._coerce(other).__neg__())

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[int, Fraction] = {}
        for k1, v1 in self.c.items():
            for k2, v2 in other.c.items():
                k = k1 + k2
                w = out.get(k, Fraction(0)) + v1 * v2
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        return LaurentPolynomial(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, scalar):
        s = Fraction(scalar)
        return LaurentPolynomial({k: v / s for k, v in self.c.items()})

    def __pow__(self, n: int):
        if len(self.c) == 1:
            ((k, v),) = self.c.items()
            return LaurentPolynomial({k * n: v**n})
        if n < 0:
            raise ValueError("negative powers only for monomials")
        out = LaurentPolynomial.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        return LaurentPolynomial.const(other)

    # -- structure ----------------------------------------------------------
    def degree(self) -> int:
        if not self.c:
            raise ValueError("degree of zero")
        return max(self.c)

    def valuation(self) -> int:
        if not self.c:
            raise ValueError("valuation of zero")
        return min(self.c)

    def coeff(self, k: int) -> Fraction:
        return self.c.get(k, Fraction(0))

    def is_polynomial(self) -> bool:
        return all(k >= 0 for k in self.c)

    def substitute(self, coeff, exp: int) -> "LaurentPolynomial":
        """X -> coeff * X^exp with rational coeff, exp in {1,-1,2,-2,...}."""
        coeff = Fraction(coeff)
        out: dict[int, Fraction] = {}
        for k, v in self.c.items():
            kk = k * exp
            w = out.get(kk, Fraction(0)) + v * coeff**k
            if w:
                out[kk] = w
            else:
                out.pop(kk, None)
        return LaurentPolynomial(out)

    def evaluate(self, x):
        """Evaluate at an invertible value supporting ** with int exponents."""
        total = None
        for k, v in sorted(self.c.items()):
            term = x**k * v if k >= 0 else v / (x ** (-k))
            total = term if total is None else total + term
        if total is None:
            return Fraction(0)
        return total

    def evaluate_fraction(self, x) -> Fraction:
        x = Fraction(x)
        out = Fraction(0)
        for k, v in self.c.items():
            out += v * x**k
        return out

    def symmetry_sign(self):
        """+1/-1 if invariant/anti-invariant under X -> X^{-1}, else None."""
        flip = LaurentPolynomial({-k: v for k, v in self.c.items()})
        if flip == self:
            return 1
        if flip == -self:
            return -1
        return None

    def to_json_dict(self) -> dict:
        return {str(k): f"{v.numerator}/{v.denominator}" for k, v in sorted(self.c.items())}

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for k in sorted(self.c):
            parts.append(f"({self.c[k]})X^{k}" if k else f"({self.c[k]})")
        return " + ".join(parts)


LZERO = LaurentPolynomial()
LONE = LaurentPolynomial.const(1)


class TruncatedSeries:
    """Power series in t to order N with LaurentPolynomial coefficients."""

    __slots__ = ("N", "a")

    def __init__(self, N: int, coeffs=None):
        self.N = N
        self.a: list[LaurentPolynomial] = [LaurentPolynomial() for _ in range(N + 1)]
        if coeffs is not None:
            for i, cf in enumerate(coeffs[: N + 1]):
                self.a[i] = cf if isinstance(cf, LaurentPolynomial) else LaurentPolynomial.const(cf)

    @classmethod
    def one(cls, N: int) -> "TruncatedSeries":
        s = cls(N)
        s.a[0] = LaurentPolynomial.const(1)
        return s

    def coeff(self, i: int) -> LaurentPolynomial:
        return self.a[i]

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.N == other.N
            and all(x == y for x, y in zip(self.a, other.a))
        )

    def __add__(self, other):
        other = self._coerce(other)
        N = min(self.N, other.N)
        out = TruncatedSeries(N)
        for i in range(N + 1):
            out.a[i] = self.a[i] + other.a[i]
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        N = min(self.N, other.N)
        out = TruncatedSeries(N)
        for i in range(N + 1):
            out.a[i] = self.a[i] - other.a[i]
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPolynomial)):
            lp = other if isinstance(other, LaurentPolynomial) else LaurentPolynomial.const(other)
            out = TruncatedSeries(self.N)
            out.a = [c * lp for c in self.a]
            return out
        N = min(self.N, other.N)
        out = TruncatedSeries(N)
        for i in range(N + 1):
            acc = LaurentPolynomial()
            for j in range(i + 1):
                if self.a[j] and other.a[i - j]:
                    acc = acc + self.a[j] * other.a[i - j]
            out.a[i] = acc
        return out

    def __rmul__(self, other):
        return self.__mul__(other)

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        s = TruncatedSeries(self.N)
        s.a[0] = other if isinstance(other, LaurentPolynomial) else LaurentPolynomial.const(other)
        return s

    def shift_t(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k."""
        out = TruncatedSeries(self.N)
        for i in range(self.N + 1 - k):
            out.a[i + k] = self.a[i]
        return out

    def __repr__(self):
        return " + ".join(f"[{c}] t^{i}" for i, c in enumerate(self.a)) or "0"


def geometric(gamma: LaurentPolynomial, N: int) -> TruncatedSeries:
    """1/(1 - gamma*t) expanded to order N; gamma a Laurent polynomial in X."""
    out = TruncatedSeries(N)
    cur = LaurentPolynomial.const(1)
    for i in range(N + 1):
        out.a[i] = cur
        if i < N:
            cur = cur * gamma
    return out


def expand_reciprocal_factors(factors, N: int) -> TruncatedSeries:
    """Product of 1/(1-gamma_i t) over the given Laurent gammas."""
    out = TruncatedSeries.one(N)
    for g in factors:
        out = out * geometric(g, N)
    return out


def phi(m: int, q: Fraction) -> Fraction:
    """phi_m(q) = prod_{i=1}^m (1 - q^i)."""
    q = Fraction(q)
    out = Fraction(1)
    for i in range(1, m + 1):
        out *= 1 - q**i
    return out


class ClosedSeries:
    """Sum of terms c * t^shift / prod(1 - gamma_j t), factored, lazily expanded.

    c is a LaurentPolynomial in X (usually a constant), gamma_j Laurent monomials.
    Equality testing must go through expand(); factored forms are not compared.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # each term: (coeff: LaurentPolynomial, shift: int, gammas: tuple[LaurentPolynomial])
        self.terms = list(terms or [])

    def add_term(self, coeff, shift: int, gammas):
        if not isinstance(coeff, LaurentPolynomial):
            coeff = LaurentPolynomial.const(coeff)
        self.terms.append((coeff, shift, tuple(gammas)))

    def expand(self, N: int) -> TruncatedSeries:
        out = TruncatedSeries(N)
        for coeff, shift, gammas in self.terms:
            piece = expand_reciprocal_factors(gammas, N) * coeff
            piece = piece.shift_t(shift)
            out = out + piece
        return out

    def scaled(self, factor) -> "ClosedSeries":
        if not isinstance(factor, LaurentPolynomial):
            factor = LaurentPolynomial.const(factor)
        return ClosedSeries(
            [(c * factor, s, g) for (c, s, g) in self.terms]
        )

    def substitute_t_scale(self, lam: LaurentPolynomial) -> "ClosedSeries":
        """t -> lam * t with lam a Laurent monomial (e.g. X^{-1} or -1)."""
        out = []
        for c, s, gammas in self.terms:
            out.append((c * lam**s if s else c, s, tuple(g * lam for g in gammas)))
        return ClosedSeries(out)

    def __add__(self, other):
        return ClosedSeries(self.terms + other.terms)

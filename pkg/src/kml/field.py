"""Local and global field data for K = Q(sqrt(-D)) and its completions."""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from fractions import Fraction

from .numtheory import (
    hilbert_symbol,
    is_fundamental_discriminant,
    is_prime,
    kronecker,
    ord_p,
    unit_part,
)

SPLIT = "split"
INERT = "inert"
RAMIFIED = "ramified"

H1_DISCS = (3, 4, 7, 8, 11, 19, 43, 67, 163)


@dataclass(frozen=True)
class LocalField:
    """Completion data of Q(sqrt(-D)) at p.

    omega_tr/omega_nm are trace and norm of the integral generator omega,
    so O_p = Z_p + Z_p*omega with omega^2 = tr*omega - nm.
    """

    p: int
    D: int
    split_type: str
    f_p: int
    e_p: int
    i_p: int
    xi_p: int
    omega_tr: int
    omega_nm: int

    @property
    def ramified(self) -> bool:
        return self.split_type == RAMIFIED

    @property
    def unramified(self) -> bool:
        return self.split_type == INERT

    @property
    def split(self) -> bool:
        return self.split_type == SPLIT

    def chi(self, x) -> int:
        """Quadratic character of Q_p^* attached to K_p (trivial on norms)."""
        x = Fraction(x)
        if x == 0:
            raise ValueError("chi of 0")
        return hilbert_symbol(-self.D, x, self.p)

    def is_local_norm_unit(self, u) -> bool:
        """Unit u of Z_p lies in N(O_p^*)?  (Always true unless ramified.)"""
        if not self.ramified:
            return True
        return self.chi(u) == 1

    def same_unit_class(self, u, v) -> bool:
        return self.is_local_norm_unit(Fraction(u) / Fraction(v))

    def nonnorm_unit(self) -> int:
        """Smallest positive integer that is a unit and not a local norm."""
        if not self.ramified:
            raise ValueError("unit classes collapse unless K_p/Q_p is ramified")
        n = 2
        while True:
            if n % self.p and self.chi(n) == -1:
                return n
            n += 1

    def unit_class_reps(self) -> list[int]:
        """Representatives N_p of Z_p^* / N(O_p^*)."""
        if self.ramified:
            return [1, self.nonnorm_unit()]
        return [1]

    def normalize_unit(self, u) -> int:
        """Canonical representative in unit_class_reps() of the class of u."""
        for r in self.unit_class_reps():
            if self.same_unit_class(u, r):
                return r
        raise AssertionError("unit class representative not found")

    @property
    def residue_size(self) -> int:
        """Size of O_p/varpi O_p (p^2 inert, p otherwise)."""
        return self.p * self.p if self.unramified else self.p

    @property
    def nu_of_p(self) -> int:
        """nu(p) = ord_p N(p): 2 always (p = varpi^2*unit or varpi*varpi-bar or p)."""
        return 2

    def nu_det_scale(self) -> int:
        """nu(det) of the coset generator diag(1,..,varpi): 2 if inert else 1."""
        return 2 if self.unramified else 1

    def key(self) -> tuple:
        return (self.p, self.D)


def omega_data(D: int) -> tuple[int, int]:
    """Trace and norm of the standard integral generator of O."""
    if D % 4 == 3:
        return 1, (1 + D) // 4
    return 0, D // 4


def make_local_field(p: int, D: int) -> LocalField:
    """Assemble splitting data of K_p for K = Q(sqrt(-D))."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if D <= 0 or not is_fundamental_discriminant(-D):
        raise ValueError(f"-{D} is not a fundamental imaginary quadratic discriminant")
    chi_p = kronecker(-D, p)
    if chi_p == 1:
        split_type = SPLIT
    elif chi_p == -1:
        split_type = INERT
    else:
        split_type = RAMIFIED
    if split_type == RAMIFIED:
        f_p = ord_p(D, p)
        e_p = f_p - (1 if p == 2 else 0)
    else:
        f_p = e_p = 0
    i_p = 0 if (p == 2 and f_p == 2) else 1
    xi_p = chi_p
    tr, nm = omega_data(D)
    return LocalField(
        p=p,
        D=D,
        split_type=split_type,
        f_p=f_p,
        e_p=e_p,
        i_p=i_p,
        xi_p=xi_p,
        omega_tr=tr,
        omega_nm=nm,
    )


@dataclass(frozen=True)
class GlobalField:
    """Class-number-one imaginary quadratic field Q(sqrt(-D))."""

    D: int
    local: dict = dfield(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.D not in H1_DISCS:
            raise ValueError(f"D = {self.D} is not a class-number-one discriminant")

    def chi(self, n: int) -> int:
        return kronecker(-self.D, n)

    @property
    def c_D(self) -> int:
        return 1 if self.D % 2 == 0 else 0

    @property
    def ramified_primes(self) -> list[int]:
        from .numtheory import factorize

        return sorted(factorize(self.D))

    @property
    def D_tilde(self) -> int:
        out = 1
        for q in self.ramified_primes:
            out *= q ** self.at(q).e_p
        return out

    def at(self, p: int) -> LocalField:
        if p not in self.local:
            self.local[p] = make_local_field(p, self.D)
        return self.local[p]

    def chi_q(self, q: int, a: int) -> int:
        """Prime-component chi_q of chi: chi on a' with a' = a mod D_q, 1 mod D/D_q."""
        if a % q == 0:
            return 0
        D_q = q ** ord_p(self.D, q)
        rest = self.D // D_q
        # CRT lift: a' = a mod D_q, a' = 1 mod rest
        if rest == 1:
            ap = a % D_q
        else:
            inv1 = pow(rest, -1, D_q)
            inv2 = pow(D_q, -1, rest)
            ap = (a * rest * inv1 + 1 * D_q * inv2) % (D_q * rest)
        return self.chi(ap)

    def chi_Q(self, Q: tuple[int, ...], a: int) -> int:
        out = 1
        for q in Q:
            out *= self.chi_q(q, a)
        return out

    def chi_Q_prime(self, Q: tuple[int, ...], a: int) -> int:
        out = 1
        for q in self.ramified_primes:
            if q not in Q:
                out *= self.chi_q(q, a)
        return out

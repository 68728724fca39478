"""Hermitian matrices over K = Q(sqrt(-D)) and the local lattices Her/Her-hat/Her-tilde."""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import permutations

from .field import LocalField
from .kelems import KElem
from .numtheory import ord_p


class HermitianMatrix:
    """m x m Hermitian matrix with exact K-entries."""

    __slots__ = ("m", "D", "rows")

    def __init__(self, rows, D: int | None = None):
        self.rows = [[e for e in r] for r in rows]
        self.m = len(self.rows)
        if D is None:
            D = self.rows[0][0].D if self.m else 0
        self.D = D
        for i in range(self.m):
            for j in range(self.m):
                e = self.rows[i][j]
                if not isinstance(e, KElem):
                    self.rows[i][j] = KElem(e, 0, D)
        for i in range(self.m):
            if self.rows[i][i].v != 0:
                raise ValueError("diagonal of a Hermitian matrix must be rational")
            for j in range(i + 1, self.m):
                if self.rows[j][i] != self.rows[i][j].conj():
                    raise ValueError("matrix is not Hermitian")

    # -- constructors -----------------------------------------------------
    @classmethod
    def diagonal(cls, values, D: int) -> "HermitianMatrix":
        m = len(values)
        rows = [
            [KElem(values[i], 0, D) if i == j else KElem(0, 0, D) for j in range(m)]
            for i in range(m)
        ]
        return cls(rows, D)

    @classmethod
    def identity(cls, m: int, D: int) -> "HermitianMatrix":
        return cls.diagonal([1] * m, D)

    @classmethod
    def zero(cls, m: int, D: int) -> "HermitianMatrix":
        return cls([[KElem(0, 0, D)] * m for _ in range(m)], D)

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def entry(self, i, j) -> KElem:
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, HermitianMatrix)
            and self.D == other.D
            and self.m == other.m
            and all(
                self.rows[i][j] == other.rows[i][j]
                for i in range(self.m)
                for j in range(self.m)
            )
        )

    def __hash__(self):
        return hash(self.key())

    def key(self) -> tuple:
        return (
            self.D,
            tuple(
                (self.rows[i][j].u, self.rows[i][j].v)
                for i in range(self.m)
                for j in range(self.m)
            ),
        )

    def __repr__(self):
        return f"Herm(m={self.m}, D={self.D}, {[[str(e) for e in r] for r in self.rows]})"

    # -- algebra ----------------------------------------------------------
    def det(self) -> Fraction:
        """Exact determinant (rational for Hermitian input)."""
        if self.m == 0:
            return Fraction(1)
        total = KElem(0, 0, self.D)
        for perm in permutations(range(self.m)):
            sign = _perm_sign(perm)
            prod = KElem(sign, 0, self.D)
            for i in range(self.m):
                prod = prod * self.rows[i][perm[i]]
            total = total + prod
        assert total.v == 0, "determinant of Hermitian matrix must be rational"
        return total.u

    def gamma(self) -> Fraction:
        """gamma(T) = (-D)^[m/2] * det T."""
        return Fraction(-self.D) ** (self.m // 2) * self.det()

    def scale(self, c) -> "HermitianMatrix":
        c = Fraction(c)
        return HermitianMatrix(
            [[e * KElem(c, 0, self.D) for e in r] for r in self.rows], self.D
        )

    def transform(self, U) -> "HermitianMatrix":
        """Congruence A[U] = U^* A U; U is a list of KElem rows."""
        m = self.m
        n = len(U[0]) if U else 0
        AU = [
            [sum((self.rows[i][k] * U[k][j] for k in range(m)), KElem(0, 0, self.D)) for j in range(n)]
            for i in range(m)
        ]
        out = [
            [
                sum((U[k][i].conj() * AU[k][j] for k in range(m)), KElem(0, 0, self.D))
                for j in range(n)
            ]
            for i in range(n)
        ]
        return HermitianMatrix(out, self.D)

    def perp(self, other: "HermitianMatrix") -> "HermitianMatrix":
        """Block-diagonal direct sum."""
        m, n = self.m, other.m
        z = KElem(0, 0, self.D)
        rows = []
        for i in range(m):
            rows.append(list(self.rows[i]) + [z] * n)
        for i in range(n):
            rows.append([z] * m + list(other.rows[i]))
        return HermitianMatrix(rows, self.D)

    def principal_minor(self, k: int) -> Fraction:
        return HermitianMatrix([r[:k] for r in self.rows[:k]], self.D).det()

    def is_positive_definite(self) -> bool:
        return all(self.principal_minor(k) > 0 for k in range(1, self.m + 1))

    def inverse(self) -> list[list[KElem]]:
        """Exact inverse as a list of KElem rows (not Hermitian-typed)."""
        m = self.m
        aug = [
            [self.rows[i][j] for j in range(m)]
            + [KElem(1 if i == j else 0, 0, self.D) for j in range(m)]
            for i in range(m)
        ]
        for col in range(m):
            piv = next((r for r in range(col, m) if aug[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = KElem(1, 0, self.D) / aug[col][col]
            aug[col] = [e * inv for e in aug[col]]
            for r in range(m):
                if r != col and aug[r][col]:
                    c = aug[r][col]
                    aug[r] = [a - c * b for a, b in zip(aug[r], aug[col])]
        return [row[m:] for row in aug]

    def submatrix(self, idx) -> "HermitianMatrix":
        return HermitianMatrix(
            [[self.rows[i][j] for j in idx] for i in idx], self.D
        )

    # -- local lattice membership ------------------------------------------
    def in_her(self, fld: LocalField) -> bool:
        """Entries in O_p (diagonal automatically in Z_p)."""
        return all(e.in_O_p(fld.p) for r in self.rows for e in r)

    def in_her_hat(self, fld: LocalField) -> bool:
        """Semi-integral: diagonal in Z_p, sqrt(-D)*T entrywise in O_p."""
        p = fld.p
        root = KElem(0, 1, self.D)
        for i in range(self.m):
            d = self.rows[i][i].u
            if d.denominator % p == 0:
                return False
        return all((root * e).in_O_p(p) for r in self.rows for e in r)

    def in_her_tilde(self, fld: LocalField) -> bool:
        """Membership in p^{e_p} * Her-hat."""
        if fld.e_p == 0:
            return self.in_her_hat(fld)
        return self.scale(Fraction(1, fld.p**fld.e_p)).in_her_hat(fld)

    def in_her_star(self, fld: LocalField) -> bool:
        """The starred sets Her_{m,*} of Section 4.1."""
        p = fld.p
        if not (fld.ramified and p == 2):
            return self.in_her(fld)
        if not self.in_her(fld):
            return False
        # diagonal in pi*Z_p = 2*Z_2
        if any(
            self.rows[i][i].u != 0 and ord_p(self.rows[i][i].u, p) < 1
            for i in range(self.m)
        ):
            return False
        if fld.f_p == 2:
            # entries must lie in varpi*O_p
            return all((not e) or e.nu(p) >= 1 for r in self.rows for e in r)
        return True

    def e_bound(self, fld: LocalField) -> int:
        """Least e >= 0 with p^e * T^{-1} in Her-tilde (Lemma-4.1.1 bound)."""
        inv = self.inverse()
        for e in range(0, 2 * abs(ord_p(self.det(), fld.p)) + 2 * fld.e_p + 3):
            cand = HermitianMatrix(
                [[x * Fraction(fld.p) ** e for x in row] for row in inv], self.D
            )
            if cand.in_her_tilde(fld):
                return e
        raise AssertionError("e_bound search exhausted")

    # -- serialization ------------------------------------------------------
    def to_json(self) -> str:
        return json.dumps(
            {
                "m": self.m,
                "entries": [
                    [[str(e.u), str(e.v)] for e in row] for row in self.rows
                ],
            }
        )

    @classmethod
    def from_json(cls, text: str, D: int) -> "HermitianMatrix":
        obj = json.loads(text)
        m = obj["m"]
        ent = obj["entries"]
        if len(ent) != m or any(len(r) != m for r in ent):
            raise ValueError("entries shape does not match m")
        rows = [
            [KElem(Fraction(u), Fraction(v), D) for (u, v) in row] for row in ent
        ]
        return cls(rows, D)


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def theta_block(fld: LocalField) -> HermitianMatrix:
    """The plane [[0, varpi^{i_p}], [conj, 0]] over ramified K_p.

    varpi is taken as sqrt(-D) for p odd and D=8 (then pi = N(varpi) = D-part),
    and 1+i style generator for D=4; concretely we use varpi with
    N(varpi) = p * unit, represented exactly in K.
    """
    if not fld.ramified:
        raise ValueError("Theta blocks only exist for ramified K_p")
    w = local_uniformizer(fld)
    if fld.i_p == 0:
        w = KElem(1, 0, fld.D)
    z = KElem(0, 0, fld.D)
    return HermitianMatrix([[z, w], [w.conj(), z]], fld.D)


def theta_r(fld: LocalField, r: int) -> HermitianMatrix:
    if r % 2:
        raise ValueError("Theta_r needs even r")
    if r == 0:
        return HermitianMatrix.zero(0, fld.D)
    out = theta_block(fld)
    for _ in range(r // 2 - 1):
        out = out.perp(theta_block(fld))
    return out


def local_uniformizer(fld: LocalField) -> KElem:
    """A prime element varpi of K_p, as an exact element of K (ramified case).

    For D=4 we need nu(varpi)=1: 1+i works (norm 2).  Otherwise sqrt(-D) has
    nu = f_p; for p odd f=1 so sqrt(-D) works; for D=8, nu(sqrt(-8)) = 3, and
    sqrt(-8)/2 = sqrt(-2) is the generator with nu = 1: use omega.
    """
    if not fld.ramified:
        raise ValueError("uniformizer of O_p over Z_p only for ramified K_p")
    if fld.p == 2:
        if fld.D == 4:
            return KElem(1, Fraction(1, 2), 4)  # 1 + i, norm 2
        # D = 8-type: omega = sqrt(-D)/2 has norm D/4 = 2 * unit
        return KElem(0, Fraction(1, 2), fld.D)
    return KElem(0, 1, fld.D)  # sqrt(-D), norm D = p * unit


def xi_matrix(fld: LocalField, size: int) -> HermitianMatrix:
    """Xi_size: identity for unramified/split, Theta_size for ramified."""
    if fld.ramified:
        return theta_r(fld, size)
    return HermitianMatrix.identity(size, fld.D)


def her_tilde_min_ord(fld: LocalField, m: int) -> int:
    """Minimal ord_p(det T) over nondegenerate T in Her-tilde_m (0 if m = 0).

    Lower bound used to prune coset enumeration; planes contribute i_p,
    leftover lines contribute ord of the minimal diagonal (e_p * 2 / f_p ... ):
    lines in Her-tilde_1 = p^{e_p} Z_p have ord >= e_p.
    """
    if m == 0 or not fld.ramified:
        return 0
    return (m // 2) * fld.i_p + (m % 2) * fld.e_p

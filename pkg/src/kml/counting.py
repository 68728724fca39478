"""Exact solution counting for Hermitian congruences over O_p/p^a.

Three engines share one congruence compiler:
  raw   - flat enumeration of all candidate matrices (budgeted, chunked numpy)
  mitm  - l=1 block-histogram convolution (meet-in-the-middle over row blocks)
  dfs   - level-by-level Hensel lifting; also powers witness search and
          stabilizer enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import DEFAULT, BudgetExceeded, RunConfig
from .field import LocalField
from .kelems import KElem
from .matrices import HermitianMatrix
from .numtheory import fraction_mod

TILDE = "tilde"
HER = "her"


@dataclass
class CountingTask:
    """A density counting request: |A_a(A,B)| or |B_a(A,B)|."""

    A: HermitianMatrix
    B: HermitianMatrix
    a: int
    mode: str = "all"  # all | primitive
    lattice: str = TILDE


def _omega_params(fld: LocalField) -> tuple[int, int]:
    return fld.omega_tr, fld.omega_nm


def coords_mod(x: KElem, M: int) -> tuple[int, int]:
    cx, cy = x.o_coords()
    return fraction_mod(cx, M), fraction_mod(cy, M)


def _sqrtD_coord_matrix(fld: LocalField) -> tuple[int, int, int, int]:
    """Integer matrix of multiplication by sqrt(-D) on O-coordinates."""
    t, n = _omega_params(fld)
    # omega-action: (x,y) -> (-n*y, x+t*y); sqrt(-D) = 2*omega - t
    return (-t, -2 * n, 2, t)


class CongruenceSystem:
    """Compiled congruence A[X] == B mod p^a * L for X in M_{s,l}(O/p^a)."""

    def __init__(
        self,
        fld: LocalField,
        A: HermitianMatrix,
        B: HermitianMatrix,
        a: int,
        lattice: str = TILDE,
    ):
        self.fld = fld
        self.A = A
        self.B = B
        self.a = a
        self.lattice = lattice
        self.s = A.m
        self.l = B.m
        p = fld.p
        self.p = p
        e = fld.e_p if lattice == TILDE else 0
        self.e = e
        self.M = p ** (a + e)
        self.pa = p**a
        t, n = _omega_params(fld)
        self.t, self.n = t % self.M, n % self.M
        self.A_coords = [
            [coords_mod(A.entry(i, j), self.M) for j in range(self.s)]
            for i in range(self.s)
        ]
        self.B_coords = [
            [coords_mod(B.entry(i, j), self.M) for j in range(self.l)]
            for i in range(self.l)
        ]
        if lattice == TILDE:
            self.off_matrix = _sqrtD_coord_matrix(fld)
            self.off_modulus = p ** (a + e)
        else:
            self.off_matrix = (1, 0, 0, 1)
            self.off_modulus = p**a

    # -- vectorized O-arithmetic ------------------------------------------
    def _mul(self, x1, y1, x2, y2):
        M, t, n = self.M, self.t, self.n
        xr = (x1 * x2 - n * (y1 * y2) % M) % M
        yr = (x1 * y2 + y1 * x2 + t * (y1 * y2) % M) % M
        return xr, yr

    def _conj(self, x, y):
        return (x + self.t * y) % self.M, (-y) % self.M

    def gram_coords(self, X, Y):
        """Gram coordinates of A[X]: X,Y arrays shaped (n, s, l) mod p^a."""
        s, l, M = self.s, self.l, self.M
        nsamp = X.shape[0]
        gx = np.zeros((nsamp, l, l), dtype=np.int64)
        gy = np.zeros((nsamp, l, l), dtype=np.int64)
        # (A X): per (r, j): sum_c A[r][c] * X[c][j]
        axx = np.zeros((nsamp, s, l), dtype=np.int64)
        axy = np.zeros((nsamp, s, l), dtype=np.int64)
        for r in range(s):
            for c in range(s):
                ax, ay = self.A_coords[r][c]
                if ax == 0 and ay == 0:
                    continue
                mx, my = self._mul(ax, ay, X[:, c, :], Y[:, c, :])
                axx[:, r, :] = (axx[:, r, :] + mx) % M
                axy[:, r, :] = (axy[:, r, :] + my) % M
        # X^* (A X): entry (i,j) = sum_r conj(X[r][i]) * AX[r][j]
        for i in range(self.l):
            for j in range(self.l):
                accx = np.zeros(nsamp, dtype=np.int64)
                accy = np.zeros(nsamp, dtype=np.int64)
                for r in range(s):
                    cx, cy = self._conj(X[:, r, i], Y[:, r, i])
                    mx, my = self._mul(cx, cy, axx[:, r, j], axy[:, r, j])
                    accx = (accx + mx) % M
                    accy = (accy + my) % M
                gx[:, i, j] = accx
                gy[:, i, j] = accy
        return gx, gy

    def satisfied(self, X, Y):
        """Boolean mask of candidates satisfying all congruences."""
        gx, gy = self.gram_coords(X, Y)
        Mo = self.off_modulus
        p, a, e = self.p, self.a, self.e
        diag_mod = p ** (a + e)
        mask = np.ones(X.shape[0], dtype=bool)
        for i in range(self.l):
            bx, _ = self.B_coords[i][i]
            mask &= (gx[:, i, i] - bx) % diag_mod == 0
        s11, s12, s21, s22 = self.off_matrix
        for i in range(self.l):
            for j in range(i + 1, self.l):
                bx, by = self.B_coords[i][j]
                zx = (gx[:, i, j] - bx) % self.M
                zy = (gy[:, i, j] - by) % self.M
                w1 = (s11 * zx + s12 * zy) % Mo
                w2 = (s21 * zx + s22 * zy) % Mo
                mask &= (w1 == 0) & (w2 == 0)
        return mask


class PrimitivityTester:
    """Primitivity of X in M_{s,l}(O_p) is a property of X mod varpi."""

    def __init__(self, fld: LocalField, s: int, l: int):
        self.fld = fld
        self.s = s
        self.l = l
        self.p = fld.p
        t, n = _omega_params(fld)
        if fld.split:
            roots = [r for r in range(fld.p) if (r * r - t * r + n) % fld.p == 0]
            assert len(roots) == 2, "split residue polynomial must have two roots"
            self.roots = roots
        elif fld.ramified:
            roots = [r for r in range(fld.p) if (r * r - t * r + n) % fld.p == 0]
            assert roots, "ramified residue polynomial must have a double root"
            self.roots = [roots[0]]
        else:
            self.roots = []

    def mask(self, X, Y):
        """X,Y shaped (n, s, l); arbitrary modulus, reduced mod p here."""
        p = self.p
        Xp, Yp = X % p, Y % p
        if self.fld.split:
            m1 = self._rank_full((Xp + self.roots[0] * Yp) % p)
            m2 = self._rank_full((Xp + self.roots[1] * Yp) % p)
            return m1 & m2
        if self.fld.ramified:
            return self._rank_full((Xp + self.roots[0] * Yp) % p)
        return self._rank_full_quadratic(Xp, Yp)

    def _rank_full(self, Z):
        """rank l over F_p for (n, s, l) integer arrays."""
        from itertools import combinations

        n, s, l = Z.shape
        p = self.p
        if l == 1:
            return (Z[:, :, 0] % p != 0).any(axis=1)
        out = np.zeros(n, dtype=bool)
        for rows in combinations(range(s), l):
            sub = Z[:, rows, :]
            if l == 2:
                det = (sub[:, 0, 0] * sub[:, 1, 1] - sub[:, 0, 1] * sub[:, 1, 0]) % p
            elif l == 3:
                det = (
                    sub[:, 0, 0] * (sub[:, 1, 1] * sub[:, 2, 2] - sub[:, 1, 2] * sub[:, 2, 1])
                    - sub[:, 0, 1] * (sub[:, 1, 0] * sub[:, 2, 2] - sub[:, 1, 2] * sub[:, 2, 0])
                    + sub[:, 0, 2] * (sub[:, 1, 0] * sub[:, 2, 1] - sub[:, 1, 1] * sub[:, 2, 0])
                ) % p
            else:
                raise NotImplementedError("primitivity for l > 3")
            out |= det != 0
        return out

    def _rank_full_quadratic(self, Xp, Yp):
        """Inert case: rank over F_{p^2} with entries x + y*omega."""
        from itertools import combinations

        n, s, l = Xp.shape
        p = self.p
        t, nn = _omega_params(self.fld)
        if l == 1:
            return ((Xp[:, :, 0] % p != 0) | (Yp[:, :, 0] % p != 0)).any(axis=1)
        out = np.zeros(n, dtype=bool)

        def mul(a, b):
            return (
                (a[0] * b[0] - nn * a[1] * b[1]) % p,
                (a[0] * b[1] + a[1] * b[0] + t * a[1] * b[1]) % p,
            )

        for rows in combinations(range(s), l):
            xs = Xp[:, rows, :]
            ys = Yp[:, rows, :]
            if l == 2:
                d1 = mul((xs[:, 0, 0], ys[:, 0, 0]), (xs[:, 1, 1], ys[:, 1, 1]))
                d2 = mul((xs[:, 0, 1], ys[:, 0, 1]), (xs[:, 1, 0], ys[:, 1, 0]))
                dx, dy = (d1[0] - d2[0]) % p, (d1[1] - d2[1]) % p
            elif l == 3:
                dx = np.zeros(n, dtype=np.int64)
                dy = np.zeros(n, dtype=np.int64)
                from itertools import permutations

                for perm in permutations(range(3)):
                    sgn = _perm_sign3(perm)
                    prod = (np.full(n, sgn, dtype=np.int64) % p, np.zeros(n, dtype=np.int64))
                    for i in range(3):
                        prod = mul(prod, (xs[:, i, perm[i]], ys[:, i, perm[i]]))
                    dx = (dx + prod[0]) % p
                    dy = (dy + prod[1]) % p
            else:
                raise NotImplementedError
            out |= (dx != 0) | (dy != 0)
        return out


def _perm_sign3(perm):
    inv = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return 1 if inv % 2 == 0 else -1


# ---------------------------------------------------------------------------
# raw engine
# ---------------------------------------------------------------------------


def raw_count(
    fld: LocalField,
    A: HermitianMatrix,
    B: HermitianMatrix,
    a: int,
    mode: str = "all",
    lattice: str = TILDE,
    cfg: RunConfig = DEFAULT,
) -> int:
    """|A_a| or |B_a| by flat enumeration of M_{s,l}(O/p^a)."""
    s, l, p = A.m, B.m, fld.p
    if l == 0:
        return 1
    ncoords = 2 * s * l
    total = p ** (a * ncoords)
    cfg.check("raw_budget", total)
    sys_ = CongruenceSystem(fld, A, B, a, lattice)
    prim = PrimitivityTester(fld, s, l) if mode == "primitive" else None
    pa = p**a
    chunk = 1 << 18
    count = 0
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        ks = np.arange(start, stop, dtype=np.int64)
        digits = np.empty((stop - start, ncoords), dtype=np.int64)
        rem = ks.copy()
        for d in range(ncoords):
            digits[:, d] = rem % pa
            rem //= pa
        X = digits[:, : s * l].reshape(-1, s, l)
        Y = digits[:, s * l :].reshape(-1, s, l)
        mask = sys_.satisfied(X, Y)
        if prim is not None:
            mask &= prim.mask(X, Y)
        count += int(mask.sum())
    return count


# ---------------------------------------------------------------------------
# dfs engine (level lifting)
# ---------------------------------------------------------------------------


class DfsLifter:
    """Solutions of A[X] = B mod p^j * L built level by level in j."""

    def __init__(
        self,
        fld: LocalField,
        A: HermitianMatrix,
        B: HermitianMatrix,
        lattice: str = TILDE,
        primitive: bool = False,
        cfg: RunConfig = DEFAULT,
        cap: int | None = None,
    ):
        self.fld = fld
        self.A = A
        self.B = B
        self.lattice = lattice
        self.primitive = primitive
        self.cfg = cfg
        self.cap = cap  # witness-hunt mode: keep at most cap states per level
        self.pruned = False  # set when cap truncation actually dropped states
        self.s, self.l = A.m, B.m
        self.p = fld.p

    def solutions_at(self, a: int) -> np.ndarray:
        """Coordinate array (n, 2*s*l) of solutions mod p^a (columns x then y)."""
        p, s, l = self.p, self.s, self.l
        ncoords = 2 * s * l
        cfg = self.cfg
        level1 = p**ncoords
        cfg.check("dfs_budget", level1)
        digits = np.empty((level1, ncoords), dtype=np.int64)
        rem = np.arange(level1, dtype=np.int64)
        for d in range(ncoords):
            digits[:, d] = rem % p
            rem //= p
        sols = self._filter_level(digits, 1)
        if self.primitive:
            X = sols[:, : s * l].reshape(-1, s, l)
            Y = sols[:, s * l :].reshape(-1, s, l)
            sols = sols[PrimitivityTester(self.fld, s, l).mask(X, Y)]
        if self.cap is not None and len(sols) > self.cap:
            sols = sols[: self.cap]
            self.pruned = True
        for j in range(1, a):
            if len(sols) == 0:
                return sols
            cfg.check("dfs_budget", len(sols) * level1)
            pj = p**j
            lift = np.empty((level1, ncoords), dtype=np.int64)
            rem = np.arange(level1, dtype=np.int64)
            for d in range(ncoords):
                lift[:, d] = rem % p
                rem //= p
            lift *= pj
            out_blocks = []
            max_block = max(1, (1 << 20) // level1)
            for start in range(0, len(sols), max_block):
                blk = sols[start : start + max_block]
                cand = (blk[:, None, :] + lift[None, :, :]).reshape(-1, ncoords)
                keep = self._filter_level(cand, j + 1)
                out_blocks.append(keep)
                if self.cap is not None and sum(len(b) for b in out_blocks) >= self.cap:
                    if start + max_block < len(sols):
                        self.pruned = True
                    break
            sols = np.concatenate(out_blocks) if out_blocks else sols[:0]
            if self.cap is not None and len(sols) > self.cap:
                sols = sols[: self.cap]
                self.pruned = True
            cfg.check("dfs_budget", len(sols))
        return sols

    def _filter_level(self, cand: np.ndarray, j: int) -> np.ndarray:
        s, l = self.s, self.l
        sys_ = CongruenceSystem(self.fld, self.A, self.B, j, self.lattice)
        X = cand[:, : s * l].reshape(-1, s, l)
        Y = cand[:, s * l :].reshape(-1, s, l)
        mask = sys_.satisfied(X, Y)
        return cand[mask]

    def count_at(self, a: int) -> int:
        return len(self.solutions_at(a))

    def find_witness(self, a: int):
        """One solution mod p^a (as an s x l KElem matrix), or None."""
        sols = self.solutions_at(a)
        if len(sols) == 0:
            return None
        row = sols[0]
        s, l = self.s, self.l
        X = row[: s * l].reshape(s, l)
        Y = row[s * l :].reshape(s, l)
        return [
            [
                KElem.from_o_coords(int(X[i][j]), int(Y[i][j]), self.fld.D)
                for j in range(l)
            ]
            for i in range(s)
        ]

    def determinant_values(self, a: int) -> set[tuple[int, int]]:
        """O-coordinates mod p^a of det(X) over all solutions (s = l <= 2)."""
        sols = self.solutions_at(a)
        s = self.s
        assert s == self.l <= 2
        M = self.p**a
        sys_ = CongruenceSystem(self.fld, self.A, self.B, a, self.lattice)
        X = sols[:, : s * s].reshape(-1, s, s) % M
        Y = sols[:, s * s :].reshape(-1, s, s) % M
        if s == 1:
            dx, dy = X[:, 0, 0], Y[:, 0, 0]
        else:
            m1 = sys_._mul(X[:, 0, 0], Y[:, 0, 0], X[:, 1, 1], Y[:, 1, 1])
            m2 = sys_._mul(X[:, 0, 1], Y[:, 0, 1], X[:, 1, 0], Y[:, 1, 0])
            dx, dy = (m1[0] - m2[0]) % M, (m1[1] - m2[1]) % M
        return set(zip(dx.tolist(), dy.tolist()))


# ---------------------------------------------------------------------------
# mitm engine (l = 1, block-diagonal A)
# ---------------------------------------------------------------------------


def _diagonal_blocks(A: HermitianMatrix):
    """Split a block-diagonal Hermitian matrix into connected blocks."""
    m = A.m
    adj = [[i] for i in range(m)]
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(m):
        for j in range(i + 1, m):
            if A.entry(i, j):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    return [sorted(g) for g in groups.values()]


def _block_histogram(
    fld: LocalField,
    block: HermitianMatrix,
    a: int,
    modulus: int,
    restricted: bool,
    cfg: RunConfig,
) -> dict[int, int]:
    """Histogram of block[x] mod modulus over x in (O/p^a)^k (k = 1 or 2).

    restricted: domain limited to entries in varpi*O (for primitive counts).
    """
    p = fld.p
    k = block.m
    pa = p**a
    t, n = _omega_params(fld)
    if k == 1:
        cfg.check("mitm_budget", pa * pa)
        c = block.entry(0, 0).u
        cm = fraction_mod(c, modulus)
        xs = np.arange(pa, dtype=np.int64)
        X, Y = np.meshgrid(xs, xs, indexing="ij")
        X, Y = X.ravel(), Y.ravel()
        if restricted:
            X, Y = _restrict_varpi(fld, X, Y)
        norms = (X * X + t * X * Y + n * Y * Y) % modulus
        vals = cm * norms % modulus
        binc = np.bincount(vals, minlength=1)
        return {int(v): int(c_) for v, c_ in enumerate(binc) if c_}
    if k == 2:
        total = pa**4
        cfg.check("raw_budget", total)
        sys_ = CongruenceSystem(fld, block, HermitianMatrix.diagonal([0], fld.D), a)
        acc = np.zeros(modulus, dtype=np.int64)
        chunk = 1 << 18
        for start in range(0, total, chunk):
            stop = min(start + chunk, total)
            ks = np.arange(start, stop, dtype=np.int64)
            digits = np.empty((stop - start, 4), dtype=np.int64)
            rem = ks
            for d in range(4):
                digits[:, d] = rem % pa
                rem = rem // pa
            X = digits[:, :2].reshape(-1, 2, 1)
            Y = digits[:, 2:].reshape(-1, 2, 1)
            if restricted:
                keep = _varpi_mask(fld, X, Y)
                X, Y = X[keep], Y[keep]
            if len(X) == 0:
                continue
            gx, _ = sys_.gram_coords(X, Y)
            acc += np.bincount(gx[:, 0, 0] % modulus, minlength=modulus)
        return {int(v): int(c_) for v, c_ in enumerate(acc) if c_}
    raise NotImplementedError("histogram blocks of size > 2")


def _restrict_varpi(fld: LocalField, X, Y):
    keep = _varpi_scalar_mask(fld, X, Y)
    return X[keep], Y[keep]


def _varpi_scalar_mask(fld: LocalField, X, Y):
    p = fld.p
    t, n = _omega_params(fld)
    if fld.split:
        roots = [r for r in range(p) if (r * r - t * r + n) % p == 0]
        return ((X + roots[0] * Y) % p == 0) & ((X + roots[1] * Y) % p == 0)
    if fld.unramified:
        return (X % p == 0) & (Y % p == 0)
    roots = [r for r in range(p) if (r * r - t * r + n) % p == 0]
    return (X + roots[0] * Y) % p == 0


def _varpi_mask(fld: LocalField, X, Y):
    masks = None
    for i in range(X.shape[1]):
        m = _varpi_scalar_mask(fld, X[:, i, 0], Y[:, i, 0])
        masks = m if masks is None else (masks & m)
    return masks


def mitm_count_l1(
    fld: LocalField,
    A: HermitianMatrix,
    b: Fraction,
    a: int,
    mode: str = "all",
    lattice: str = TILDE,
    cfg: RunConfig = DEFAULT,
) -> int:
    """Count x in (O/p^a)^s with A[x] = b mod p^{a+e}Z, A block-diagonal."""
    p = fld.p
    e = fld.e_p if lattice == TILDE else 0
    modulus = p ** (a + e)
    blocks = [A.submatrix(g) for g in _diagonal_blocks(A)] if A.m else []
    target = fraction_mod(b, modulus)
    if mode == "all":
        return _mitm_chain(fld, blocks, a, modulus, target, False, cfg)
    # primitive = all - (all entries in varpi O)
    total = _mitm_chain(fld, blocks, a, modulus, target, False, cfg)
    divisible = _mitm_chain(fld, blocks, a, modulus, target, True, cfg)
    return total - divisible


def _mitm_chain(fld, blocks, a, modulus, target, restricted, cfg) -> int:
    state = {0: 1}
    for blk in blocks:
        hist = _block_histogram(fld, blk, a, modulus, restricted, cfg)
        cfg.check("mitm_budget", len(state) * len(hist))
        new: dict[int, int] = {}
        for sv, sc in state.items():
            for hv, hc in hist.items():
                key = (sv + hv) % modulus
                new[key] = new.get(key, 0) + sc * hc
        state = new
    return state.get(target, 0)


# ---------------------------------------------------------------------------
# public count with engine dispatch
# ---------------------------------------------------------------------------


def count(task: CountingTask, fld: LocalField, cfg: RunConfig = DEFAULT) -> int:
    """Exact |A_a(A,B)| / |B_a(A,B)| with automatic engine choice."""
    s, l, p = task.A.m, task.B.m, fld.p
    if l == 0:
        return 1
    raw_cost = p ** (2 * s * l * task.a)
    if raw_cost <= cfg.raw_budget:
        return raw_count(fld, task.A, task.B, task.a, task.mode, task.lattice, cfg)
    if l == 1 and _is_block_small(task.A):
        return mitm_count_l1(
            fld, task.A, task.B.entry(0, 0).u, task.a, task.mode, task.lattice, cfg
        )
    # dfs as a last resort
    lifter = DfsLifter(
        fld, task.A, task.B, task.lattice, task.mode == "primitive", cfg
    )
    return lifter.count_at(task.a)


def _is_block_small(A: HermitianMatrix) -> bool:
    return all(len(g) <= 2 for g in _diagonal_blocks(A))

"""Block reduction, equivalence testing and class enumeration of local Hermitian matrices.

Classification backends by splitting type:
  split    - Smith normal form of the residue component matrix (two-sided GL(Z_p));
  inert    - exact Jordan diagonalization (trace is surjective, norms hit all units);
  ramified - exact block reduction into lines p^j*d and planes; p odd uses proven
             canonical rules, p=2 decides equivalence by witness search mod p^{e+1}
             (Lemma-4.1.1 cutoff makes that search exact).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

from .config import DEFAULT, BudgetExceeded, RunConfig
from .counting import DfsLifter
from .field import LocalField
from .kelems import KElem
from .matrices import HermitianMatrix, local_uniformizer, theta_block, theta_r
from .numtheory import fraction_mod, ord_p, sqrt_mod_prime_power


# ---------------------------------------------------------------------------
# valuations and residue helpers
# ---------------------------------------------------------------------------


def nu(x: KElem, p: int):
    """nu(x) = ord_p N(x); None for 0."""
    if not x:
        return None
    return ord_p(x.norm(), p)


def residue_reps(fld: LocalField, c: int) -> list[KElem]:
    """Exact representatives of O_p / varpi^c (field case only)."""
    p, D = fld.p, fld.D
    if fld.unramified:
        half, r = divmod(c, 2)
        assert r == 0, "inert varpi = p has even nu only"
        pc = p**half
        return [
            KElem.from_o_coords(x, y, D) for x in range(pc) for y in range(pc)
        ]
    w = local_uniformizer(fld)
    reps = [KElem(0, 0, D)]
    wpow = KElem(1, 0, D)
    for _ in range(c):
        reps = [r + d * wpow for r in reps for d in range(p)]
        wpow = wpow * w
    return reps


def split_roots_mod(fld: LocalField, N: int) -> tuple[int, int]:
    """The two roots of z^2 - t z + n mod p^N (split case), Hensel lifted."""
    t, n = fld.omega_tr, fld.omega_nm
    disc = t * t - 4 * n  # = -D, a unit square mod p
    r = sqrt_mod_prime_power(disc % fld.p**N, fld.p, N)
    assert r is not None, "split field must have square discriminant"
    pN = fld.p**N
    if fld.p == 2:
        # t odd here (D = 3 mod 4); (t+r)/2 needs r = t mod 2
        if (t - r) % 2:
            r = (pN - r) % pN
        assert (t - r) % 2 == 0
        inv2 = pow(2, -1, pN) if pN % 2 else None
        # p=2 cannot be split with D = 0 mod 4; D odd => work in halves exactly
        r1 = (t + r) // 2 % pN if (t + r) % 2 == 0 else None
        r2 = (t - r) // 2 % pN if (t - r) % 2 == 0 else None
        assert r1 is not None and r2 is not None
        return r1, r2
    inv2 = pow(2, -1, pN)
    return (t + r) * inv2 % pN, (t - r) * inv2 % pN


def split_component(fld: LocalField, A: HermitianMatrix, N: int):
    """First-component residue matrix of A mod p^N (entries x + y*omega1)."""
    r1, _ = split_roots_mod(fld, N)
    pN = fld.p**N
    out = []
    for row in A.rows:
        line = []
        for e in row:
            x, y = e.o_coords()
            line.append((fraction_mod(x, pN) + r1 * fraction_mod(y, pN)) % pN)
        out.append(line)
    return out


def smith_valuations(mat, p: int, N: int, denom: int = 0) -> list[int]:
    """Valuations of the Smith form of an integer residue matrix mod p^N.

    denom: subtract this from every valuation (matrix given as num/p^denom).
    Raises if a pivot valuation reaches the precision guard.
    """
    m = len(mat)
    a = [row[:] for row in mat]
    pN = p**N
    vals: list[int] = []
    size = m
    top = 0
    guard = N - 1
    while top < size:
        best = None
        for i in range(top, size):
            for j in range(top, size):
                x = a[i][j] % pN
                if x:
                    v = 0
                    while x % p == 0:
                        x //= p
                        v += 1
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            raise ValueError("singular residue matrix (or precision loss)")
        v, bi, bj = best
        if v >= guard:
            raise ValueError("smith precision guard hit; increase N")
        a[top], a[bi] = a[bi], a[top]
        for row in a:
            row[top], row[bj] = row[bj], row[top]
        piv = a[top][top]
        piv_unit = piv // p**v
        inv = pow(piv_unit % pN, -1, pN)
        for i in range(top + 1, size):
            if a[i][top] % p**v:
                raise ValueError("pivot was not minimal")
            f = (a[i][top] // p**v) * inv % pN
            for j in range(top, size):
                a[i][j] = (a[i][j] - f * a[top][j]) % pN
        for j in range(top + 1, size):
            if a[top][j] % p**v:
                raise ValueError("pivot was not minimal")
            f = (a[top][j] // p**v) * inv % pN
            for i in range(top, size):
                a[i][j] = (a[i][j] - f * a[i][top]) % pN
        vals.append(v - denom)
        top += 1
    return sorted(vals)


def split_class_vals(fld: LocalField, A: HermitianMatrix, extra: int = 8) -> list[int]:
    """Smith valuations classifying a split Hermitian matrix."""
    det = A.det()
    N = abs(ord_p(det, fld.p)) + extra
    # clear denominators: entries of A are p-integral for our inputs
    return smith_valuations(split_component(fld, A, N), fld.p, N)


# ---------------------------------------------------------------------------
# block reduction (field cases)
# ---------------------------------------------------------------------------


def _pivot_candidates(fld: LocalField) -> list[KElem]:
    p, D = fld.p, fld.D
    return [KElem.from_o_coords(x, y, D) for x in range(p) for y in range(p)]


def jordan_blocks(fld: LocalField, A: HermitianMatrix) -> list[HermitianMatrix]:
    """Orthogonal block decomposition: 1x1 lines and 2x2 planes (field cases).

    Split input is rejected (use split_class_vals); the result blocks are
    GL-equivalent to A when reassembled as a perp sum.
    """
    if fld.split:
        raise ValueError("use the Smith backend for split fields")
    p = fld.p
    work = HermitianMatrix([[e for e in row] for row in A.rows], A.D)
    blocks: list[HermitianMatrix] = []
    while work.m:
        m = work.m
        eps, pos = None, None
        for i in range(m):
            for j in range(m):
                v = nu(work.entry(i, j), p)
                if v is not None and (eps is None or v < eps):
                    eps, pos = v, (i, j)
        if eps is None:
            raise ValueError("degenerate matrix in block reduction")
        i, j = pos
        if i == j:
            work, blocks = _split_pivot(fld, work, i, blocks)
            continue
        diag_hit = any(
            nu(work.entry(k, k), p) == eps for k in range(m)
        )
        if diag_hit:
            k = next(k for k in range(m) if nu(work.entry(k, k), p) == eps)
            work, blocks = _split_pivot(fld, work, k, blocks)
            continue
        made = False
        if fld.unramified or (fld.p != 2 and eps % 2 == 0):
            for x in _pivot_candidates(fld):
                q = (
                    work.entry(i, i)
                    + x * work.entry(i, j)
                    + (x * work.entry(i, j)).conj()
                    + KElem(x.norm(), 0, fld.D) * work.entry(j, j)
                )
                if nu(q, p) == eps:
                    U = _elementary(work.m, j, i, x, fld.D)
                    work = work.transform(U)
                    work, blocks = _split_pivot(fld, work, i, blocks)
                    made = True
                    break
            if not made:
                raise AssertionError("pivot creation failed in unramified/even case")
            continue
        # plane extraction at (i, j)
        work, blocks = _split_plane(fld, work, i, j, blocks)
    return blocks


def _elementary(m: int, j: int, i: int, x: KElem, D: int):
    """Column operation e_i <- e_i + x e_j as a transform matrix."""
    U = [[KElem(1 if r == c else 0, 0, D) for c in range(m)] for r in range(m)]
    U[j][i] = x
    return U


def _split_pivot(fld, work, k, blocks):
    m = work.m
    D = fld.D
    piv = work.entry(k, k)
    U = [[KElem(1 if r == c else 0, 0, D) for c in range(m)] for r in range(m)]
    for r in range(m):
        if r != k:
            U[k][r] = -(work.entry(k, r) / piv)
    red = work.transform(U)
    blocks.append(HermitianMatrix([[piv]], D))
    keep = [r for r in range(m) if r != k]
    rest = HermitianMatrix([[red.entry(r, c) for c in keep] for r in keep], D)
    return rest, blocks


def _split_plane(fld, work, i, j, blocks):
    m = work.m
    D = fld.D
    P = [[work.entry(i, i), work.entry(i, j)], [work.entry(j, i), work.entry(j, j)]]
    det = P[0][0] * P[1][1] - P[0][1] * P[1][0]
    U = [[KElem(1 if r == c else 0, 0, D) for c in range(m)] for r in range(m)]
    for r in range(m):
        if r in (i, j):
            continue
        b1, b2 = work.entry(i, r), work.entry(j, r)
        # solve P * (x,y)^T = -(b1,b2)^T
        x = (-(b1 * P[1][1] - b2 * P[0][1])) / det
        y = (-(P[0][0] * b2 - P[1][0] * b1)) / det
        if not (x.in_O_p(fld.p) and y.in_O_p(fld.p)):
            raise AssertionError("plane clearing produced non-integral coefficients")
        U[i][r] = x
        U[j][r] = y
    red = work.transform(U)
    blocks.append(
        HermitianMatrix(
            [[red.entry(i, i), red.entry(i, j)], [red.entry(j, i), red.entry(j, j)]], D
        )
    )
    keep = [r for r in range(m) if r not in (i, j)]
    rest = HermitianMatrix([[red.entry(r, c) for c in keep] for r in keep], D)
    return rest, blocks


# ---------------------------------------------------------------------------
# canonical class data
# ---------------------------------------------------------------------------


def block_signature(fld: LocalField, A: HermitianMatrix):
    """(lines, planes) data: lines as (ord, unit or class), planes as scale/matrix."""
    blocks = jordan_blocks(fld, A)
    lines = []
    planes = []
    for b in blocks:
        if b.m == 1:
            c = b.entry(0, 0).u
            k = ord_p(c, fld.p)
            lines.append((k, c / Fraction(fld.p) ** k))
        else:
            planes.append(b)
    return lines, planes


def canonical_key(fld: LocalField, A: HermitianMatrix):
    """Total class invariant, or None when undecidable by invariants (p=2 ramified)."""
    p = fld.p
    if fld.split:
        return ("split", tuple(split_class_vals(fld, A)))
    if fld.unramified:
        lines, planes = block_signature(fld, A)
        vals = [k for (k, _) in lines]
        for pl in planes:
            # inert planes always diagonalize; jordan_blocks should not emit them
            raise AssertionError("unexpected plane block in inert reduction")
        return ("inert", tuple(sorted(vals)))
    if p == 2:
        return None
    # ramified, p odd
    lines, planes = block_signature(fld, A)
    plane_scales = []
    for pl in planes:
        voff = nu(pl.entry(0, 1), p)
        assert voff is not None and voff % 2 == 1, "odd-scale plane expected"
        plane_scales.append((voff - 1) // 2)
    # unit classes: +1 (norm) or -1
    line_data = [(k, fld.chi(u)) for (k, u) in lines]
    # R1: same-scale lines merge into (1,...,1,product-class)
    by_scale: dict[int, list[int]] = {}
    for k, s in line_data:
        by_scale.setdefault(k, []).append(s)
    norm_lines = []
    for k, ss in sorted(by_scale.items()):
        prod = 1
        for s in ss:
            prod *= s
        # R2: a plane of scale k-1 (varpi-scale 2k-1) absorbs the class
        if (k - 1) in plane_scales:
            prod = 1
        norm_lines.extend([(k, 1)] * (len(ss) - 1) + [(k, prod)])
    return ("ram-odd", tuple(sorted(norm_lines)), tuple(sorted(plane_scales)))


def _in_her_tilde_scale(fld: LocalField, A: HermitianMatrix) -> int:
    """Least k >= 0 with p^k A in Her-tilde."""
    for k in range(0, 2 * fld.e_p + 6):
        if A.scale(Fraction(fld.p) ** k).in_her_tilde(fld):
            return k
    raise AssertionError("matrix cannot be scaled into Her-tilde")


def _trace_ideal_ord(fld: LocalField, z: KElem) -> int:
    """ord_p of the ideal Tr(z O_p) in Z_p."""
    p = fld.p
    omega = KElem.from_o_coords(0, 1, fld.D)
    best = None
    for g in (KElem(1, 0, fld.D), omega):
        w = z * g
        tr = w.trace()
        if tr:
            v = ord_p(tr, p)
            best = v if best is None else min(best, v)
    assert best is not None
    return best


def lattice_invariants(fld: LocalField, A: HermitianMatrix):
    """Exact class invariants: (det ord, det unit class, scale ord, norm ord).

    Scale ideal s(L) is generated by all inner products (the entries);
    norm ideal n(L) by the values q(x) = sum N + trace cross terms.
    """
    p = fld.p
    d = A.det()
    dv = ord_p(d, p)
    dcls = fld.normalize_unit(d / Fraction(p) ** dv) if fld.ramified else 1
    scale = None
    norm_ord = None
    for i in range(A.m):
        for j in range(A.m):
            e = A.entry(i, j)
            if not e:
                continue
            v = nu(e, p)
            scale = v if scale is None else min(scale, v)
    for i in range(A.m):
        e = A.entry(i, i)
        if e:
            v = ord_p(e.u, p)
            norm_ord = v if norm_ord is None else min(norm_ord, v)
    for i in range(A.m):
        for j in range(i + 1, A.m):
            e = A.entry(i, j)
            if e:
                v = _trace_ideal_ord(fld, e)
                norm_ord = v if norm_ord is None else min(norm_ord, v)
    return (dv, dcls, scale, norm_ord)


def equivalent(
    fld: LocalField,
    A: HermitianMatrix,
    B: HermitianMatrix,
    group: str = "GL",
    witness: bool = False,
    cfg: RunConfig = DEFAULT,
):
    """Decide GL_m(O_p)- (or SL-) equivalence; optionally return a witness.

    Returns None if inequivalent, otherwise a dict with keys 'equivalent',
    and when requested 'witness' (KElem matrix U with B = A[U] mod p^{e+1})
    and 'precision'.
    """
    if A.m != B.m:
        raise ValueError("size mismatch")
    if A.m == 0:
        return {"equivalent": True, "witness": [], "precision": 0}
    p = fld.p
    dA, dB = A.det(), B.det()
    if dA == 0 or dB == 0:
        raise ValueError("degenerate input")
    if ord_p(dA, p) != ord_p(dB, p):
        return None
    if not fld.is_local_norm_unit(dB / dA):
        return None
    # rescale both into Her-tilde so the Lemma-4.1.1 cutoff applies
    k = max(_in_her_tilde_scale(fld, A), _in_her_tilde_scale(fld, B))
    As = A.scale(Fraction(p) ** k)
    Bs = B.scale(Fraction(p) ** k)
    if lattice_invariants(fld, As) != lattice_invariants(fld, Bs):
        return None
    key_a = canonical_key(fld, As)
    decided = None
    if key_a is not None:
        decided = key_a == canonical_key(fld, Bs)
        if not decided:
            return None
    if group == "SL" or witness or decided is None:
        e = Bs.e_bound(fld)
        if group == "SL":
            if dA != dB:
                return None
            lifter = DfsLifter(fld, As, Bs, primitive=True, cfg=cfg)
            ok = None
            for a in (e + 1, e + 2):
                dets = lifter.determinant_values(a)
                ok = (1 % p**a, 0) in dets
                if not ok:
                    return None
            return {"equivalent": True, "precision": e + 2}
        # fast witness hunt with a pruned frontier, exact exhaustive fallback
        hunter = DfsLifter(fld, As, Bs, primitive=True, cfg=cfg, cap=4096)
        U = hunter.find_witness(e + 1)
        if U is None and hunter.pruned:
            U = DfsLifter(fld, As, Bs, primitive=True, cfg=cfg).find_witness(e + 1)
        if U is None:
            assert decided is not True, "canonical forms equal but no witness found"
            return None
        return {"equivalent": True, "witness": U, "precision": e + 1}
    return {"equivalent": True}


def witness_checks(fld: LocalField, A, B, result) -> bool:
    """Verify a returned witness: B = A[U] mod p^{precision} Her-tilde."""
    if result is None or "witness" not in result:
        return False
    U = result["witness"]
    prec = result["precision"]
    diff_ok = _congruent_mod_tilde(fld, A.transform(U), B, prec)
    return diff_ok


def _congruent_mod_tilde(fld, X, Y, a: int) -> bool:
    diff = HermitianMatrix(
        [[X.entry(i, j) - Y.entry(i, j) for j in range(X.m)] for i in range(X.m)],
        X.D,
    )
    scaled = diff.scale(Fraction(1, fld.p**a))
    return scaled.in_her_tilde(fld)


# ---------------------------------------------------------------------------
# Jacobowitz decomposition
# ---------------------------------------------------------------------------


def jacobowitz_decompose(fld: LocalField, B: HermitianMatrix, cfg: RunConfig = DEFAULT):
    """(r, B2) with B ~ 1_r perp p B2 (unramified/split) or Theta_r perp pi^{i_p} B2.

    B must lie in Her-tilde; B2 lands in Her_{m-r,*}.
    """
    if not B.in_her_tilde(fld):
        raise ValueError("input not in Her-tilde")
    p = fld.p
    if fld.split:
        vals = split_class_vals(fld, B)
        r = sum(1 for v in vals if v == 0)
        rest = [v - 1 for v in vals if v > 0]
        B2 = HermitianMatrix.diagonal([Fraction(p) ** v for v in rest], fld.D)
        return r, B2
    if fld.unramified:
        lines, _ = block_signature(fld, B)
        vals = sorted(k for (k, _) in lines)
        r = sum(1 for v in vals if v == 0)
        B2 = HermitianMatrix.diagonal(
            [Fraction(p) ** (v - 1) for v in vals if v > 0], fld.D
        )
        return r, B2
    # ramified
    blocks = jordan_blocks(fld, B)
    theta = theta_block(fld)
    pi_val = local_uniformizer(fld).norm()
    theta_count = 0
    rest_blocks = []
    for b in blocks:
        if b.m == 2 and _plane_is_theta_scale(fld, b, 0, cfg):
            theta_count += 1
        else:
            rest_blocks.append(b)
    r = 2 * theta_count
    if rest_blocks:
        rest = rest_blocks[0]
        for b in rest_blocks[1:]:
            rest = rest.perp(b)
        B2 = rest.scale(Fraction(1, pi_val) ** fld.i_p)
    else:
        B2 = HermitianMatrix.zero(0, fld.D)
    if B2.m and not B2.in_her_star(fld):
        raise AssertionError("Jacobowitz remainder not in the starred set")
    return r, B2


def _plane_is_theta_scale(fld, plane, scale: int, cfg) -> bool:
    """Is this 2x2 block GL-equivalent to pi^scale * Theta_2?"""
    p = fld.p
    target = theta_block(fld)
    if scale:
        target = target.scale(local_uniformizer(fld).norm() ** scale)
    if ord_p(plane.det(), p) != ord_p(target.det(), p):
        return False
    if p != 2:
        voff = nu(plane.entry(0, 1), p)
        return voff is not None and voff == 2 * scale + fld.i_p
    return equivalent(fld, plane, target, cfg=cfg) is not None


def unimodular_rank(fld: LocalField, T: HermitianMatrix, cfg: RunConfig = DEFAULT) -> int:
    """The r of the Jacobowitz shape (used by the closed beta formulas)."""
    r, _ = jacobowitz_decompose(fld, T, cfg)
    return r


# ---------------------------------------------------------------------------
# class enumeration
# ---------------------------------------------------------------------------


def _partitions(total: int, parts: int, minimum: int = 0):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(minimum, total + 1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def enumerate_classes(
    fld: LocalField,
    m: int,
    i: int,
    d0: int | Fraction = 1,
    cfg: RunConfig = DEFAULT,
) -> list[HermitianMatrix]:
    """GL_m(O_p)-class representatives in Her-tilde_m with det in pi^i d0 N(O_p^*)."""
    if m == 0:
        ok = i == 0 and fld.is_local_norm_unit(Fraction(d0))
        return [HermitianMatrix.zero(0, fld.D)] if ok else []
    cap = cfg.class_m_max_ram if fld.ramified else cfg.class_m_max_unram
    if m > cap:
        raise BudgetExceeded("class_m_max_ram" if fld.ramified else "class_m_max_unram", m, cap)
    if i > cfg.max_valuation:
        raise BudgetExceeded("max_valuation", i, cfg.max_valuation)
    p = fld.p
    if not fld.ramified:
        # every unit is a norm: classes = diagonal p-power profiles
        return [
            HermitianMatrix.diagonal([Fraction(p) ** c for c in part], fld.D)
            for part in _partitions(i, m)
        ]
    target = Fraction(local_uniformizer(fld).norm()) ** i * Fraction(d0)
    cands = _ramified_candidates(fld, m, i)
    out = []
    for A in cands:
        d = A.det()
        if ord_p(d, p) != i:
            continue
        if not fld.is_local_norm_unit(d / target):
            continue
        out.append(A)
    # dedup (p odd: canonical keys; p=2: residue pre-merge, then witness search)
    uniq: list[HermitianMatrix] = []
    keys = []
    if fld.p != 2:
        for A in out:
            k = canonical_key(fld, A)
            if k in keys:
                continue
            keys.append(k)
            uniq.append(A)
        return uniq
    # stage 1: identical residues mod p^{K} Her-tilde are trivially equivalent
    K = i + fld.e_p + 2
    seen = set()
    stage1 = []
    for A in out:
        rk = _residue_key(fld, A, K)
        if rk in seen:
            continue
        seen.add(rk)
        stage1.append(A)
    # stage 2: cheap invariant bucket + witness search within buckets
    buckets: dict[tuple, list[HermitianMatrix]] = {}
    for A in stage1:
        d = A.det()
        inv = (ord_p(d, fld.p), fld.normalize_unit(d / Fraction(fld.p) ** ord_p(d, fld.p)))
        buckets.setdefault(inv, []).append(A)
    for group_ in buckets.values():
        reps: list[HermitianMatrix] = []
        for A in group_:
            if any(equivalent(fld, A, B, cfg=cfg) for B in reps):
                continue
            reps.append(A)
        uniq.extend(reps)
    return uniq


def _residue_key(fld: LocalField, A: HermitianMatrix, K: int) -> tuple:
    """Residue of A modulo p^K Her-tilde, as a hashable tuple."""
    p = fld.p
    e = fld.e_p
    diag_mod = p ** (K + e)
    out = []
    for i_ in range(A.m):
        out.append(fraction_mod(A.entry(i_, i_).u, diag_mod))
    # off-diagonal residues modulo p^K * (p^e d^{-1} O): use sqrt(-D)-trick
    off_mod = p ** (K + e)
    for i_ in range(A.m):
        for j_ in range(i_ + 1, A.m):
            z = A.entry(i_, j_) * KElem(0, 1, fld.D)
            x, y = z.o_coords()
            out.append(fraction_mod(x, off_mod))
            out.append(fraction_mod(y, off_mod))
    return tuple(out)


def _ramified_candidates(fld: LocalField, m: int, i: int) -> list[HermitianMatrix]:
    """Block-shaped candidates covering all Her-tilde classes of det order i.

    The block reduction proves every class decomposes into lines and planes;
    for p odd the blocks below are canonical, for p=2 a grid of dyadic plane
    shapes is added and duplicates are removed by witness search.
    """
    p = fld.p
    pi_val = Fraction(local_uniformizer(fld).norm())
    units = _ram_unit_reps(fld)
    theta_ord = fld.i_p
    line_min = fld.e_p
    out: list[HermitianMatrix] = []
    for nplanes in range(m // 2 + 1):
        nlines = m - 2 * nplanes
        for scales in _sorted_tuples(nplanes, i):
            plane_ord = sum(2 * c + theta_ord for c in scales)
            rem = i - plane_ord - nlines * line_min
            if rem < 0:
                continue
            for extra in _partitions(rem, nlines):
                ords = [line_min + e for e in extra]
                for us in iproduct(units, repeat=nlines):
                    blocks = [theta_block(fld).scale(pi_val**c) for c in scales]
                    blocks += [
                        HermitianMatrix.diagonal([Fraction(p) ** o * u], fld.D)
                        for o, u in zip(ords, us)
                    ]
                    if not blocks:
                        continue
                    A = blocks[0]
                    for b in blocks[1:]:
                        A = A.perp(b)
                    if A.in_her_tilde(fld):
                        out.append(A)
    if p == 2 and m == 2:
        out.extend(_p2_plane_grid(fld, i))
    return out


def _sorted_tuples(parts: int, bound: int, minimum: int = 0):
    if parts == 0:
        yield ()
        return
    for first in range(minimum, bound + 1):
        for rest in _sorted_tuples(parts - 1, bound, first):
            yield (first,) + rest


def _ram_unit_reps(fld: LocalField) -> list[int]:
    if fld.p != 2:
        return fld.unit_class_reps()
    reps: list[int] = []
    for u in (1, 3, 5, 7):
        if not any(fld.same_unit_class(u, r) for r in reps):
            reps.append(u)
    return reps


def _p2_plane_grid(fld: LocalField, i: int) -> list[HermitianMatrix]:
    """Dyadic 2x2 plane candidates [[a, z],[zbar, b]] with off-diagonal minimum.

    Diagonal entries only matter modulo the trace image Tr(z O), which keeps
    the grid small; duplicates are harmless (removed downstream).
    """
    p = fld.p
    w = local_uniformizer(fld)
    D = fld.D
    off_units = [
        KElem.from_o_coords(x, y, D)
        for x in range(4)
        for y in range(4)
        if (KElem.from_o_coords(x, y, D).norm()) % 2 == 1
    ]
    out = []
    wpow = KElem(1, 0, D)
    for c in range(0, i + 2):
        # diagonal entries reduced mod Tr(varpi^c O) = 2^{c//2+1} Z roughly
        dmod = 2 ** (c // 2 + 2)
        diags = [d for d in range(0, 2 * dmod, 2)]
        for z0 in off_units:
            z = wpow * z0
            for da in diags:
                for db in diags:
                    if da > db:
                        continue
                    A = HermitianMatrix(
                        [
                            [KElem(da, 0, D), z],
                            [z.conj(), KElem(db, 0, D)],
                        ],
                        D,
                    )
                    d = A.det()
                    if d == 0 or ord_p(d, p) != i:
                        continue
                    if A.in_her_tilde(fld):
                        out.append(A)
        wpow = wpow * w
    return out

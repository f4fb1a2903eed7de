"""Exact Schur polynomial evaluation over arbitrary-precision rationals.

Three evaluation routes are provided and cross-checked against each other:
the bialternant determinant (fraction-free elimination), brute-force
semistandard-tableau enumeration, and closed product/residue formulas for
staircase and almost-staircase partitions. Repeated variable values are
handled exactly by confluent specialization (derivative columns in the
determinant, higher-order poles in the residue sums).
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, permutations

from .partitions import Partition, staircase
from .weights import _as_fraction

SSYT_MAX_WEIGHT = 12
SSYT_MAX_VARS = 5
RATIO_GENERAL_MAX_L = 3
RATIO_GENERAL_MAX_N = 12


def log_fraction(q: Fraction) -> float:
    """Natural log of a positive rational, safe for huge numerators.

    math.log on a Python int uses exact mantissa/exponent decomposition, so
    this never overflows the double range the way float(q) would.
    """
    if q <= 0:
        raise ValueError(f"log of non-positive value {q}")
    return math.log(q.numerator) - math.log(q.denominator)


def bareiss_determinant(rows: list[list[int]]) -> int:
    """Integer determinant by Bareiss fraction-free elimination."""
    n = len(rows)
    a = [list(r) for r in rows]
    if any(len(r) != n for r in a):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[-1][-1]


def _det_rational(mat: list[list[Fraction]]) -> Fraction:
    """Determinant of a rational matrix via per-column scaling and Bareiss."""
    n = len(mat)
    scale = 1
    cols: list[list[int]] = []
    for j in range(n):
        denoms = [mat[i][j].denominator for i in range(n)]
        L = math.lcm(*denoms)
        cols.append([mat[i][j].numerator * (L // mat[i][j].denominator) for i in range(n)])
        scale *= L
    int_rows = [[cols[j][i] for j in range(n)] for i in range(n)]
    return Fraction(bareiss_determinant(int_rows), scale)


def _group_by_value(entries) -> list[tuple[Fraction, int]]:
    """(value, multiplicity) pairs in order of first appearance."""
    groups: dict[Fraction, int] = {}
    for e in entries:
        v = _as_fraction(e)
        groups[v] = groups.get(v, 0) + 1
    return list(groups.items())


def schur_bialternant(lam: Partition, X) -> Fraction:
    """s_lambda(X) as det[x_j^(lambda_i + N - i)] over the Vandermonde.

    Requires pairwise distinct entries; use schur_confluent for repeated
    values.
    """
    X = [_as_fraction(x) for x in X]
    N = len(X)
    if len(lam) != N:
        raise ValueError(f"partition length {len(lam)} != variable count {N}")
    for i in range(N):
        for j in range(i + 1, N):
            if X[i] == X[j]:
                raise ValueError(
                    f"repeated value {X[i]} at indices {i}, {j}; the Vandermonde "
                    f"vanishes (use schur_confluent)"
                )
    exps = [lam[i] + N - 1 - i for i in range(N)]
    mat = [[x**e for x in X] for e in exps]
    vandermonde = Fraction(1)
    for i in range(N):
        for j in range(i + 1, N):
            vandermonde *= X[i] - X[j]
    return _det_rational(mat) / vandermonde


def schur_confluent(lam: Partition, X) -> Fraction:
    """s_lambda(X) allowing repeated values, by confluent specialization.

    Repeated columns of the bialternant are replaced by successive
    derivatives of the power columns; the confluent Vandermonde denominator
    has the closed form prod (v_q - v_p)^(K_p K_q) * prod c! up to the row
    order sign.
    """
    X = [_as_fraction(x) for x in X]
    N = len(X)
    if len(lam) != N:
        raise ValueError(f"partition length {len(lam)} != variable count {N}")
    groups = _group_by_value(X)
    exps = [lam[i] + N - 1 - i for i in range(N)]
    mat = []
    for e in exps:
        row = []
        for v, K in groups:
            for c in range(K):
                row.append(Fraction(0) if c > e else math.perm(e, c) * v ** (e - c))
        mat.append(row)
    numerator = _det_rational(mat)

    denominator = Fraction(1)
    for p in range(len(groups)):
        for q in range(p + 1, len(groups)):
            denominator *= (groups[q][0] - groups[p][0]) ** (groups[p][1] * groups[q][1])
    for _, K in groups:
        for c in range(1, K):
            denominator *= math.factorial(c)
    if (N * (N - 1) // 2) % 2:
        denominator = -denominator
    return numerator / denominator


def schur_ssyt(lam: Partition, X) -> Fraction:
    """s_lambda(X) by enumerating semistandard Young tableaux (oracle).

    Sums the monomial of every filling of the shape with entries in 1..N
    that is weakly increasing along rows and strictly increasing down
    columns. Exponential; guarded to |lambda| <= 12 and N <= 5.
    """
    X = [_as_fraction(x) for x in X]
    N = len(X)
    if lam.weight > SSYT_MAX_WEIGHT or N > SSYT_MAX_VARS:
        raise ValueError(
            f"enumeration guard exceeded: |lambda|={lam.weight} (max {SSYT_MAX_WEIGHT}), "
            f"N={N} (max {SSYT_MAX_VARS})"
        )
    shape = [p for p in lam.parts if p > 0]
    if not shape:
        return Fraction(1)
    if len(shape) > N:
        return Fraction(0)

    cells = [(r, c) for r, width in enumerate(shape) for c in range(width)]
    filling = [[0] * width for width in shape]
    total = Fraction(0)

    def fill(pos: int, monomial: Fraction):
        nonlocal total
        if pos == len(cells):
            total += monomial
            return
        r, c = cells[pos]
        lo = 1
        if c > 0:
            lo = filling[r][c - 1]  # rows weakly increase
        if r > 0:
            lo = max(lo, filling[r - 1][c] + 1)  # columns strictly increase
        for val in range(lo, N + 1):
            filling[r][c] = val
            fill(pos + 1, monomial * X[val - 1])
        filling[r][c] = 0

    fill(0, Fraction(1))
    return total


def _pair_factor(a: Fraction, b: Fraction, m: int) -> Fraction:
    """(a^m - b^m)/(a - b) in polynomial form, valid also at a == b."""
    return sum((a**r * b ** (m - 1 - r) for r in range(m)), Fraction(0))


def staircase_product(m: int, X) -> Fraction:
    """Closed product form of the Schur polynomial on the staircase partition.

    Each pairwise factor is the polynomial sum_{r<m} x_i^r x_j^(m-1-r), so
    repeated values are handled without division.
    """
    X = [_as_fraction(x) for x in X]
    out = Fraction(1)
    for i in range(len(X)):
        for j in range(i + 1, len(X)):
            out *= _pair_factor(X[i], X[j], m)
    return out


def staircase_ratio(m: int, W, X, k: int) -> Fraction:
    """staircase_product(m, W) / staircase_product(m, X) when W and X agree
    beyond index k; the shared pairwise factors cancel exactly."""
    W = [_as_fraction(w) for w in W]
    X = [_as_fraction(x) for x in X]
    if len(W) != len(X):
        raise ValueError("W and X must have equal length")
    if W[k:] != X[k:]:
        raise ValueError(f"entries beyond index {k} differ; no cancellation")
    num = Fraction(1)
    den = Fraction(1)
    for i in range(k):
        for j in range(i + 1, len(W)):
            num *= _pair_factor(W[i], W[j], m)
            den *= _pair_factor(X[i], X[j], m)
    return num / den


def ratio_onerow(lam1: int, m: int, W) -> Fraction:
    """s_lambda(W)/s_staircase(W) for lambda = (lam1, staircase tail),
    as the residue sum over simple poles.

    Requires pairwise distinct m-th powers; ratio_onerow_confluent extends
    this to repeated entries.
    """
    W = [_as_fraction(w) for w in W]
    N = len(W)
    if N >= 2 and lam1 < (m - 1) * (N - 2):
        raise ValueError(
            f"lam1={lam1} below the staircase tail start {(m - 1) * (N - 2)}; "
            f"the spliced partition is invalid"
        )
    powers = [w**m for w in W]
    for i in range(N):
        for j in range(i + 1, N):
            if powers[i] == powers[j]:
                raise ValueError(
                    f"coincident m-th powers at indices {i}, {j} "
                    f"(value {powers[i]}); use ratio_onerow_confluent"
                )
    total = Fraction(0)
    for j in range(N):
        denom = Fraction(1)
        for s in range(N):
            if s != j:
                denom *= powers[j] - powers[s]
        total += W[j] ** (lam1 + N - 1) / denom
    return total


def _series_mul(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * order
    for i, ai in enumerate(a[:order]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: order - i]):
            if bj:
                out[i + j] += ai * bj
    return out


def _series_pow(base: list[Fraction], e: int, order: int) -> list[Fraction]:
    result = [Fraction(1)] + [Fraction(0)] * (order - 1)
    b = list(base)
    while e:
        if e & 1:
            result = _series_mul(result, b, order)
        e >>= 1
        if e:
            b = _series_mul(b, b, order)
    return result


def _series_inv(c: list[Fraction], order: int) -> list[Fraction]:
    if c[0] == 0:
        raise ZeroDivisionError("series has no inverse: zero constant term")
    inv0 = 1 / c[0]
    out = [inv0]
    for k in range(1, order):
        s = Fraction(0)
        for i in range(1, min(k, len(c) - 1) + 1):
            if c[i]:
                s += c[i] * out[k - i]
        out.append(-s * inv0)
    return out


def ratio_onerow_confluent(lam1: int, m: int, W) -> Fraction:
    """One-row ratio for tuples with repeated entries.

    Equal entries merge into higher-order poles of the residue sum; each
    residue is extracted from an exact truncated power series, so the value
    agrees with ratio_onerow whenever the entries are distinct.
    """
    W = [_as_fraction(w) for w in W]
    N = len(W)
    if N >= 2 and lam1 < (m - 1) * (N - 2):
        raise ValueError(
            f"lam1={lam1} below the staircase tail start {(m - 1) * (N - 2)}; "
            f"the spliced partition is invalid"
        )
    groups = _group_by_value(W)
    for a in range(len(groups)):
        for b in range(a + 1, len(groups)):
            if groups[a][0] ** m == groups[b][0] ** m:
                raise ValueError(
                    f"distinct entries {groups[a][0]} and {groups[b][0]} share "
                    f"the same m-th power"
                )
    A = lam1 + N + m - 2
    total = Fraction(0)
    for v, K in groups:
        num = [m * math.comb(A, c) * v ** (A - c) for c in range(K)]
        # ((v+t)^m - v^m)/t, the simple-zero factor of this pole
        phi = [math.comb(m, c + 1) * v ** (m - 1 - c) for c in range(min(m, K))]
        den = _series_pow(phi, K, K)
        for w, Kw in groups:
            if w is v:
                continue
            psi = [v**m - w**m] + [
                math.comb(m, r) * v ** (m - r) for r in range(1, min(m, K - 1) + 1)
            ]
            den = _series_mul(den, _series_pow(psi, Kw, K), K)
        series = _series_mul(num, _series_inv(den, K), K)
        total += series[K - 1]
    return total


def ratio_general(lam: Partition, m: int, W, l: int | None = None) -> Fraction:
    """s_lambda(W)/s_staircase(W) for lambda differing from the staircase in
    its first l parts, as the signed sum over index subsets and permutations
    of small determinants.

    Exponential in l; guarded to l <= 3 and N <= 12. Exists for identity
    testing against exact division.
    """
    W = [_as_fraction(w) for w in W]
    N = len(W)
    if len(lam) != N:
        raise ValueError(f"partition length {len(lam)} != variable count {N}")
    base = staircase(m, N)
    deviation = 0
    for i in range(N - 1, -1, -1):
        if lam[i] != base[i]:
            deviation = i + 1
            break
    if l is None:
        l = deviation
    if l < deviation:
        raise ValueError(f"l={l} but lambda differs from the staircase in {deviation} parts")
    if l > RATIO_GENERAL_MAX_L or N > RATIO_GENERAL_MAX_N:
        raise ValueError(
            f"guard exceeded: l={l} (max {RATIO_GENERAL_MAX_L}), N={N} "
            f"(max {RATIO_GENERAL_MAX_N})"
        )
    if l == 0:
        return Fraction(1)

    powers = [w**m for w in W]
    for i in range(N):
        for j in range(i + 1, N):
            if powers[i] == powers[j]:
                raise ValueError(f"coincident m-th powers at indices {i}, {j}")

    total = Fraction(0)
    for J in combinations(range(N), l):
        weight = Fraction(1)
        for r in J:
            for s in range(N):
                if s != r:
                    weight /= powers[r] - powers[s]
        inner = Fraction(0)
        for sigma in permutations(range(l)):
            sgn = _permutation_sign(sigma)
            mat = [
                [W[J[t]] ** (m * i + lam[sigma[t]] + N - (sigma[t] + 1)) for t in range(l)]
                for i in range(l)
            ]
            inner += sgn * _det_rational(mat)
        total += weight * inner
    return total


def _permutation_sign(sigma) -> int:
    inversions = sum(
        1 for i in range(len(sigma)) for j in range(i + 1, len(sigma)) if sigma[i] > sigma[j]
    )
    return -1 if inversions % 2 else 1


def _infer_order(lam: Partition) -> int:
    """Staircase order m from the tail of an almost-staircase partition."""
    N = len(lam)
    if N < 3:
        return 1
    return lam[N - 2] + 1


def _tail_deviation(lam: Partition, m: int) -> int:
    base = staircase(m, len(lam))
    for i in range(len(lam) - 1, -1, -1):
        if lam[i] != base[i]:
            return i + 1
    return 0


def _split_point(W, X) -> int:
    if len(W) != len(X):
        raise ValueError("W and X must have equal length")
    for i in range(len(W) - 1, -1, -1):
        if W[i] != X[i]:
            return i + 1
    return 0


def ratio_factors(lam: Partition, W, X, m: int | None = None) -> tuple[Fraction, Fraction, Fraction]:
    """The three exact factors of s_lambda(W)/s_lambda(X).

    Returns (S1, S2, S3) with S1 = s_lambda(W)/s_stc(W), S2 =
    s_stc(W)/s_stc(X), S3 = s_stc(X)/s_lambda(X), where s_stc is the Schur
    polynomial of the staircase of order m (inferred from lambda's tail when
    not given). The product S1*S2*S3 is independent of m.
    """
    entries_w = [_as_fraction(e) for e in getattr(W, "entries", W)]
    entries_x = [_as_fraction(e) for e in getattr(X, "entries", X)]
    N = len(lam)
    if len(entries_w) != N or len(entries_x) != N:
        raise ValueError("partition and variable tuples must share one length")
    if m is None:
        m = _infer_order(lam)
    l = _tail_deviation(lam, m)
    if l <= 1:
        s1 = ratio_onerow_confluent(lam[0], m, entries_w)
        s3_inv = ratio_onerow_confluent(lam[0], m, entries_x)
    else:
        s1 = schur_confluent(lam, entries_w) / staircase_product(m, entries_w)
        s3_inv = schur_confluent(lam, entries_x) / staircase_product(m, entries_x)
    k = _split_point(entries_w, entries_x)
    s2 = staircase_ratio(m, entries_w, entries_x, k)
    return s1, s2, 1 / s3_inv


def log_ratio_full(lam: Partition, W, X, m: int | None = None) -> float:
    """(1/N) log of the exact ratio s_lambda(W)/s_lambda(X).

    Both tuples must consist of positive rationals; complex perturbations
    have no real logarithm here and are rejected upstream by the exact
    arithmetic.
    """
    s1, s2, s3 = ratio_factors(lam, W, X, m)
    ratio = s1 * s2 * s3
    if ratio <= 0:
        raise ValueError(f"exact ratio {ratio} is not positive; complex or invalid input")
    return log_fraction(ratio) / len(lam)

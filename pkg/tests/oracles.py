"""Independent reference computations used only by the tests.

Nothing here imports the combinatorial engines of the package: Schur
polynomials come from brute-force tableau enumeration in explicit variables,
partition counts from Euler's pentagonal recurrence, and small character
tables from the group elements themselves.
"""

from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache

NVARS = 8


# -- partitions -----------------------------------------------------------------


def euler_partition_counts(n: int) -> list[int]:
    """p(0..n) via the pentagonal number recurrence."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p


def naive_partitions(n: int) -> list[tuple[int, ...]]:
    """Partitions of n as sorted compositions (set-based, deliberately slow)."""
    out = set()
    for k in range(n + 1):
        for c in itertools.product(range(1, n + 1), repeat=k):
            if sum(c) == n:
                out.add(tuple(sorted(c, reverse=True)))
    return sorted(out, reverse=True)


def hook_length_dim(lam: tuple[int, ...]) -> int:
    n = sum(lam)
    conj = [sum(1 for r in lam if r > j) for j in range(lam[0])] if lam else []
    prod = 1
    for i, r in enumerate(lam):
        for j in range(r):
            prod *= (r - j - 1) + (conj[j] - i - 1) + 1
    f = 1
    for k in range(2, n + 1):
        f *= k
    return f // prod


# -- Schur polynomials in explicit variables ------------------------------------


@lru_cache(maxsize=None)
def schur_poly(lam: tuple[int, ...], n: int = NVARS) -> dict[tuple[int, ...], int]:
    """s_lam(x_1..x_n) as {exponent vector: coefficient}, by SSYT enumeration."""
    cells = [(i, j) for i, r in enumerate(lam) for j in range(r)]
    filling: dict = {}
    out: Counter = Counter()

    def rec(k: int) -> None:
        if k == len(cells):
            e = [0] * n
            for v in filling.values():
                e[v] += 1
            out[tuple(e)] += 1
            return
        i, j = cells[k]
        lo = 0
        if j > 0:
            lo = max(lo, filling[(i, j - 1)])
        if i > 0:
            lo = max(lo, filling[(i - 1, j)] + 1)
        for v in range(lo, n):
            filling[(i, j)] = v
            rec(k + 1)
        filling.pop((i, j), None)

    rec(0)
    return dict(out)


def _padded(lam, n):
    return tuple(lam) + (0,) * (n - len(lam))


def _dominant_coefficients(f: dict, g: dict, size: int, n: int) -> dict[tuple[int, ...], int]:
    """Coefficient of x^alpha in f*g for every partition alpha of `size`."""
    out = {}
    for alpha in naive_partitions_cached(size):
        if len(alpha) > n:
            continue
        a = _padded(alpha, n)
        c = 0
        for e, u in f.items():
            rest = tuple(x - y for x, y in zip(a, e))
            if min(rest) < 0:
                continue
            v = g.get(rest)
            if v:
                c += u * v
        out[alpha] = c
    return out


@lru_cache(maxsize=None)
def naive_partitions_cached(n: int) -> tuple[tuple[int, ...], ...]:
    # reverse lexicographic order is a linear extension of dominance
    return tuple(euler_checked_partitions(n))


def euler_checked_partitions(n: int) -> list[tuple[int, ...]]:
    out = []

    def rec(rem, mx, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for k in range(min(rem, mx), 0, -1):
            rec(rem - k, k, acc + [k])

    rec(n, n, [])
    assert len(out) == euler_partition_counts(n)[n]
    return out


@lru_cache(maxsize=None)
def oracle_product(mu: tuple[int, ...], nu: tuple[int, ...], n: int = NVARS) -> dict[tuple[int, ...], int]:
    """Schur expansion of s_mu * s_nu by triangular elimination on dominant monomials."""
    size = sum(mu) + sum(nu)
    dom = _dominant_coefficients(schur_poly(mu, n), schur_poly(nu, n), size, n)
    coeffs: dict = {}
    for lam in naive_partitions_cached(size):
        if len(lam) > n:
            continue
        c = dom[lam]
        for kappa, ck in coeffs.items():
            c -= ck * schur_poly(kappa, n).get(_padded(lam, n), 0)
        if c:
            coeffs[lam] = c
    return coeffs


def oracle_lr(lam, mu, nu) -> int:
    if sum(lam) != sum(mu) + sum(nu):
        return 0
    return oracle_product(tuple(mu), tuple(nu)).get(tuple(lam), 0)


# -- small groups ---------------------------------------------------------------


def _compose(p, q):
    return tuple(p[q[i]] for i in range(len(q)))


def _inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def conjugacy_classes(elements, mul, inv):
    seen, classes = set(), []
    for g in elements:
        if g in seen:
            continue
        cls = {mul(mul(h, g), inv(h)) for h in elements}
        seen |= cls
        classes.append(sorted(cls))
    return classes


def s3_character_table() -> tuple[list[int], list[list[int]]]:
    """Class sizes and characters of S_3 from its permutation action."""
    G = list(itertools.permutations(range(3)))
    classes = conjugacy_classes(G, _compose, _inverse)
    classes.sort(key=lambda c: (len(c) != 1, -sum(1 for i, x in enumerate(c[0]) if i == x)))
    reps = [c[0] for c in classes]

    def parity(p):
        s = 1
        for i in range(len(p)):
            for j in range(i + 1, len(p)):
                if p[i] > p[j]:
                    s = -s
        return s

    fixed = [sum(1 for i, x in enumerate(p) if i == x) for p in reps]
    trivial = [1] * len(reps)
    sign = [parity(p) for p in reps]
    standard = [f - 1 for f in fixed]
    return [len(c) for c in classes], [trivial, sign, standard]


def cyclic_character_table_real(m: int) -> tuple[list[int], list[list[int]]]:
    """Characters of Z/m that are homomorphisms to {+1, -1}, found by brute force."""
    rows = []
    for values in itertools.product((1, -1), repeat=m):
        if values[0] != 1:
            continue
        if all(values[(a + b) % m] == values[a] * values[b] for a in range(m) for b in range(m)):
            rows.append(list(values))
    return [1] * m, rows


def same_table(sizes_a, rows_a, sizes_b, rows_b) -> bool:
    """Equal up to a simultaneous reordering of classes and rows."""
    if sorted(sizes_a) != sorted(sizes_b) or len(rows_a) != len(rows_b):
        return False
    n = len(sizes_a)
    for perm in itertools.permutations(range(n)):
        if [sizes_a[p] for p in perm] != list(sizes_b):
            continue
        permuted = sorted(tuple(r[p] for p in perm) for r in rows_a)
        if permuted == sorted(tuple(r) for r in rows_b):
            return True
    return False

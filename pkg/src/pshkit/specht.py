"""Specht modules in Young's seminormal form and Young-subgroup intertwiners.

These supply honest multiplicity spaces for the categorified product: for
partitions ``nu_1, ..., nu_r`` and ``lam`` with ``|lam| = sum |nu_i|``, the space

    V(lam; nu_1, ..., nu_r) = Hom_Y(S^{nu_1} ⊠ ... ⊠ S^{nu_r}, Res S^lam),

with ``Y = S_{n_1} x ... x S_{n_r}`` embedded as consecutive blocks, has
dimension equal to the iterated Littlewood-Richardson coefficient. Its basis
is canonical: the reduced-row-echelon nullspace basis of the intertwining
equations, read in row-major order. Composition of intertwiners is strictly
associative, so structure maps assembled from them are coherent.

All arithmetic is exact over ℚ (python-flint ``fmpq_mat``).
"""

from __future__ import annotations

from functools import lru_cache

import flint

from .partitions import Partition

fmpq = flint.fmpq
fmpq_mat = flint.fmpq_mat

# -- tableaux ------------------------------------------------------------------


@lru_cache(maxsize=None)
def standard_tableaux(lam: Partition) -> tuple[tuple[int, ...], ...]:
    """Standard Young tableaux of shape ``lam``, each encoded by its row word.

    ``word[k]`` is the row holding letter ``k + 1``. Sorted lexicographically.
    """
    n = lam.size
    out = []

    def rec(word, rows):
        if len(word) == n:
            out.append(tuple(word))
            return
        for r in range(len(lam)):
            if rows[r] < lam[r] and (r == 0 or rows[r - 1] > rows[r]):
                rows[r] += 1
                word.append(r)
                rec(word, rows)
                word.pop()
                rows[r] -= 1

    rec([], [0] * len(lam))
    return tuple(sorted(out))


def _contents(word: tuple[int, ...]) -> list[int]:
    """Content (column - row) of each letter."""
    rows: dict[int, int] = {}
    out = []
    for r in word:
        c = rows.get(r, 0)
        out.append(c - r)
        rows[r] = c + 1
    return out


@lru_cache(maxsize=None)
def seminormal_generator(lam: Partition, i: int) -> fmpq_mat:
    """Matrix of the adjacent transposition ``(i, i+1)`` (1-based) on ``S^lam``.

    Basis vectors are indexed by :func:`standard_tableaux`. With ``r`` the
    axial distance ``c(i+1) - c(i)``: letters in one row give ``+1``, in one
    column ``-1``; otherwise ``T`` and ``T' = s_i T`` span a block
    ``[[1/r, 1 - 1/r^2], [1, -1/r]]`` where ``T`` is the tableau with ``i+1``
    in the lower row.
    """
    tabs = standard_tableaux(lam)
    index = {t: k for k, t in enumerate(tabs)}
    d = len(tabs)
    m = fmpq_mat(d, d)
    for k, t in enumerate(tabs):
        ri, rj = t[i - 1], t[i]
        cont = _contents(t)
        r = cont[i] - cont[i - 1]
        if ri == rj:
            m[k, k] = 1
            continue
        swapped = list(t)
        swapped[i - 1], swapped[i] = rj, ri
        swapped = tuple(swapped)
        if swapped not in index:
            # same column
            m[k, k] = -1
            continue
        k2 = index[swapped]
        inv = fmpq(1, r)
        m[k, k] = inv
        if rj > ri:
            # i+1 lies in the lower row of T
            m[k2, k] = 1
        else:
            m[k2, k] = 1 - inv * inv
    return m


def identity(n: int) -> fmpq_mat:
    m = fmpq_mat(n, n)
    for k in range(n):
        m[k, k] = 1
    return m


def dim(lam: Partition) -> int:
    return len(standard_tableaux(lam))


def _word_by_positions(perm: tuple[int, ...]) -> list[int]:
    """Adjacent transpositions ``[i1, i2, ...]`` with ``perm = s_i1 ∘ s_i2 ∘ ...``.

    ``perm`` is 0-based one-line notation; bubble sort by position swaps, using
    ``p = (p ∘ s_k) ∘ s_k``.
    """
    p = list(perm)
    right = []
    n = len(p)
    for _ in range(n):
        for k in range(n - 1):
            if p[k] > p[k + 1]:
                p[k], p[k + 1] = p[k + 1], p[k]
                right.append(k + 1)
    return right[::-1]


@lru_cache(maxsize=None)
def rep_perm(lam: Partition, perm: tuple[int, ...]) -> fmpq_mat:
    """``rho_lam(perm)`` for a permutation of ``{0..n-1}`` (one-line notation)."""
    n = lam.size
    if len(perm) != n:
        raise ValueError("permutation size does not match the partition")
    word = _word_by_positions(perm)
    m = identity(dim(lam))
    for i in word:
        m = m * seminormal_generator(lam, i)
    return m


# -- matrix helpers ----------------------------------------------------------


def kron(a: fmpq_mat, b: fmpq_mat) -> fmpq_mat:
    ar, ac, br, bc = a.nrows(), a.ncols(), b.nrows(), b.ncols()
    out = fmpq_mat(ar * br, ac * bc)
    for i in range(ar):
        for j in range(ac):
            x = a[i, j]
            if x == 0:
                continue
            for k in range(br):
                for l in range(bc):
                    y = b[k, l]
                    if y != 0:
                        out[i * br + k, j * bc + l] = x * y
    return out


def kron_all(mats) -> fmpq_mat:
    out = identity(1)
    for m in mats:
        out = kron(out, m)
    return out


def factor_permutation(dims: list[int], order: list[int]) -> fmpq_mat:
    """Matrix ``P`` with ``P (⊗_k v_{order[k]}) = ⊗_j v_j``.

    The source carries factors in the order ``order`` (a permutation of the
    factor labels ``0..r-1``), the target carries them in label order.
    """
    r = len(dims)
    src_dims = [dims[o] for o in order]
    total = 1
    for d in dims:
        total *= d
    out = fmpq_mat(total, total)
    for col in range(total):
        # decode source multi-index
        rem = col
        idx_src = [0] * r
        for k in range(r - 1, -1, -1):
            idx_src[k] = rem % src_dims[k]
            rem //= src_dims[k]
        idx = [0] * r
        for k, o in enumerate(order):
            idx[o] = idx_src[k]
        row = 0
        for j in range(r):
            row = row * dims[j] + idx[j]
        out[row, col] = 1
    return out


# -- intertwiner spaces ----------------------------------------------------------


class HomSpace:
    """Basis of ``Hom_Y(⊠ S^{nu_i}, Res S^lam)`` with coordinate extraction."""

    __slots__ = ("lam", "parts", "rows", "cols", "basis", "free")

    def __init__(self, lam: Partition, parts: tuple[Partition, ...], basis: list[fmpq_mat], free: list[int],
                 rows: int, cols: int):
        self.lam = lam
        self.parts = parts
        self.basis = basis
        self.free = free
        self.rows = rows
        self.cols = cols

    def __len__(self) -> int:
        return len(self.basis)

    def coords(self, x: fmpq_mat) -> list:
        """Coordinates of an intertwiner in this basis (read at free positions)."""
        c = self.cols
        return [x[f // c, f % c] for f in self.free]


def _block_generators(parts: tuple[Partition, ...]):
    """(global letter, matrix on ⊠ S^{nu_i}) for the generators of Y."""
    dims = [dim(p) for p in parts]
    out = []
    offset = 0
    for k, p in enumerate(parts):
        for j in range(1, p.size):
            mats = [identity(d) for d in dims]
            mats[k] = seminormal_generator(p, j)
            out.append((offset + j, kron_all(mats)))
        offset += p.size
    return out


@lru_cache(maxsize=None)
def skew_tableaux(lam: Partition, mu: Partition) -> tuple[tuple[int, ...], ...]:
    """Standard fillings of ``lam / mu`` as row words, sorted lexicographically."""
    n = lam.size - mu.size
    out = []
    rows = [mu.part(r) for r in range(len(lam))]

    def rec(word):
        if len(word) == n:
            out.append(tuple(word))
            return
        for r in range(len(lam)):
            if rows[r] < lam[r] and (r == 0 or rows[r - 1] > rows[r]):
                rows[r] += 1
                word.append(r)
                rec(word)
                word.pop()
                rows[r] -= 1

    rec([])
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def skew_generator(lam: Partition, mu: Partition, i: int) -> fmpq_mat:
    """Seminormal action of ``(i, i+1)`` on the skew module ``M_{lam/mu}``."""
    tabs = skew_tableaux(lam, mu)
    index = {t: k for k, t in enumerate(tabs)}
    m = fmpq_mat(len(tabs), len(tabs))
    for k, t in enumerate(tabs):
        ri, rj = t[i - 1], t[i]
        if ri == rj:
            m[k, k] = 1
            continue
        cols = {}
        cont = []
        for r in t:
            c = cols.get(r, mu.part(r))
            cont.append(c - r)
            cols[r] = c + 1
        swapped = list(t)
        swapped[i - 1], swapped[i] = rj, ri
        swapped = tuple(swapped)
        if swapped not in index:
            m[k, k] = -1
            continue
        r = cont[i] - cont[i - 1]
        inv = fmpq(1, r)
        m[k, k] = inv
        m[index[swapped], k] = 1 if rj > ri else 1 - inv * inv
    return m


def _solve_intertwiners(gens_target, gens_source, a: int, b: int):
    """RREF nullspace of ``rho X = X sigma`` for ``X`` of shape ``a x b``.

    Returns ``(pivot columns, free columns, rref)`` over row-major unknowns.
    """
    nunk = a * b
    eqs = []
    for rho, sigma in zip(gens_target, gens_source):
        for i in range(a):
            for j in range(b):
                row = {}
                for k in range(a):
                    v = rho[i, k]
                    if v != 0:
                        row[k * b + j] = row.get(k * b + j, 0) + v
                for k in range(b):
                    v = sigma[k, j]
                    if v != 0:
                        row[i * b + k] = row.get(i * b + k, 0) - v
                if any(v != 0 for v in row.values()):
                    eqs.append(row)
    if eqs:
        m = fmpq_mat(len(eqs), nunk)
        for r, row in enumerate(eqs):
            for c, v in row.items():
                m[r, c] = v
        rref, rank = m.rref()
    else:
        rref, rank = fmpq_mat(0, nunk), 0
    pivots = []
    r = 0
    for c in range(nunk):
        if r < rank and rref[r, c] != 0:
            pivots.append(c)
            r += 1
    pivot_set = set(pivots)
    return pivots, [c for c in range(nunk) if c not in pivot_set], rref


@lru_cache(maxsize=None)
def hom_space(lam: Partition, parts: tuple[Partition, ...]) -> HomSpace:
    """Canonical basis of the Young-subgroup intertwiner space.

    The seminormal basis of ``S^lam`` restricted to ``S_{n_1} x S_rest`` is
    ``⊕_{mu} S^{mu} ⊗ M_{lam/mu}`` (split by the subtableau on the first
    ``n_1`` letters), so every intertwiner is ``Id ⊗ y`` on the summand
    ``mu = parts[0]`` with ``y`` an intertwiner into the skew module. Only
    ``y`` is solved for.
    """
    parts = tuple(Partition(p) for p in parts)
    n = sum(p.size for p in parts)
    b = 1
    for p in parts:
        b *= dim(p)
    if lam.size != n:
        return HomSpace(lam, parts, [], [], 0, b)
    a = dim(lam)
    if not parts:
        return HomSpace(lam, parts, [identity(1)], [0], 1, 1)
    if len(parts) == 1:
        basis = [identity(a)] if parts[0] == lam else []
        return HomSpace(lam, parts, basis, [0] if basis else [], a, b)
    first, rest = parts[0], parts[1:]
    if not all(first.part(r) <= lam.part(r) for r in range(len(first))):
        return HomSpace(lam, parts, [], [], a, b)
    skew = skew_tableaux(lam, first)
    d_first = dim(first)
    d_rest = b // d_first
    ds = len(skew)
    # generators of S_rest's Young subgroup, letters relative to the skew part
    gens_t, gens_s = [], []
    dims = [dim(p) for p in rest]
    offset = 0
    for k, p in enumerate(rest):
        for j in range(1, p.size):
            mats = [identity(d) for d in dims]
            mats[k] = seminormal_generator(p, j)
            gens_s.append(kron_all(mats))
            gens_t.append(skew_generator(lam, first, offset + j))
        offset += p.size
    pivots, free, rref = _solve_intertwiners(gens_t, gens_s, ds, d_rest)
    full_index = {t: k for k, t in enumerate(standard_tableaux(lam))}
    first_tabs = standard_tableaux(first)
    # row of S^lam for (first subtableau u, skew filling v)
    row_of = [[full_index[u + v] for v in skew] for u in first_tabs]
    basis, free_full = [], []
    for f in free:
        y = {f: fmpq(1)}
        for row_i, pc in enumerate(pivots):
            v = rref[row_i, f]
            if v != 0:
                y[pc] = -v
        x = fmpq_mat(a, b)
        for u in range(d_first):
            for pos, v in y.items():
                sv, col = divmod(pos, d_rest)
                x[row_of[u][sv], u * d_rest + col] = v
        basis.append(x)
        sv, col = divmod(f, d_rest)
        free_full.append(row_of[0][sv] * b + col)
    return HomSpace(lam, parts, basis, free_full, a, b)


def is_intertwiner(x: fmpq_mat, lam: Partition, parts: tuple[Partition, ...]) -> bool:
    """Check the intertwining equations for every generator of ``Y``."""
    for letter, sigma in _block_generators(parts):
        if seminormal_generator(lam, letter) * x != x * sigma:
            return False
    return True


def clear_caches() -> None:
    for f in (standard_tableaux, seminormal_generator, rep_perm, hom_space, skew_tableaux, skew_generator):
        f.cache_clear()

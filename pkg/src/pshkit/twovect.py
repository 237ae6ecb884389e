"""An explicit based model of graded 2-vector spaces.

Objects (:class:`BasedCat`) are finite lists of simple objects, each with a
degree. A 1-morphism is a *word* of atomic multiplicity matrices; composing
1-morphisms concatenates words, so composition is strictly associative and
unital. The multiplicity space of a word at ``(target, source)`` has a basis of
paths: the intermediate simples visited, then one index per atomic factor. The
paths are enumerated in lexicographic order of that tuple (source side first);
every 2-morphism block is a matrix with respect to these enumerations.

2-morphisms (:class:`TwoMor`) store one rational matrix per nonzero block and
treat missing blocks as zero.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

import flint

fmpq = flint.fmpq
fmpq_mat = flint.fmpq_mat

Block = tuple[int, int]


class TwoVectError(ValueError):
    """Endpoint or block-shape mismatch in the 2-vector-space model."""


class BasedCat:
    """A semisimple category presented by its list of simple objects."""

    def __init__(self, labels: Sequence[Hashable], degrees: Sequence[int] | None = None, name: str = "C",
                 max_degree: int | None = None):
        labels = list(labels)
        if len(set(labels)) != len(labels):
            raise TwoVectError("simple labels must be distinct")
        degrees = [0] * len(labels) if degrees is None else list(degrees)
        if len(degrees) != len(labels):
            raise TwoVectError("one degree per simple is required")
        if max_degree is not None and any(d > max_degree for d in degrees):
            raise TwoVectError("simple above the truncation degree")
        self.labels = labels
        self.degrees = degrees
        self.name = name
        self.max_degree = max_degree
        self.index = {lab: i for i, lab in enumerate(labels)}

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"BasedCat({self.name}, {len(self)} simples)"


VECT = BasedCat([()], [0], name="Vect")


class Atom:
    """An atomic 1-morphism: a sparse nonnegative integer matrix ``(t, s) -> n``."""

    __slots__ = ("name", "source", "target", "mult", "by_source", "_transpose")

    def __init__(self, source: BasedCat, target: BasedCat, mult: Mapping[Block, int], name: str = "F"):
        self.name = name
        self.source = source
        self.target = target
        self.mult: dict[Block, int] = {}
        for (t, s), n in mult.items():
            if n < 0:
                raise TwoVectError("multiplicities must be nonnegative")
            if not (0 <= t < len(target) and 0 <= s < len(source)):
                raise TwoVectError(f"entry {(t, s)} out of range for {name}")
            if n:
                self.mult[(t, s)] = int(n)
        self.by_source: dict[int, list[tuple[int, int]]] = {}
        for (t, s), n in sorted(self.mult.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            self.by_source.setdefault(s, []).append((t, n))
        self._transpose: Atom | None = None

    @property
    def T(self) -> "Atom":
        if self._transpose is None:
            name = self.name[:-1] if self.name.endswith("ᵀ") else self.name + "ᵀ"
            tr = Atom(self.target, self.source, {(s, t): n for (t, s), n in self.mult.items()}, name)
            tr._transpose = self
            self._transpose = tr
        return self._transpose

    def dense(self) -> np.ndarray:
        out = np.zeros((len(self.target), len(self.source)), dtype=object)
        for (t, s), n in self.mult.items():
            out[t, s] = n
        return out

    def __repr__(self) -> str:
        return f"Atom({self.name}: {self.source.name} -> {self.target.name})"


class OneMor:
    """A composable word of atoms; ``factors[0]`` is applied first."""

    __slots__ = ("source", "target", "factors", "_paths", "_pos", "_mult")

    def __init__(self, source: BasedCat, target: BasedCat, factors: Sequence[Atom] = ()):
        factors = tuple(factors)
        cur = source
        for a in factors:
            if a.source is not cur:
                raise TwoVectError(f"cannot compose {a.name}: source {a.source.name} != {cur.name}")
            cur = a.target
        if cur is not target:
            raise TwoVectError(f"word ends in {cur.name}, expected {target.name}")
        self.source = source
        self.target = target
        self.factors = factors
        self._paths: dict[int, dict[int, list[tuple]]] = {}
        self._pos: dict[Block, dict[tuple, int]] = {}
        self._mult: dict[Block, int] | None = None

    @classmethod
    def atom(cls, a: Atom) -> "OneMor":
        return cls(a.source, a.target, (a,))

    @classmethod
    def identity(cls, c: BasedCat) -> "OneMor":
        return cls(c, c, ())

    @classmethod
    def from_matrix(cls, source: BasedCat, target: BasedCat, matrix, name: str = "F") -> "OneMor":
        m = np.asarray(matrix, dtype=object)
        mult = {(t, s): int(m[t, s]) for t in range(m.shape[0]) for s in range(m.shape[1]) if m[t, s]}
        return cls.atom(Atom(source, target, mult, name))

    def __repr__(self) -> str:
        names = " ∘ ".join(a.name for a in reversed(self.factors)) or f"id_{self.source.name}"
        return f"OneMor({names})"

    def same_as(self, other: "OneMor") -> bool:
        return (self.source is other.source and self.target is other.target
                and len(self.factors) == len(other.factors)
                and all(a is b for a, b in zip(self.factors, other.factors)))

    # paths ----------------------------------------------------------------

    def _paths_from(self, s: int) -> dict[int, list[tuple]]:
        got = self._paths.get(s)
        if got is not None:
            return got
        # state: (current simple, intermediates, indices)
        frontier = [(s, (), ())]
        for k, a in enumerate(self.factors):
            nxt = []
            last = k == len(self.factors) - 1
            for cur, inter, idx in frontier:
                for t, n in a.by_source.get(cur, ()):
                    inter2 = inter if last else inter + (t,)
                    for j in range(n):
                        nxt.append((t, inter2, idx + (j,)))
            frontier = nxt
        out: dict[int, list[tuple]] = {}
        for t, inter, idx in frontier:
            out.setdefault(t, []).append(inter + idx)
        for t in out:
            out[t].sort()
        self._paths[s] = out
        return out

    def paths(self, t: int, s: int) -> list[tuple]:
        return self._paths_from(s).get(t, [])

    def positions(self, t: int, s: int) -> dict[tuple, int]:
        key = (t, s)
        got = self._pos.get(key)
        if got is None:
            got = {p: i for i, p in enumerate(self.paths(t, s))}
            self._pos[key] = got
        return got

    def dim(self, t: int, s: int) -> int:
        return len(self.paths(t, s))

    def mult(self) -> dict[Block, int]:
        """Nonzero entries of the multiplicity matrix of the composite."""
        if self._mult is None:
            out: dict[Block, int] = {}
            for s in range(len(self.source)):
                for t, ps in self._paths_from(s).items():
                    out[(t, s)] = len(ps)
            self._mult = out
        return self._mult

    def dense(self) -> np.ndarray:
        out = np.zeros((len(self.target), len(self.source)), dtype=object)
        for (t, s), n in self.mult().items():
            out[t, s] = n
        return out

    def split(self, path: tuple, k: int) -> tuple[tuple, int, tuple]:
        """Split a path after the first ``k`` factors.

        Returns ``(inner_path, junction, outer_path)``; ``junction`` is ``None``
        when either side is empty.
        """
        n = len(self.factors)
        inter, idx = path[: max(n - 1, 0)], path[max(n - 1, 0):]
        if k == 0 or k == n:
            raise ValueError("split point must be interior")
        inner = inter[: k - 1] + idx[:k]
        outer = inter[k:] + idx[k:]
        return inner, inter[k - 1], outer


def compose1(g: OneMor, f: OneMor) -> OneMor:
    """``g ∘ f`` (apply ``f`` first)."""
    if f.target is not g.source:
        raise TwoVectError(f"endpoint mismatch: {f.target.name} -> {g.source.name}")
    return OneMor(f.source, g.target, f.factors + g.factors)


def compose_all(*mors: OneMor) -> OneMor:
    """Compose in application order: ``compose_all(f, g, h) = h ∘ g ∘ f``."""
    out = mors[0]
    for m in mors[1:]:
        out = compose1(m, out)
    return out


def transpose(f: OneMor) -> OneMor:
    return OneMor(f.target, f.source, tuple(a.T for a in reversed(f.factors)))


# -- 2-morphisms -------------------------------------------------------------


def _zeros(r: int, c: int) -> fmpq_mat:
    return fmpq_mat(r, c)


def _eye(n: int) -> fmpq_mat:
    out = fmpq_mat(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def to_block(m) -> fmpq_mat:
    """Coerce a matrix-like (``fmpq_mat``, numpy array, nested lists) to ``fmpq_mat``."""
    if isinstance(m, fmpq_mat):
        return m
    arr = np.asarray(m, dtype=object)
    if arr.size == 0:
        shape = arr.shape if arr.ndim == 2 else (0, 0)
        return fmpq_mat(*shape)
    if arr.ndim != 2:
        raise TwoVectError("blocks must be 2-d")
    out = fmpq_mat(*arr.shape)
    for (i, j), v in np.ndenumerate(arr):
        if v:
            f = Fraction(v)
            out[i, j] = fmpq(f.numerator, f.denominator)
    return out


def block_to_lists(m: fmpq_mat) -> list[list[str]]:
    """Entries as strings (``"p/q"``), for serialization."""
    return [[str(m[i, j]) for j in range(m.ncols())] for i in range(m.nrows())]


def _nonzeros(m: fmpq_mat) -> list[tuple[int, int, object]]:
    c = m.ncols()
    return [(k // c, k % c, v) for k, v in enumerate(m.entries()) if v != 0]


def _is_zero(m: fmpq_mat) -> bool:
    return all(v == 0 for v in m.entries())


class TwoMor:
    """A 2-morphism ``source => target`` between parallel 1-morphisms."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: OneMor, target: OneMor, blocks: Mapping[Block, object] | None = None,
                 check: bool = True):
        if source.source is not target.source or source.target is not target.target:
            raise TwoVectError("2-morphism between non-parallel 1-morphisms")
        self.source = source
        self.target = target
        self.blocks: dict[Block, fmpq_mat] = {}
        for key, m in (blocks or {}).items():
            arr = to_block(m)
            if check:
                t, s = key
                want = (target.dim(t, s), source.dim(t, s))
                if (arr.nrows(), arr.ncols()) != want:
                    raise TwoVectError(f"block {key} has shape {(arr.nrows(), arr.ncols())}, expected {want}")
            if arr.nrows() and arr.ncols() and not _is_zero(arr):
                self.blocks[key] = arr

    def block(self, t: int, s: int) -> fmpq_mat:
        got = self.blocks.get((t, s))
        if got is None:
            return _zeros(self.target.dim(t, s), self.source.dim(t, s))
        return got

    def all_keys(self) -> list[Block]:
        keys = set(self.source.mult()) | set(self.target.mult())
        return sorted(keys, key=lambda k: (k[1], k[0]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwoMor):
            return NotImplemented
        if not (self.source.same_as(other.source) and self.target.same_as(other.target)):
            return False
        keys = set(self.blocks) | set(other.blocks)
        return all(self.block(*k) == other.block(*k) for k in keys)

    def __add__(self, other: "TwoMor") -> "TwoMor":
        _check_parallel(self, other)
        keys = set(self.blocks) | set(other.blocks)
        return TwoMor(self.source, self.target, {k: self.block(*k) + other.block(*k) for k in keys}, check=False)

    def __rmul__(self, scalar) -> "TwoMor":
        f = Fraction(scalar)
        c = fmpq(f.numerator, f.denominator)
        return TwoMor(self.source, self.target, {k: m * c for k, m in self.blocks.items()}, check=False)

    def __neg__(self) -> "TwoMor":
        return (-1) * self

    def first_difference(self, other: "TwoMor"):
        """First block where the two differ, or ``None``."""
        keys = sorted(set(self.blocks) | set(other.blocks), key=lambda k: (k[1], k[0]))
        for k in keys:
            a, b = self.block(*k), other.block(*k)
            if a != b:
                return k, a, b
        return None

    def __repr__(self) -> str:
        return f"TwoMor({self.source!r} => {self.target!r}, {len(self.blocks)} blocks)"


def _check_parallel(a: TwoMor, b: TwoMor) -> None:
    if not (a.source.same_as(b.source) and a.target.same_as(b.target)):
        raise TwoVectError("2-morphisms are not parallel")


def identity2(f: OneMor) -> TwoMor:
    return TwoMor(f, f, {k: _eye(n) for k, n in f.mult().items()}, check=False)


def canonical_iso(f: OneMor, g: OneMor) -> TwoMor:
    """Identity matrix in every block, relative to the canonical enumerations.

    Only defined when the two multiplicity matrices agree entrywise.
    """
    if f.source is not g.source or f.target is not g.target:
        raise TwoVectError("canonical iso needs parallel 1-morphisms")
    if f.mult() != g.mult():
        raise TwoVectError("canonical iso needs equal multiplicity matrices")
    return TwoMor(f, g, {k: _eye(n) for k, n in f.mult().items()}, check=False)


def from_function(source: OneMor, target: OneMor, entry: Callable[[int, int, tuple, tuple], object]) -> TwoMor:
    """Build a 2-morphism from ``entry(t, s, target_path, source_path)``."""
    blocks = {}
    for (t, s) in set(source.mult()) & set(target.mult()):
        rows, cols = target.paths(t, s), source.paths(t, s)
        m = _zeros(len(rows), len(cols))
        nz = False
        for i, p in enumerate(rows):
            for j, q in enumerate(cols):
                v = entry(t, s, p, q)
                if v:
                    f = Fraction(v)
                    m[i, j] = fmpq(f.numerator, f.denominator)
                    nz = True
        if nz:
            blocks[(t, s)] = m
    return TwoMor(source, target, blocks, check=False)


def vcompose(beta: TwoMor, alpha: TwoMor) -> TwoMor:
    """Vertical composite ``beta · alpha`` (apply ``alpha`` first)."""
    if not alpha.target.same_as(beta.source):
        raise TwoVectError("vertical composition: middle 1-morphisms differ")
    blocks = {}
    for k, a in alpha.blocks.items():
        b = beta.blocks.get(k)
        if b is not None:
            blocks[k] = b * a
    return TwoMor(alpha.source, beta.target, blocks, check=False)


def vcompose_all(*twos: TwoMor) -> TwoMor:
    """Vertical composite in application order."""
    out = twos[0]
    for t in twos[1:]:
        out = vcompose(t, out)
    return out


def hcompose(beta: TwoMor, alpha: TwoMor) -> TwoMor:
    """Horizontal composite ``beta * alpha : G∘F => G'∘F'``.

    ``alpha : F => F'`` is applied first (``A -> B``), ``beta : G => G'`` second
    (``B -> C``). Each block is assembled from Kronecker products of the
    constituent blocks, placed by the canonical path enumeration.
    """
    F, F2, G, G2 = alpha.source, alpha.target, beta.source, beta.target
    if F.target is not G.source:
        raise TwoVectError("horizontal composition: endpoint mismatch")
    src = compose1(G, F)
    tgt = compose1(G2, F2)
    if not F.factors and not F2.factors:
        # alpha is an endomorphism of an identity 1-morphism: scalars per simple
        return _hcompose_scalar_right(beta, alpha, src, tgt)
    if not G.factors and not G2.factors:
        return _hcompose_scalar_left(beta, alpha, src, tgt)
    acc: dict[Block, dict[tuple[int, int], object]] = {}
    beta_by_source: dict[int, list] = {}
    for (c, b), bm in beta.blocks.items():
        beta_by_source.setdefault(b, []).append((c, bm, _nonzeros(bm)))
    for (b, a), am in alpha.blocks.items():
        anz = _nonzeros(am)
        ar, ac = am.nrows(), am.ncols()
        for c, bm, bnz in beta_by_source.get(b, ()):
            rows = _composite_positions(tgt, F2, G2, c, a, b)
            cols = _composite_positions(src, F, G, c, a, b)
            # Kronecker ordering: (outer index, inner index)
            out = acc.setdefault((c, a), {})
            for i1, j1, v1 in bnz:
                for i2, j2, v2 in anz:
                    k = (rows[i1 * ar + i2], cols[j1 * ac + j2])
                    out[k] = out.get(k, 0) + v1 * v2
    blocks = {}
    for (c, a), entries in acc.items():
        m = _zeros(tgt.dim(c, a), src.dim(c, a))
        for (i, j), v in entries.items():
            m[i, j] = v
        blocks[(c, a)] = m
    return TwoMor(src, tgt, blocks, check=False)


def _blocks_from(beta: TwoMor, b: int):
    return [(k, m) for k, m in beta.blocks.items() if k[1] == b]


def _composite_positions(comp: OneMor, inner: OneMor, outer: OneMor, c: int, a: int, b: int) -> list[int]:
    """Positions in ``comp``'s (c, a) block of all paths through junction ``b``,
    ordered by (outer path index, inner path index)."""
    pos = comp.positions(c, a)
    ip = inner.paths(b, a)
    op = outer.paths(c, b)
    ni = len(inner.factors)
    no = len(outer.factors)
    out = []
    for q in op:
        for p in ip:
            out.append(pos[_join(p, ni, b, q, no)])
    return out


def _join(inner_path: tuple, ni: int, b: int, outer_path: tuple, no: int) -> tuple:
    if ni == 0:
        return outer_path
    if no == 0:
        return inner_path
    i_inter, i_idx = inner_path[: ni - 1], inner_path[ni - 1:]
    o_inter, o_idx = outer_path[: no - 1], outer_path[no - 1:]
    return i_inter + (b,) + o_inter + i_idx + o_idx


def _hcompose_scalar_right(beta: TwoMor, alpha: TwoMor, src: OneMor, tgt: OneMor) -> TwoMor:
    blocks = {}
    for (c, b), bm in beta.blocks.items():
        am = alpha.blocks.get((b, b))
        if am is not None:
            blocks[(c, b)] = bm * am[0, 0]
    return TwoMor(src, tgt, blocks, check=False)


def _hcompose_scalar_left(beta: TwoMor, alpha: TwoMor, src: OneMor, tgt: OneMor) -> TwoMor:
    blocks = {}
    for (b, a), am in alpha.blocks.items():
        bm = beta.blocks.get((b, b))
        if bm is not None:
            blocks[(b, a)] = am * bm[0, 0]
    return TwoMor(src, tgt, blocks, check=False)


def whisker_left(g: OneMor, alpha: TwoMor) -> TwoMor:
    """``g * alpha`` : apply ``alpha`` then post-compose with ``g``."""
    return hcompose(identity2(g), alpha)


def whisker_right(beta: TwoMor, f: OneMor) -> TwoMor:
    """``beta * f`` : pre-compose with ``f`` then apply ``beta``."""
    return hcompose(beta, identity2(f))


def whisker(g: OneMor | None, alpha: TwoMor, f: OneMor | None) -> TwoMor:
    """``g * alpha * f``; either side may be ``None``."""
    out = alpha
    if f is not None and f.factors:
        out = whisker_right(out, f)
    if g is not None and g.factors:
        out = whisker_left(g, out)
    return out


# -- adjunctions -------------------------------------------------------------


@dataclass
class Adjunction:
    """``left ⊣ right`` with ``unit: id => right∘left`` and ``counit: left∘right => id``."""

    left: OneMor
    right: OneMor
    unit: TwoMor
    counit: TwoMor

    def triangle_identities(self) -> tuple[bool, bool]:
        L, R = self.left, self.right
        first = vcompose(whisker(None, self.counit, L), whisker(L, self.unit, None))
        second = vcompose(whisker(R, self.counit, None), whisker(None, self.unit, R))
        return first == identity2(L), second == identity2(R)


def _atom_unit(a: Atom) -> TwoMor:
    """Coevaluation ``id => aᵀ∘a``: sums e_t ⊗ e_t over each multiplicity space."""
    fa = OneMor.atom(a)
    word = compose1(transpose(fa), fa)
    ident = OneMor.identity(a.source)

    def entry(t, s, p, q):
        # p = (j, i, i') with i an index of a, i' an index of aᵀ
        return 1 if p[1] == p[2] else 0

    return from_function(ident, word, entry)


def _atom_counit(a: Atom) -> TwoMor:
    """Evaluation ``a∘aᵀ => id``."""
    fa = OneMor.atom(a)
    word = compose1(fa, transpose(fa))
    ident = OneMor.identity(a.target)

    def entry(t, s, p, q):
        return 1 if q[1] == q[2] else 0

    return from_function(word, ident, entry)


def transpose_adjunction(f: OneMor) -> Adjunction:
    """``f ⊣ fᵀ`` with coevaluation unit and evaluation counit.

    For a word the data is the composite of the atomic adjunctions.
    """
    ft = transpose(f)
    if not f.factors:
        idf = identity2(f)
        return Adjunction(f, ft, idf, idf)
    unit = _atom_unit(f.factors[0])
    counit = _atom_counit(f.factors[0])
    inner = OneMor.atom(f.factors[0])
    for a in f.factors[1:]:
        fa = OneMor.atom(a)
        # id => innerᵀ∘inner => innerᵀ∘aᵀ∘a∘inner
        unit = vcompose(whisker(transpose(inner), whisker(None, _atom_unit(a), inner), None), unit)
        # a∘inner∘innerᵀ∘aᵀ => a∘aᵀ => id
        counit = vcompose(_atom_counit(a), whisker(fa, whisker(None, counit, transpose(fa)), None))
        inner = compose1(fa, inner)
    return Adjunction(f, ft, unit, counit)


def left_adjoint_data(g: OneMor) -> Adjunction:
    """``gᵀ ⊣ g`` (the transpose used as a left adjoint)."""
    return transpose_adjunction(transpose(g))


# -- quintets and mates -------------------------------------------------------


@dataclass
class Quintet:
    """Square ``A -g-> B``, ``A -f-> C``, ``B -h-> D``, ``C -i-> D`` with
    ``alpha : h∘g => i∘f``."""

    f: OneMor
    g: OneMor
    h: OneMor
    i: OneMor
    alpha: TwoMor

    def __post_init__(self):
        if self.f.source is not self.g.source or self.g.target is not self.h.source \
                or self.f.target is not self.i.source or self.h.target is not self.i.target:
            raise TwoVectError("quintet sides do not form a square")
        if not self.alpha.source.same_as(compose1(self.h, self.g)) \
                or not self.alpha.target.same_as(compose1(self.i, self.f)):
            raise TwoVectError("quintet 2-morphism has the wrong endpoints")


def right_mate(q: Quintet, adj_f: Adjunction | None = None, adj_h: Adjunction | None = None) -> Quintet:
    """Replace the verticals by right adjoints.

    ``alpha_R : g∘f_R => h_R∘i`` is
    ``g f_R -> h_R h g f_R -> h_R i f f_R -> h_R i``. The result is returned as a
    quintet with left ``i``, top ``f_R``, right ``g``, bottom ``h_R``.
    """
    adj_f = adj_f or transpose_adjunction(q.f)
    adj_h = adj_h or transpose_adjunction(q.h)
    if not adj_f.left.same_as(q.f) or not adj_h.left.same_as(q.h):
        raise TwoVectError("adjunction data does not match the verticals")
    fR, hR = adj_f.right, adj_h.right
    s1 = whisker(None, adj_h.unit, compose1(q.g, fR))
    s2 = whisker(hR, q.alpha, fR)
    s3 = whisker(compose1(hR, q.i), adj_f.counit, None)
    alpha_r = vcompose_all(s1, s2, s3)
    return Quintet(f=q.i, g=fR, h=q.g, i=hR, alpha=alpha_r)


def left_mate(q: Quintet, adj_g: Adjunction | None = None, adj_i: Adjunction | None = None) -> Quintet:
    """Replace the horizontals by left adjoints.

    ``alpha_L : i_L∘h => f∘g_L`` is
    ``i_L h -> i_L h g g_L -> i_L i f g_L -> f g_L``. Returned as a quintet with
    left ``g_L``, top ``h``, right ``i_L``, bottom ``f``. The adjunctions are
    ``g_L ⊣ g`` and ``i_L ⊣ i``.
    """
    adj_g = adj_g or left_adjoint_data(q.g)
    adj_i = adj_i or left_adjoint_data(q.i)
    if not adj_g.right.same_as(q.g) or not adj_i.right.same_as(q.i):
        raise TwoVectError("adjunction data does not match the horizontals")
    gL, iL = adj_g.left, adj_i.left
    s1 = whisker(compose1(iL, q.h), adj_g.unit, None)
    s2 = whisker(iL, q.alpha, gL)
    s3 = whisker(None, adj_i.counit, compose1(q.f, gL))
    alpha_l = vcompose_all(s1, s2, s3)
    return Quintet(f=gL, g=q.h, h=iL, i=q.f, alpha=alpha_l)


@dataclass
class BCResult:
    ok: bool
    side: str
    mate: Quintet
    witness: tuple | None = None
    blocks_checked: int = 0
    rank_report: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def check_invertible(alpha: TwoMor, keys: Iterable[Block] | None = None, collect: bool = False):
    """Test every block for squareness and nonzero determinant.

    Returns ``(ok, witness, n_checked, report)``; the witness is
    ``(block key, matrix, reason)`` for the first failing block.
    """
    n = 0
    report = []
    for key in (keys if keys is not None else alpha.all_keys()):
        m = alpha.block(*key)
        n += 1
        r, c = m.nrows(), m.ncols()
        if r != c:
            return False, (key, m, f"non-square block {r}x{c}"), n, report
        if r == 0:
            continue
        d = m.det()
        if collect:
            report.append({"block": list(key), "size": r, "rank": r if d != 0 else m.rank()})
        if d == 0:
            return False, (key, m, f"singular block (rank {m.rank()} < {r})"), n, report
    return True, None, n, report


def check_bc(q: Quintet, side: str = "right", keys: Iterable[Block] | None = None,
             collect: bool = False, **adj) -> BCResult:
    """Beck-Chevalley check: is the chosen mate invertible in every block?"""
    if side == "right":
        mate = right_mate(q, adj.get("adj_f"), adj.get("adj_h"))
    elif side == "left":
        mate = left_mate(q, adj.get("adj_g"), adj.get("adj_i"))
    else:
        raise ValueError("side must be 'left' or 'right'")
    ok, witness, n, report = check_invertible(mate.alpha, keys, collect)
    return BCResult(ok, side, mate, witness, n, report)


def paste_vertical(top: Quintet, bottom: Quintet) -> Quintet:
    """Stack ``top`` over ``bottom`` (top's bottom edge is bottom's top edge)."""
    if not top.i.same_as(bottom.g):
        raise TwoVectError("squares do not share an edge")
    # h2∘h1∘g => h2∘i1∘f1 = h2∘g2∘f1 => i2∘f2∘f1
    a = whisker(bottom.h, top.alpha, None)
    b = whisker(None, bottom.alpha, top.f)
    return Quintet(f=compose1(bottom.f, top.f), g=top.g, h=compose1(bottom.h, top.h), i=bottom.i,
                   alpha=vcompose(b, a))


def paste_horizontal(left: Quintet, right: Quintet) -> Quintet:
    """Place ``left`` next to ``right`` (left's right edge is right's left edge)."""
    if not left.h.same_as(right.f):
        raise TwoVectError("squares do not share an edge")
    # h2∘g2∘g1 => i2∘f2∘g1 = i2∘h1∘g1 => i2∘i1∘f1
    a = whisker(None, right.alpha, left.g)
    b = whisker(right.i, left.alpha, None)
    return Quintet(f=left.f, g=compose1(right.g, left.g), h=right.h, i=compose1(right.i, left.i),
                   alpha=vcompose(b, a))


# -- cubes ----------------------------------------------------------------------

Vertex = tuple[int, int, int]


def _vertex(axis: int, base: Vertex, value: int) -> Vertex:
    v = list(base)
    v[axis] = value
    return tuple(v)


@dataclass
class Cube:
    """A cube with coordinates ordered ``0 < 1 < 2``.

    ``objects[v]`` for ``v`` in ``{0,1}^3``; ``edges[(axis, v)]`` is the arrow
    from ``v`` (with ``v[axis] == 0``) to ``v`` with that coordinate set to 1;
    ``faces[(a, b, c)]`` (``a < b``, ``c`` the value of the third coordinate)
    is the 2-morphism ``edge_b ∘ edge_a => edge_a ∘ edge_b`` around that face,
    i.e. "a then b" to "b then a".
    """

    objects: dict[Vertex, BasedCat]
    edges: dict[tuple[int, Vertex], OneMor]
    faces: dict[tuple[int, int, int], TwoMor]

    def edge(self, axis: int, v: Vertex) -> OneMor:
        return self.edges[(axis, _vertex(axis, v, 0))]

    def face_square(self, a: int, b: int, c: int) -> Quintet:
        third = 3 - a - b
        base = [0, 0, 0]
        base[third] = c
        base = tuple(base)
        g = self.edge(a, base)
        h = self.edge(b, _vertex(a, base, 1))
        f = self.edge(b, base)
        i = self.edge(a, _vertex(b, base, 1))
        return Quintet(f=f, g=g, h=h, i=i, alpha=self.faces[(a, b, c)])

    def validate(self) -> None:
        for (axis, v), e in self.edges.items():
            if e.source is not self.objects[v] or e.target is not self.objects[_vertex(axis, v, 1)]:
                raise TwoVectError(f"edge {(axis, v)} has wrong endpoints")
        for a, b in ((0, 1), (0, 2), (1, 2)):
            for c in (0, 1):
                self.face_square(a, b, c)


def hexagon_paths(cube: Cube) -> tuple[TwoMor, TwoMor]:
    """The two composites ``xyz => zyx`` around the hexagon."""
    cube.validate()
    o = (0, 0, 0)
    x, y, z = 0, 1, 2
    # xyz -> yxz : face(x,y) at z=0, then z
    p1 = whisker(cube.edge(z, (1, 1, 0)), cube.faces[(x, y, 0)], None)
    # yxz -> yzx : face(x,z) at y=1, after y
    p2 = whisker(None, cube.faces[(x, z, 1)], cube.edge(y, o))
    # yzx -> zyx : face(y,z) at x=0, then x
    p3 = whisker(cube.edge(x, (0, 1, 1)), cube.faces[(y, z, 0)], None)
    # xyz -> xzy : face(y,z) at x=1, after x
    q1 = whisker(None, cube.faces[(y, z, 1)], cube.edge(x, o))
    # xzy -> zxy : face(x,z) at y=0, then y
    q2 = whisker(cube.edge(y, (1, 0, 1)), cube.faces[(x, z, 0)], None)
    # zxy -> zyx : face(x,y) at z=1, after z
    q3 = whisker(None, cube.faces[(x, y, 1)], cube.edge(z, o))
    return vcompose_all(p1, p2, p3), vcompose_all(q1, q2, q3)


def check_cube_commutes(cube: Cube) -> tuple[bool, tuple | None]:
    """Compare the two hexagon composites blockwise; returns ``(ok, witness)``."""
    top, bottom = hexagon_paths(cube)
    if not top.source.same_as(bottom.source) or not top.target.same_as(bottom.target):
        raise TwoVectError("hexagon paths have different endpoints")
    diff = top.first_difference(bottom)
    return diff is None, diff


def cube_mate(cube: Cube, direction: str) -> Cube:
    """Mate of a cube.

    ``"left"``: every edge along axis 0 is replaced by its transpose used as a
    left adjoint and the four faces touching axis 0 by their left mates; the
    result is re-expressed with coordinates ``(1, 2, 0')``.
    ``"right"``: edges along axis 2 are replaced by right adjoints and faces
    touching axis 2 by right mates; new coordinates ``(2', 0, 1)``.
    """
    cube.validate()
    if direction == "left":
        flip, order = 0, (1, 2, 0)
    elif direction == "right":
        flip, order = 2, (2, 0, 1)
    else:
        raise ValueError("direction must be 'left' or 'right'")

    def old_vertex(nv: Vertex) -> Vertex:
        v = [0, 0, 0]
        for new_axis, old_axis in enumerate(order):
            v[old_axis] = nv[new_axis]
        v[flip] = 1 - v[flip]
        return tuple(v)

    objects = {}
    for nv in itertools.product((0, 1), repeat=3):
        objects[nv] = cube.objects[old_vertex(nv)]
    edges = {}
    for new_axis, old_axis in enumerate(order):
        for nv in itertools.product((0, 1), repeat=3):
            if nv[new_axis] != 0:
                continue
            ov = old_vertex(nv)
            if old_axis == flip:
                e = transpose(cube.edge(old_axis, _vertex(old_axis, ov, 0)))
            else:
                e = cube.edge(old_axis, ov)
            edges[(new_axis, nv)] = e
    faces = {}
    for a_new, b_new in ((0, 1), (0, 2), (1, 2)):
        a_old, b_old = order[a_new], order[b_new]
        c_axis_new = 3 - a_new - b_new
        c_old_axis = order[c_axis_new]
        for c in (0, 1):
            c_old = 1 - c if c_old_axis == flip else c
            if flip not in (a_old, b_old):
                faces[(a_new, b_new, c)] = cube.faces[(min(a_old, b_old), max(a_old, b_old), c_old)]
                continue
            lo, hi = min(a_old, b_old), max(a_old, b_old)
            sq = cube.face_square(lo, hi, c_old)
            if direction == "left":
                mate = left_mate(sq)
            else:
                mate = right_mate(sq)
            faces[(a_new, b_new, c)] = mate.alpha
    out = Cube(objects, edges, faces)
    out.validate()
    return out


# -- random generation for property checks -----------------------------------


def random_atom(rng: random.Random, source: BasedCat, target: BasedCat, max_entry: int = 2,
                name: str = "R") -> Atom:
    mult = {}
    for t in range(len(target)):
        for s in range(len(source)):
            n = rng.randint(0, max_entry)
            if n:
                mult[(t, s)] = n
    return Atom(source, target, mult, name)


def random_two_mor(rng: random.Random, source: OneMor, target: OneMor, lo: int = -3, hi: int = 3,
                   square_invertible: bool = False) -> TwoMor:
    blocks = {}
    for key in set(source.mult()) & set(target.mult()):
        r, c = target.dim(*key), source.dim(*key)
        while True:
            m = fmpq_mat(r, c, [rng.randint(lo, hi) for _ in range(r * c)])
            if not square_invertible or r != c or m.det() != 0:
                break
        blocks[key] = m
    return TwoMor(source, target, blocks, check=False)


def random_quintet(rng: random.Random, max_simples: int = 2, max_entry: int = 2,
                   max_block: int = 3) -> Quintet:
    """Random quintet whose 2-morphism blocks are at most ``max_block`` square."""
    while True:
        cats = [BasedCat(list(range(rng.randint(1, max_simples))), name=n) for n in "ABCD"]
        A, B, C, D = cats
        g = OneMor.atom(random_atom(rng, A, B, max_entry, "g"))
        f = OneMor.atom(random_atom(rng, A, C, max_entry, "f"))
        h = OneMor.atom(random_atom(rng, B, D, max_entry, "h"))
        i = OneMor.atom(random_atom(rng, C, D, max_entry, "i"))
        hg, if_ = compose1(h, g), compose1(i, f)
        dims = [hg.dim(*k) for k in hg.mult()] + [if_.dim(*k) for k in if_.mult()]
        if dims and max(dims) <= max_block:
            return Quintet(f, g, h, i, random_two_mor(rng, hg, if_))


def inverse2(alpha: TwoMor) -> TwoMor:
    """Blockwise inverse of an invertible 2-morphism."""
    blocks = {}
    for key in alpha.all_keys():
        m = alpha.block(*key)
        if m.nrows() != m.ncols():
            raise TwoVectError(f"block {key} is not square")
        if m.nrows():
            blocks[key] = m.inv()
    return TwoMor(alpha.target, alpha.source, blocks, check=False)


def _adjoint_quintet(rng: random.Random, max_block: int) -> Quintet:
    """Square ``(f, id; id, fᵀ)`` with a random ``alpha : id => fᵀ∘f``; its
    mates have square blocks, so Beck-Chevalley usually holds."""
    while True:
        A = BasedCat(list(range(rng.randint(1, 2))), name="A")
        C = BasedCat(list(range(rng.randint(1, 2))), name="C")
        f = OneMor.atom(random_atom(rng, A, C, 2, "f"))
        word = compose1(transpose(f), f)
        if word.mult() and max(word.dim(*k) for k in word.mult()) <= max_block:
            ident = OneMor.identity(A)
            alpha = random_two_mor(rng, compose1(ident, ident), word)
            return Quintet(f=f, g=ident, h=ident, i=transpose(f), alpha=alpha)


def verify_mate_calculus(seed: int = 0, cases: int = 50, max_block: int = 3) -> dict:
    """Triangle identities, mate round trips and left-BC ⇔ right-BC on
    seeded random quintets."""
    rng = random.Random(seed)
    rows = []
    for n in range(cases):
        kind = n % 3
        if kind == 2:
            q = _adjoint_quintet(rng, max_block)
        else:
            q = random_quintet(rng, max_block=max_block)
            if kind == 1:
                q = Quintet(q.f, q.g, q.h, q.i,
                            random_two_mor(rng, q.alpha.source, q.alpha.target, square_invertible=True))
        adj = {k: transpose_adjunction(getattr(q, k)) for k in "fh"}
        ladj = {k: left_adjoint_data(getattr(q, k)) for k in "gi"}
        tri = all(all(a.triangle_identities()) for a in list(adj.values()) + list(ladj.values()))
        r = right_mate(q, adj["f"], adj["h"])
        back_r = left_mate(r, adj["f"], adj["h"]).alpha == q.alpha
        l = left_mate(q, ladj["g"], ladj["i"])
        back_l = right_mate(l, ladj["g"], ladj["i"]).alpha == q.alpha
        right_ok = check_invertible(r.alpha)[0]
        left_ok = check_invertible(l.alpha)[0]
        rows.append({"case": n, "triangles": tri, "right_then_left": back_r, "left_then_right": back_l,
                     "bc_right": right_ok, "bc_left": left_ok, "bc_agree": right_ok == left_ok})
    ok = all(r["triangles"] and r["right_then_left"] and r["left_then_right"] and r["bc_agree"] for r in rows)
    return {"check": "mate_calculus", "seed": seed, "cases": cases, "ok": ok,
            "bc_true": sum(r["bc_right"] for r in rows), "rows": rows}

"""Truncated model of the categorified Hopf structure on polynomial functors.

``H(S)`` for a finite set ``S = {0..k-1}`` is the based category whose simples
are ``k``-tuples of partitions of total size at most ``D``. A set map
``a: S -> T`` goes to the 1-morphism ``H(a)`` whose multiplicity space at
``(lam_T, mu_S)`` is

    ⊗_t Hom_Y(⊠_{s in a^{-1}(t)} S^{mu_s}, Res S^{lam_t})

(fibers in increasing order), with the canonical intertwiner bases of
:mod:`pshkit.specht`. Composites of such 1-morphisms are compared through
their *composition matrices*: composing intertwiners (and reordering blocks by
the matching permutation) expresses every path of a word in the basis of the
composite map. The 2-isomorphism attached to a commutative square of sets is
``C(right path)^{-1} C(left path)``; because composition of intertwiners is
associative these isomorphisms are coherent.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import specht
from .partitions import Partition, parse_partition, partitions_up_to, to_text
from .psh import SetMap, all_set_maps, fiber_product
from .symfunc import SymTensor, lr_coefficient, multiply, op_delta, op_m, schur_product
from .twovect import (Atom, BasedCat, Cube, OneMor, Quintet, TwoMor, TwoVectError, _zeros, canonical_iso, fmpq_mat,
                      check_bc, check_cube_commutes, compose1, cube_mate, paste_vertical, transpose,
                      transpose_adjunction)


def _as_values(a) -> tuple[tuple[int, ...], int]:
    """Normalize a set map to ``(0-based values, target size)``."""
    if hasattr(a, "values") and hasattr(a, "target_size"):
        return tuple(v - 1 for v in a.values), a.target_size
    vals, m = a
    return tuple(vals), m


def compose_maps(b: tuple[tuple[int, ...], int], a: tuple[tuple[int, ...], int]) -> tuple[tuple[int, ...], int]:
    """``b ∘ a`` for 0-based set maps."""
    return tuple(b[0][v] for v in a[0]), b[1]


class SetMapAtom(Atom):
    """An atom carrying the set map it came from."""

    __slots__ = ("setmap", "perturbed")


class SshModel:
    """Caches ``H(S)`` and ``H(a)`` at truncation degree ``D``.

    ``perturb`` (for fault injection) is ``(values, target_size, block)``: the
    named multiplicity entry of that set map is increased by one, the extra
    basis vector acting as zero in every composition.
    """

    def __init__(self, D: int, perturb=None):
        if D < 0:
            raise ValueError("D must be nonnegative")
        self.D = D
        self.perturb = perturb
        self._cats: dict[int, BasedCat] = {}
        self._maps: dict[tuple, SetMapAtom] = {}
        self._other: dict[tuple, Atom] = {}
        self._comp: dict[tuple, dict] = {}

    # objects ------------------------------------------------------------------

    def cat(self, k: int) -> BasedCat:
        got = self._cats.get(k)
        if got is None:
            parts = partitions_up_to(self.D)
            rank = {p: n for n, p in enumerate(parts)}
            labs = []

            def rec(prefix, budget):
                if len(prefix) == k:
                    labs.append(tuple(prefix))
                    return
                for p in parts:
                    if p.size <= budget:
                        prefix.append(p)
                        rec(prefix, budget - p.size)
                        prefix.pop()

            rec([], self.D)
            labs.sort(key=lambda t: (sum(p.size for p in t), [rank[p] for p in t]))
            got = BasedCat(labs, [sum(p.size for p in t) for t in labs], name=f"H{k}", max_degree=self.D)
            self._cats[k] = got
        return got

    # set maps -------------------------------------------------------------------

    def H_map(self, a) -> OneMor:
        """The 1-morphism attached to a set map ``a``."""
        vals, m = _as_values(a)
        if any(not 0 <= v < m for v in vals):
            raise ValueError(f"set map values {vals} out of range for target size {m}")
        key = (vals, m)
        atom = self._maps.get(key)
        if atom is None:
            atom = self._build_map(vals, m)
            self._maps[key] = atom
        return OneMor.atom(atom)

    def fibers(self, vals: tuple[int, ...], m: int) -> list[list[int]]:
        return [[s for s, v in enumerate(vals) if v == t] for t in range(m)]

    def _build_map(self, vals, m) -> SetMapAtom:
        S, T = self.cat(len(vals)), self.cat(m)
        fib = self.fibers(vals, m)
        mult = {}
        for si, mu in enumerate(S.labels):
            fiber_parts = [tuple(mu[s] for s in f) for f in fib]
            sizes = [sum(p.size for p in fp) for fp in fiber_parts]
            choices = [[lam for lam in partitions_up_to(n) if lam.size == n] for n in sizes]
            for lam in itertools.product(*choices):
                n = 1
                for lt, fp in zip(lam, fiber_parts):
                    n *= len(specht.hom_space(lt, fp))
                    if not n:
                        break
                if n:
                    mult[(T.index[tuple(lam)], si)] = n
        name = "H[" + ",".join(str(v + 1) for v in vals) + f"→{m}]"
        perturbed = None
        if self.perturb is not None and tuple(self.perturb[0]) == vals and self.perturb[1] == m:
            blk = tuple(self.perturb[2])
            mult[blk] = mult.get(blk, 0) + 1
            perturbed = blk
        atom = SetMapAtom(S, T, mult, name)
        atom.setmap = (vals, m)
        atom.perturbed = perturbed
        return atom

    def map_basis(self, atom: SetMapAtom, t: int, s: int, j: int):
        """Per-target intertwiners of basis vector ``j`` of ``atom`` at ``(t, s)``.

        Returns ``None`` for the phantom vector of a perturbed entry.
        """
        vals, m = atom.setmap
        lam = atom.target.labels[t]
        mu = atom.source.labels[s]
        spaces = [specht.hom_space(lam[u], tuple(mu[x] for x in f)) for u, f in enumerate(self.fibers(vals, m))]
        total = 1
        for sp in spaces:
            total *= len(sp)
        if j >= total:
            return None
        idx = []
        for sp in reversed(spaces):
            idx.append(j % len(sp))
            j //= len(sp)
        idx.reverse()
        return [sp.basis[i] for sp, i in zip(spaces, idx)]

    # composition matrices -------------------------------------------------------

    def word_setmap(self, word: OneMor) -> tuple[tuple[int, ...], int]:
        cur = (tuple(range(len(word.source.labels[0]))), len(word.source.labels[0]))
        for a in word.factors:
            if not isinstance(a, SetMapAtom):
                raise TwoVectError(f"{a.name} is not the image of a set map")
            cur = compose_maps(a.setmap, cur)
        return cur

    def _compose_elements(self, outer_atom: SetMapAtom, g: list, inner_map, h: list, mu: tuple,
                          lam_mid: tuple, nu: tuple) -> list:
        """Compose per-target intertwiners ``g`` (for ``outer_atom``) after ``h``
        (for the composite ``inner_map``), returning per-target intertwiners in
        sorted fiber order for the composite."""
        ivals, _ = inner_map
        ovals, om = outer_atom.setmap
        out = []
        inner_fibers = self.fibers(ivals, len(lam_mid))
        for u, ofib in enumerate(self.fibers(ovals, om)):
            grouped = [s for t in ofib for s in inner_fibers[t]]
            srt = sorted(grouped)
            # block permutation on letters: grouped layout -> sorted layout
            off_sorted = {}
            acc = 0
            for s in srt:
                off_sorted[s] = acc
                acc += mu[s].size
            perm = []
            for s in grouped:
                perm.extend(off_sorted[s] + k for k in range(mu[s].size))
            x = g[u] * specht.kron_all([h[t] for t in ofib])
            if perm != sorted(perm):
                rho = specht.rep_perm(nu[u], tuple(perm))
                order = [srt.index(s) for s in grouped]
                p = specht.factor_permutation([specht.dim(mu[s]) for s in srt], order)
                # x acts on ⊠ in grouped order; precompose with sorted -> grouped
                x = rho * x * _inverse_perm_matrix(p)
            out.append(x)
        return out

    def composition_matrix(self, word: OneMor, t: int, s: int) -> fmpq_mat:
        """Matrix from the paths of ``word`` at ``(t, s)`` to the canonical basis
        of the composite set map's multiplicity space."""
        key = (tuple(id(a) for a in word.factors), t, s)
        got = self._comp.get(key)
        if got is not None:
            return got
        total_map = self.word_setmap(word)
        mu = word.source.labels[s]
        nu = word.target.labels[t]
        spaces = [specht.hom_space(nu[u], tuple(mu[x] for x in f))
                  for u, f in enumerate(self.fibers(*total_map))]
        nrows = 1
        for sp in spaces:
            nrows *= len(sp)
        paths = word.paths(t, s)
        out = _zeros(nrows, len(paths))
        n = len(word.factors)
        for col, path in enumerate(paths):
            inter, idx = path[: max(n - 1, 0)], path[max(n - 1, 0):]
            stops = (s,) + tuple(inter) + (t,)
            cur_map = (tuple(range(len(mu))), len(mu))
            elem = None
            for k, a in enumerate(word.factors):
                g = self.map_basis(a, stops[k + 1], stops[k], idx[k])
                if g is None:
                    elem = None
                    break
                lam_mid = a.source.labels[stops[k]]
                if k == 0:
                    elem = g
                else:
                    elem = self._compose_elements(a, g, cur_map, elem, mu, lam_mid, a.target.labels[stops[k + 1]])
                cur_map = compose_maps(a.setmap, cur_map)
            if elem is None:
                continue
            coords = [1]
            for sp, x in zip(spaces, elem):
                c = sp.coords(x)
                coords = [p * q for p in coords for q in c]
            for row, v in enumerate(coords):
                if v != 0:
                    out[row, col] = v
        self._comp[key] = out
        return out

    def coherence_iso(self, source: OneMor, target: OneMor) -> TwoMor:
        """The 2-isomorphism between two words of set-map atoms with equal
        composite set maps: ``C(target)^{-1} C(source)`` blockwise.

        Blocks where ``C(target)`` is not invertible (only possible for a
        perturbed model) are left zero.
        """
        if self.word_setmap(source) != self.word_setmap(target):
            raise TwoVectError("the two words compose to different set maps")
        blocks = {}
        keys = set(source.mult()) | set(target.mult())
        for (t, s) in keys:
            c1 = self.composition_matrix(source, t, s)
            c2 = self.composition_matrix(target, t, s)
            if c2.nrows() != c2.ncols() or c2.ncols() == 0 or c2.det() == 0:
                continue
            blocks[(t, s)] = c2.solve(c1)
        return TwoMor(source, target, blocks, check=False)

    # objects as 1-morphisms out of Vect and tensor embeddings --------------------

    def i_F(self, F: Partition) -> OneMor:
        """``X -> F ⊠ X`` from ``H1`` to ``H2`` (entries above ``D`` dropped)."""
        F = parse_partition(F)
        if F.size > self.D:
            raise ValueError(f"|F| = {F.size} exceeds D = {self.D}")
        key = ("i", F)
        atom = self._other.get(key)
        if atom is None:
            H1, H2 = self.cat(1), self.cat(2)
            mult = {}
            for si, (mu,) in enumerate(H1.labels):
                lab = (F, mu)
                if lab in H2.index:
                    mult[(H2.index[lab], si)] = 1
            atom = Atom(H1, H2, mult, f"i_{F}")
            self._other[key] = atom
        return OneMor.atom(atom)

    def j_F(self, F: Partition) -> OneMor:
        return transpose(self.i_F(F))

    def i_coproduct(self, F: Partition) -> OneMor:
        """``X -> H(c̄)(Δ^l(F), X)`` from ``H2`` to ``H4``.

        ``Δ^l(F)`` has multiplicity space at ``(a, b)`` equal to the transpose
        of the multiplication space at ``(F; a, b)``; the simple ``(x, y)`` goes
        to ``(a, x, b, y)``.
        """
        F = parse_partition(F)
        key = ("iphi", F)
        atom = self._other.get(key)
        if atom is None:
            H2, H4 = self.cat(2), self.cat(4)
            mult = {}
            pairs = [(a, b) for a in partitions_up_to(F.size) for b in partitions_up_to(F.size)
                     if a.size + b.size == F.size]
            for si, (x, y) in enumerate(H2.labels):
                for a, b in pairs:
                    c = lr_coefficient(F, a, b)
                    lab = (a, x, b, y)
                    if c and lab in H4.index:
                        mult[(H4.index[lab], si)] = c
            atom = Atom(H2, H4, mult, f"i_Δ{F}")
            self._other[key] = atom
        return OneMor.atom(atom)

    def m(self) -> OneMor:
        return self.H_map(((0, 0), 1))

    def m_F(self, F: Partition) -> OneMor:
        return compose1(self.m(), self.i_F(F))

    def delta_F(self, F: Partition) -> OneMor:
        """``Δ^r_F = j_F ∘ Δ^r`` with ``Δ^r`` the transpose of ``m``."""
        return compose1(self.j_F(F), transpose(self.m()))


def _inverse_perm_matrix(p):
    return p.transpose()


# -- squares ----------------------------------------------------------------------


def hopf_square(model: SshModel, coherent: bool = True) -> Quintet:
    """``H`` of the Cartesian square ``[4] -> [2] -> [1]``.

    Top ``(13)(24)``, left ``(12)(34)``, both verticals/horizontals into
    ``[1]`` the multiplication. ``coherent=False`` uses the enumeration
    identity instead of the intertwiner isomorphism.
    """
    g = model.H_map(((0, 1, 0, 1), 2))
    f = model.H_map(((0, 0, 1, 1), 2))
    m = model.m()
    src, tgt = compose1(m, g), compose1(m, f)
    alpha = model.coherence_iso(src, tgt) if coherent else canonical_iso(src, tgt)
    return Quintet(f=f, g=g, h=m, i=m, alpha=alpha)


def heis_top_square(model: SshModel, F: Partition) -> Quintet:
    """Top square ``β : i_F ∘ m => m̄ ∘ i_{Δ^l(F)}`` (unit of ``Δ^l ⊣ m`` on ``F``)."""
    F = parse_partition(F)
    m = model.m()
    mbar = model.H_map(((0, 1, 0, 1), 2))
    iF = model.i_F(F)
    iphi = model.i_coproduct(F)
    src = compose1(iF, m)
    tgt = compose1(mbar, iphi)
    H2 = model.cat(2)
    blocks = {}
    for (t, s) in set(src.mult()) & set(tgt.mult()):
        lam1, lam2 = H2.labels[t]
        if lam1 != F:
            continue
        rows = tgt.paths(t, s)
        cols = src.paths(t, s)
        col_pos = {(p[1]): j for j, p in enumerate(cols)}  # (κ, j_m, j_i) -> j_m
        mat = _zeros(len(rows), len(cols))
        for r, (mid, j_phi, j_bar) in enumerate(rows):
            a, x, b, y = model.cat(4).labels[mid]
            d2 = len(specht.hom_space(lam2, (x, y)))
            i1, i2 = divmod(j_bar, d2)
            if i1 == j_phi and i2 in col_pos:
                mat[r, col_pos[i2]] = 1
        blocks[(t, s)] = mat
    return Quintet(f=iphi, g=m, h=iF, i=mbar, alpha=TwoMor(src, tgt, blocks, check=False))


def heis_bottom_square(model: SshModel, coherent: bool = True) -> Quintet:
    """``H`` of the Cartesian square with top ``m̄ = (13)(24)``, left ``m² = (12)(34)``."""
    m = model.m()
    mbar = model.H_map(((0, 1, 0, 1), 2))
    m2 = model.H_map(((0, 0, 1, 1), 2))
    src, tgt = compose1(m, mbar), compose1(m, m2)
    alpha = model.coherence_iso(src, tgt) if coherent else canonical_iso(src, tgt)
    return Quintet(f=m2, g=mbar, h=m, i=m, alpha=alpha)


def build_heis_square(F, D: int | None = None, model: SshModel | None = None, coherent: bool = True) -> Quintet:
    """The square ``α : m_F ∘ m => m ∘ m²_{Δ^l(F)}`` as the vertical pasting of
    the unit square over the Cartesian square."""
    F = parse_partition(F)
    if model is None:
        model = SshModel(D)
    if F.size > model.D - 1 and F.size > 0:
        raise ValueError(f"need |F| <= D - 1, got |F| = {F.size}, D = {model.D}")
    return paste_vertical(heis_top_square(model, F), heis_bottom_square(model, coherent))


# -- relation cubes ----------------------------------------------------

# The cube of finite sets whose mates give the two relation cubes. Axis 0 is
# horizontal, axis 1 vertical, axis 2 transversal; maps are 1-based value lists.
_SET_CUBE_OBJECTS = {(0, 0, 0): 6, (1, 0, 0): 4, (0, 1, 0): 4, (1, 1, 0): 2,
                     (0, 0, 1): 3, (1, 0, 1): 2, (0, 1, 1): 2, (1, 1, 1): 1}
_SET_CUBE_EDGES = {
    (0, (0, 0, 0)): (1, 3, 1, 3, 2, 4),
    (0, (0, 1, 0)): (1, 2, 1, 2),
    (0, (0, 0, 1)): (1, 1, 2),
    (0, (0, 1, 1)): (1, 1),
    (1, (0, 0, 0)): (1, 2, 3, 4, 3, 4),
    (1, (1, 0, 0)): (1, 1, 2, 2),
    (1, (0, 0, 1)): (1, 2, 2),
    (1, (1, 0, 1)): (1, 1),
    (2, (0, 0, 0)): (1, 1, 2, 2, 3, 3),
    (2, (1, 0, 0)): (1, 2, 1, 2),
    (2, (0, 1, 0)): (1, 1, 2, 2),
    (2, (1, 1, 0)): (1, 1),
}


def set_cube(model: SshModel, coherent: bool = True) -> Cube:
    """``H`` of the cube of sets; each face is the coherence isomorphism."""
    objects = {v: model.cat(n) for v, n in _SET_CUBE_OBJECTS.items()}
    edges = {}
    for (axis, v), vals in _SET_CUBE_EDGES.items():
        w = list(v)
        w[axis] = 1
        m = _SET_CUBE_OBJECTS[tuple(w)]
        edges[(axis, v)] = model.H_map((tuple(x - 1 for x in vals), m))
    cube = Cube(objects, edges, {})
    for a, b in ((0, 1), (0, 2), (1, 2)):
        for c in (0, 1):
            base = [0, 0, 0]
            base[3 - a - b] = c
            base = tuple(base)
            va = list(base)
            va[a] = 1
            vb = list(base)
            vb[b] = 1
            src = compose1(cube.edge(b, tuple(va)), cube.edge(a, base))
            tgt = compose1(cube.edge(a, tuple(vb)), cube.edge(b, base))
            cube.faces[(a, b, c)] = model.coherence_iso(src, tgt) if coherent else canonical_iso(src, tgt)
    cube.validate()
    return cube


def relation_cubes(model: SshModel, coherent: bool = True) -> dict[str, Cube]:
    """The two relation cubes: left mate in the two planar directions, and
    right mate in the transversal direction."""
    base = set_cube(model, coherent)
    left = cube_mate(cube_mate(base, "left"), "left")
    right = cube_mate(base, "right")
    return {"set_cube": base, "left_left": left, "right": right}


# -- reports ----------------------------------------------------------------------------


def _bc_summary(r) -> dict:
    out = {"ok": r.ok, "side": r.side, "blocks_checked": r.blocks_checked, "ranks": r.rank_report}
    if r.witness is not None:
        key, m, reason = r.witness
        out["witness"] = {"block": list(key), "reason": reason, "shape": [m.nrows(), m.ncols()]}
    return out


def perturbed_model(D: int) -> SshModel:
    """Model whose multiplication gets one extra basis vector at ``((2); (1), (1))``."""
    probe = SshModel(D)
    t = probe.cat(1).index[(Partition((2,)),)]
    s = probe.cat(2).index[(Partition((1,)), Partition((1,)))]
    return SshModel(D, perturb=((0, 0), 1, (t, s)))


def verify_hopf_square(D: int, model: SshModel | None = None, cubes: bool = True, collect: bool = True) -> dict:
    """Beck-Chevalley for ``H`` of the square ``[4] -> [2] -> [1]`` on both
    sides, and commutativity of the relation cubes."""
    model = model or SshModel(D)
    q = hopf_square(model)
    left = check_bc(q, "left", collect=collect)
    right = check_bc(q, "right", collect=collect)
    k_ok = bool((compose1(q.h, q.g).dense() == compose1(q.i, q.f).dense()).all())
    out = {"check": "hopf_square", "D": model.D, "bc_left": _bc_summary(left), "bc_right": _bc_summary(right),
           "k_level_commutes": k_ok}
    ok = left.ok and right.ok and k_ok
    if cubes:
        cube_rep = {}
        for name, cube in relation_cubes(model).items():
            c_ok, diff = check_cube_commutes(cube)
            cube_rep[name] = {"ok": c_ok, "witness": None if c_ok else {"block": list(diff[0])}}
            ok = ok and c_ok
        out["cubes"] = cube_rep
    out["ok"] = ok
    return out


def verify_cubes(D: int, model: SshModel | None = None) -> dict:
    model = model or SshModel(D)
    rep = {}
    for name, cube in relation_cubes(model).items():
        c_ok, diff = check_cube_commutes(cube)
        rep[name] = {"ok": c_ok, "witness": None if c_ok else {"block": list(diff[0])}}
    return {"check": "relation_cubes", "D": model.D, "ok": all(v["ok"] for v in rep.values()), "cubes": rep}


def lambda_matrix(model: SshModel, fn, source_arity: int) -> np.ndarray:
    """Integer matrix of a map ``Λ^{⊗k} -> Λ`` given on basis tuples, rows
    and columns indexed like ``H1`` and ``H(k)``; images above ``D`` dropped."""
    H1, Hk = model.cat(1), model.cat(source_arity)
    out = np.zeros((len(H1), len(Hk)), dtype=object)
    for j, lab in enumerate(Hk.labels):
        for (lam,), c in fn(lab).items():
            if (lam,) in H1.index:
                out[H1.index[(lam,)], j] = c
    return out


def verify_deltam(F, D: int, model: SshModel | None = None, collect: bool = True) -> dict:
    """Right mate of the Heisenberg square is invertible blockwise, and both
    of its 1-morphisms decategorify to ``x ⊗ y ↦ Δ_F(xy)``."""
    F = parse_partition(F)
    model = model or SshModel(D)
    q = build_heis_square(F, model=model)
    r = check_bc(q, "right", collect=collect)
    src = r.mate.alpha.source.dense()
    tgt = r.mate.alpha.target.dense()
    sF = SymTensor.basis(F)
    oracle = lambda_matrix(model, lambda lab: op_delta(sF, multiply(SymTensor.basis(lab[0]), SymTensor.basis(lab[1]))), 2)
    k_ok = bool((src == tgt).all() and (src == oracle).all())
    return {"check": "deltam", "F": to_text(F), "D": model.D, "ok": r.ok and k_ok, "k_level_ok": k_ok,
            "mate": _bc_summary(r)}


def verify_k_level(D: int, max_F: int = 3, model: SshModel | None = None) -> dict:
    """``m_F``, ``Δ^r_F`` and ``H([k] -> [1])`` agree with the ring operations."""
    model = model or SshModel(D)
    rows = []
    for F in partitions_up_to(min(max_F, D)):
        sF = SymTensor.basis(F)
        mF = lambda_matrix(model, lambda lab: op_m(sF, SymTensor.basis(lab[0]), D), 1)
        dF = lambda_matrix(model, lambda lab: op_delta(sF, SymTensor.basis(lab[0])), 1)
        rows.append({"F": to_text(F), "m_F": bool((model.m_F(F).dense() == mF).all()),
                     "delta_F": bool((model.delta_F(F).dense() == dF).all())})
    m2 = lambda_matrix(model, lambda lab: multiply(SymTensor.basis(lab[0]), SymTensor.basis(lab[1])), 2)
    m3 = lambda_matrix(model, lambda lab: multiply(multiply(SymTensor.basis(lab[0]), SymTensor.basis(lab[1])),
                                                   SymTensor.basis(lab[2])), 3)
    prod_ok = bool((model.m().dense() == m2).all()) and bool((model.H_map(((0, 0, 0), 1)).dense() == m3).all())
    ok = prod_ok and all(r["m_F"] and r["delta_F"] for r in rows)
    return {"check": "k_level", "D": model.D, "ok": ok, "products": prod_ok, "rows": rows}


def verify_mackey_isos(D: int, max_total: int = 4, model: SshModel | None = None) -> dict:
    """``m_F m_G = Σ c^H_{FG} m_H`` and ``Δ_G Δ_F = Σ c^H_{FG} Δ_H`` as matrices."""
    model = model or SshModel(D)
    rows = []
    parts = partitions_up_to(min(max_total, D))
    for F in parts:
        for G in parts:
            if F.size + G.size > min(max_total, D):
                continue
            lhs_m = compose1(model.m_F(F), model.m_F(G)).dense()
            lhs_d = compose1(model.delta_F(G), model.delta_F(F)).dense()
            rhs_m = np.zeros_like(lhs_m)
            rhs_d = np.zeros_like(lhs_d)
            for H, c in schur_product(F, G).items():
                rhs_m = rhs_m + c * model.m_F(H).dense()
                rhs_d = rhs_d + c * model.delta_F(H).dense()
            rows.append({"F": to_text(F), "G": to_text(G), "m": bool((lhs_m == rhs_m).all()),
                         "delta": bool((lhs_d == rhs_d).all()), "transpose": bool((lhs_m.T == lhs_d).all())})
    return {"check": "mackey", "D": model.D, "ok": all(r["m"] and r["delta"] and r["transpose"] for r in rows),
            "rows": rows}


def cartesian_squares(max_size: int = 3) -> list[tuple[SetMap, SetMap, SetMap, SetMap]]:
    """Cartesian squares ``(f, g, h, i)`` of sets of size at most ``max_size``,
    one per isomorphism class of corner ``B -i-> D <-h- C``."""
    seen = set()
    out = []
    for d in range(max_size + 1):
        perms = list(itertools.permutations(range(1, d + 1)))
        for nb in range(max_size + 1):
            for nc in range(max_size + 1):
                for i in all_set_maps(nb, d):
                    for h in all_set_maps(nc, d):
                        key = min((tuple(sorted(p[v - 1] for v in i.values)), tuple(sorted(p[v - 1] for v in h.values)))
                                  for p in perms) if perms else ((), ())
                        key = (d, nb, nc, key)
                        if key in seen:
                            continue
                        n, f, g = fiber_product(i, h)
                        if n > max_size:
                            continue
                        seen.add(key)
                        out.append((f, g, h, i))
    return out


def verify_cartesian_squares(D: int, max_size: int = 3, model: SshModel | None = None) -> dict:
    """Every Cartesian square of small sets satisfies BC after applying ``H``."""
    model = model or SshModel(D)
    rows = []
    for f, g, h, i in cartesian_squares(max_size):
        F, G, Hh, I = (model.H_map(x.zero_based()) for x in (f, g, h, i))
        alpha = model.coherence_iso(compose1(Hh, G), compose1(I, F))
        r = check_bc(Quintet(f=F, g=G, h=Hh, i=I, alpha=alpha), "left")
        rows.append({"i": list(i.values), "h": list(h.values), "targets": i.target_size, "ok": r.ok,
                     "witness": _bc_summary(r).get("witness")})
    return {"check": "cartesian_squares", "D": model.D, "ok": all(r["ok"] for r in rows), "squares": len(rows),
            "rows": rows}


def verify_connectedness(D: int, model: SshModel | None = None) -> dict:
    """``H(∅) = Vect`` and the unit of ``m_∅ ⊣ Δ_∅`` is invertible on it."""
    model = model or SshModel(D)
    e = model.H_map(((), 1))
    adj = transpose_adjunction(e)
    back = compose1(adj.right, e)
    eta = adj.unit.block(0, 0)
    ok = (len(model.cat(0)) == 1 and back.mult() == {(0, 0): 1} and eta.nrows() == eta.ncols() == 1
          and eta[0, 0] == 1 and all(adj.triangle_identities()))
    return {"check": "connectedness", "D": model.D, "ok": bool(ok)}


def verify_all(D: int, max_F: int = 3) -> dict:
    model = SshModel(D)
    reports = [verify_hopf_square(D, model), verify_k_level(D, max_F, model), verify_mackey_isos(D, 4, model),
               verify_connectedness(D, model), verify_cartesian_squares(D, 2, model)]
    for F in partitions_up_to(min(max_F, max(D - 1, 0))):
        reports.append(verify_deltam(F, D, model))
    return {"check": "ssh_all", "D": D, "ok": all(r["ok"] for r in reports), "reports": reports}

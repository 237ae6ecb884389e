"""Positive self-adjoint Hopf algebras given by multiplication data.

A :class:`PshAlgebra` stores a graded basis and the structure constants of
the product, truncated at ``max_degree``. The coproduct is never stored: it
is read off the product table by adjointness with respect to the basis, which
is taken to be orthonormal.

Maps of finite sets act on tensor powers through :func:`m_a` (multiply along
fibers) and :func:`delta_a` (its adjoint). The axioms are checked in that
functorial language, with the Hopf axiom phrased as commutation of the mate
of a Cartesian square.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from .linalg import integer_kernel
from .partitions import EMPTY, Partition, generate_partitions
from .symfunc import SymTensor, _label_text, schur_product


class NonActiveError(ValueError):
    """A map of pointed sets sends a non-basepoint to the basepoint."""


# -- finite sets ----------------------------------------------------------------


@dataclass(frozen=True)
class SetMap:
    """A map ``{1..n} -> {1..m}`` stored as its value table (1-based)."""

    values: tuple[int, ...]
    target_size: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.target_size < 0:
            raise ValueError("target size must be nonnegative")
        for v in self.values:
            if not 1 <= v <= self.target_size:
                raise ValueError(f"value {v} outside 1..{self.target_size}")

    @property
    def source_size(self) -> int:
        return len(self.values)

    @classmethod
    def identity(cls, n: int) -> "SetMap":
        return cls(tuple(range(1, n + 1)), n)

    @classmethod
    def collapse(cls, n: int) -> "SetMap":
        """The unique map ``[n] -> [1]``."""
        return cls((1,) * n, 1)

    def __call__(self, s: int) -> int:
        return self.values[s - 1]

    def compose(self, other: "SetMap") -> "SetMap":
        """``self ∘ other``."""
        if other.target_size != self.source_size:
            raise ValueError("maps are not composable")
        return SetMap(tuple(self(v) for v in other.values), self.target_size)

    def fiber(self, t: int) -> list[int]:
        return [s for s, v in enumerate(self.values, 1) if v == t]

    def zero_based(self) -> tuple[tuple[int, ...], int]:
        return tuple(v - 1 for v in self.values), self.target_size


def all_set_maps(n: int, m: int) -> list[SetMap]:
    return [SetMap(v, m) for v in itertools.product(range(1, m + 1), repeat=n)]


def fiber_product(b: SetMap, c: SetMap) -> tuple[int, SetMap, SetMap]:
    """Pullback of ``B -b-> D <-c- C``.

    Returns ``(|P|, p_B, p_C)``; points of ``P`` are the pairs ``(x, y)`` with
    ``b(x) = c(y)``, ordered by ``y`` first and then ``x``.
    """
    if b.target_size != c.target_size:
        raise ValueError("the two maps have different targets")
    pts = [(x, y) for y in range(1, c.source_size + 1) for x in range(1, b.source_size + 1) if b(x) == c(y)]
    return len(pts), SetMap(tuple(x for x, _ in pts), b.source_size), SetMap(tuple(y for _, y in pts), c.source_size)


def is_cartesian(f: SetMap, g: SetMap, h: SetMap, i: SetMap) -> bool:
    """Is ``P -g-> C -h-> D``, ``P -f-> B -i-> D`` a pullback square?"""
    if h.compose(g) != i.compose(f):
        return False
    pairs = [(f(p), g(p)) for p in range(1, f.source_size + 1)]
    expected = {(x, y) for x in range(1, i.source_size + 1) for y in range(1, h.source_size + 1) if i(x) == h(y)}
    return len(pairs) == len(set(pairs)) and set(pairs) == expected


@dataclass(frozen=True)
class ActiveMap:
    """A map of pointed sets ``<n> -> <m>``; value 0 is the basepoint."""

    values: tuple[int, ...]
    target_size: int

    def unpointed(self) -> SetMap:
        if any(v == 0 for v in self.values):
            raise NonActiveError(f"map {self.values} sends a point to the basepoint")
        return SetMap(self.values, self.target_size)


def pullback_active_square(bottom: Sequence, right: Sequence) -> list[tuple[int, SetMap, SetMap]]:
    """Complete tuple-wise corners ``B_j -> D_j <- C_j`` of active maps.

    ``bottom`` and ``right`` are equally long sequences of :class:`ActiveMap`
    (or :class:`SetMap`). Each component is completed by
    :func:`fiber_product` of the non-basepoint parts.
    """
    if len(bottom) != len(right):
        raise ValueError("corner tuples have different lengths")
    out = []
    for b, c in zip(bottom, right):
        b = b.unpointed() if isinstance(b, ActiveMap) else b
        c = c.unpointed() if isinstance(c, ActiveMap) else c
        out.append(fiber_product(b, c))
    return out


# -- the algebra ---------------------------------------------------------------


Label = Hashable


class PshAlgebra:
    """Graded based ℤ-module with a product given by structure constants.

    ``basis[n]`` lists the labels of degree ``n``; ``mult[(a, b)]`` maps
    labels to integer coefficients. Missing pairs multiply to zero, and
    products leaving degree ``max_degree`` are dropped.
    """

    def __init__(self, basis: Sequence[Sequence[Label]], mult: Mapping[tuple[Label, Label], Mapping[Label, int]],
                 unit: Label, max_degree: int, name: str = "A"):
        self.basis = [list(b) for b in basis]
        self.max_degree = max_degree
        self.unit = unit
        self.name = name
        if len(self.basis) != max_degree + 1:
            raise ValueError("basis must list every degree 0..max_degree")
        self.degree = {}
        for n, labs in enumerate(self.basis):
            for lab in labs:
                if lab in self.degree:
                    raise ValueError(f"duplicate basis label {lab!r}")
                self.degree[lab] = n
        if self.degree.get(unit) != 0:
            raise ValueError("the unit label must have degree 0")
        self.mult = {k: {l: int(c) for l, c in v.items() if c} for k, v in mult.items()}
        self._comult: dict[Label, dict[tuple[Label, Label], int]] | None = None

    # basic data ---------------------------------------------------------------

    def labels(self, max_degree: int | None = None) -> list[Label]:
        top = self.max_degree if max_degree is None else min(max_degree, self.max_degree)
        return [lab for n in range(top + 1) for lab in self.basis[n]]

    def structure_constant(self, a: Label, b: Label, c: Label) -> int:
        return self.mult.get((a, b), {}).get(c, 0)

    def product_labels(self, a: Label, b: Label) -> dict[Label, int]:
        return self.mult.get((a, b), {})

    def comult(self, c: Label) -> dict[tuple[Label, Label], int]:
        """``Δ(c)`` read off the product table by adjointness."""
        if self._comult is None:
            table: dict[Label, dict] = defaultdict(dict)
            for (a, b), prod in self.mult.items():
                for lab, v in prod.items():
                    table[lab][(a, b)] = v
            self._comult = dict(table)
        return self._comult.get(c, {})

    # elements -------------------------------------------------------------------

    def multiply(self, x: SymTensor, y: SymTensor) -> SymTensor:
        out: dict = defaultdict(int)
        for (a,), u in x.items():
            for (b,), v in y.items():
                for c, w in self.product_labels(a, b).items():
                    out[(c,)] += u * v * w
        return SymTensor(1, out)

    def coproduct(self, x: SymTensor) -> SymTensor:
        out: dict = defaultdict(int)
        for (c,), u in x.items():
            for pair, w in self.comult(c).items():
                out[pair] += u * w
        return SymTensor(2, out)

    def counit(self, x: SymTensor) -> int:
        return x[(self.unit,)]

    def unit_element(self) -> SymTensor:
        return SymTensor.basis(self.unit)

    def op_m(self, x: SymTensor, z: SymTensor) -> SymTensor:
        return self.multiply(x, z)

    def op_delta(self, y: SymTensor, z: SymTensor) -> SymTensor:
        """Skewing: pair the first leg of ``Δ(z)`` with ``y``."""
        yd = {k[0]: v for k, v in y.items()}
        out: dict = defaultdict(int)
        for (c,), u in z.items():
            for (a, b), w in self.comult(c).items():
                if a in yd:
                    out[(b,)] += yd[a] * u * w
        return SymTensor(1, out)

    def iterated_product(self, labels: Sequence[Label]) -> dict[Label, int]:
        """Product of basis labels left to right; the empty product is the unit."""
        cur = {self.unit: 1}
        for lab in labels:
            nxt: dict = defaultdict(int)
            for a, u in cur.items():
                for c, w in self.product_labels(a, lab).items():
                    nxt[c] += u * w
            cur = {k: v for k, v in nxt.items() if v}
        return cur

    def iterated_coproduct(self, c: Label, k: int) -> dict[tuple, int]:
        """``Δ^{(k)}(c)`` into ``k`` legs; ``k = 0`` is the counit."""
        if k == 0:
            return {(): 1} if c == self.unit else {}
        cur = {(c,): 1}
        for _ in range(k - 1):
            nxt: dict = defaultdict(int)
            for idx, u in cur.items():
                for (a, b), w in self.comult(idx[-1]).items():
                    nxt[idx[:-1] + (a, b)] += u * w
            cur = nxt
        return dict(cur)

    # serialization -------------------------------------------------------------

    def to_json(self) -> dict:
        from .symfunc import _label_json

        return {
            "name": self.name,
            "max_degree": self.max_degree,
            "unit": _label_json(self.unit),
            "basis": [[_label_json(l) for l in labs] for labs in self.basis],
            "mult": [
                {"a": _label_json(a), "b": _label_json(b),
                 "product": [{"label": _label_json(c), "coeff": v} for c, v in sorted(p.items(), key=lambda kv: repr(kv[0]))]}
                for (a, b), p in sorted(self.mult.items(), key=lambda kv: repr(kv[0])) if p
            ],
        }

    @classmethod
    def from_json(cls, doc) -> "PshAlgebra":
        basis = [[_parse_label(l) for l in labs] for labs in doc["basis"]]
        mult = {}
        for entry in doc["mult"]:
            key = (_parse_label(entry["a"]), _parse_label(entry["b"]))
            mult[key] = {_parse_label(t["label"]): int(t["coeff"]) for t in entry["product"]}
        return cls(basis, mult, _parse_label(doc["unit"]), int(doc["max_degree"]), doc.get("name", "A"))

    def __repr__(self) -> str:
        return f"PshAlgebra({self.name}, D={self.max_degree})"


def _parse_label(x):
    if isinstance(x, list) and all(isinstance(v, int) for v in x):
        return Partition(x)
    return tuple(_parse_label(v) for v in x)


def symmetric_functions(D: int) -> PshAlgebra:
    """Λ in the Schur basis, truncated at degree ``D``."""
    basis = [generate_partitions(n) for n in range(D + 1)]
    mult = {}
    for n in range(D + 1):
        for a in range(n + 1):
            for mu in basis[a]:
                for nu in basis[n - a]:
                    mult[(mu, nu)] = schur_product(mu, nu)
    return PshAlgebra(basis, mult, EMPTY, D, name="Lambda")


def tensor_psh(A: PshAlgebra, B: PshAlgebra, max_degree: int | None = None) -> PshAlgebra:
    """``A ⊗ B`` with pair labels and componentwise product (no signs)."""
    D = min(A.max_degree, B.max_degree) if max_degree is None else max_degree
    if D > min(A.max_degree, B.max_degree):
        raise ValueError("tensor product truncation exceeds a factor's truncation")
    basis = [[(a, b) for k in range(n + 1) for a in A.basis[k] for b in B.basis[n - k]] for n in range(D + 1)]
    mult = {}
    labs = [l for labs_n in basis for l in labs_n]
    deg = {l: n for n, labs_n in enumerate(basis) for l in labs_n}
    for x in labs:
        for y in labs:
            if deg[x] + deg[y] > D:
                continue
            pa = A.product_labels(x[0], y[0])
            pb = B.product_labels(x[1], y[1])
            prod = {}
            for c, u in pa.items():
                for d, v in pb.items():
                    prod[(c, d)] = u * v
            mult[(x, y)] = prod
    return PshAlgebra(basis, mult, (A.unit, B.unit), D, name=f"({A.name}⊗{B.name})")


def tensor_power(A: PshAlgebra, k: int, max_degree: int | None = None) -> PshAlgebra:
    """``A^{⊗k}`` built as left-nested pairs; ``k = 1`` returns ``A``."""
    if k < 1:
        raise ValueError("need k >= 1")
    out = A
    for _ in range(k - 1):
        out = tensor_psh(out, A, max_degree)
    return out


def negate_constant(A: PshAlgebra, a: Label, b: Label, c: Label) -> PshAlgebra:
    """Mutant with the single structure constant ``c^c_{ab}`` negated."""
    mult = {k: dict(v) for k, v in A.mult.items()}
    if mult.get((a, b), {}).get(c, 0) == 0:
        raise ValueError("that structure constant is zero")
    mult[(a, b)][c] = -mult[(a, b)][c]
    return PshAlgebra(A.basis, mult, A.unit, A.max_degree, name=A.name + "*")


# -- set maps acting on tensor powers ------------------------------------------------


def m_a(a: SetMap, x: SymTensor, A: PshAlgebra) -> SymTensor:
    """Multiply the legs of ``x`` along the fibers of ``a``."""
    if x.arity != a.source_size:
        raise ValueError(f"arity {x.arity} does not match source size {a.source_size}")
    fibers = [a.fiber(t) for t in range(1, a.target_size + 1)]
    out: dict = defaultdict(int)
    for idx, u in x.items():
        legs = [A.iterated_product([idx[s - 1] for s in f]) for f in fibers]
        for combo in itertools.product(*(l.items() for l in legs)):
            w = u
            for _, v in combo:
                w *= v
            out[tuple(c for c, _ in combo)] += w
    return SymTensor(a.target_size, out)


def delta_a(a: SetMap, y: SymTensor, A: PshAlgebra) -> SymTensor:
    """Adjoint of :func:`m_a`: iterated coproduct of each leg into its fiber."""
    if y.arity != a.target_size:
        raise ValueError(f"arity {y.arity} does not match target size {a.target_size}")
    fibers = [a.fiber(t) for t in range(1, a.target_size + 1)]
    out: dict = defaultdict(int)
    n = a.source_size
    for idx, u in y.items():
        legs = [A.iterated_coproduct(idx[t], len(f)) for t, f in enumerate(fibers)]
        for combo in itertools.product(*(l.items() for l in legs)):
            w = u
            slot = [None] * n
            for (parts, v), f in zip(combo, fibers):
                w *= v
                for s, lab in zip(f, parts):
                    slot[s - 1] = lab
            out[tuple(slot)] += w
    return SymTensor(n, out)


def basis_tensors(A: PshAlgebra, arity: int, D: int) -> Iterable[tuple]:
    """All ``arity``-tuples of labels of total degree at most ``D``."""
    labs = A.labels(D)

    def rec(prefix, budget):
        if len(prefix) == arity:
            yield tuple(prefix)
            return
        for lab in labs:
            d = A.degree[lab]
            if d <= budget:
                yield from rec(prefix + [lab], budget - d)

    yield from rec([], D)


def square_mate_check(A: PshAlgebra, f: SetMap, g: SetMap, h: SetMap, i: SetMap, D: int):
    """1-categorical mate of the image of a square of sets.

    The square has ``h ∘ g = i ∘ f``; the mate compares ``m_g ∘ Δ_f`` with
    ``Δ_h ∘ m_i`` on basis tensors of ``A^{⊗B}`` (``B`` the source of ``i``)
    of degree at most ``D``. Returns ``(ok, checked, witness)``.
    """
    if h.compose(g) != i.compose(f):
        raise ValueError("the square of sets does not commute")
    n = 0
    for idx in basis_tensors(A, i.source_size, D):
        x = SymTensor.basis(*idx)
        lhs = m_a(g, delta_a(f, x, A), A)
        rhs = delta_a(h, m_a(i, x, A), A)
        n += 1
        if lhs != rhs:
            return False, n, {"input": [_label_text(t) for t in idx], "lhs": lhs.to_text(), "rhs": rhs.to_text()}
    return True, n, None


# -- axioms ------------------------------------------------------------------------------


def _entry(name: str, ok: bool, checked: int, witness=None, **extra) -> dict:
    out = {"axiom": name, "ok": bool(ok), "checked": checked, "witness": witness}
    out.update(extra)
    return out


def check_positivity(A: PshAlgebra, D: int) -> dict:
    n = 0
    for a in A.labels(D):
        for b in A.labels(D - A.degree[a]):
            for c, v in A.product_labels(a, b).items():
                n += 1
                if v < 0:
                    return _entry("positivity", False, n, {"a": _label_text(a), "b": _label_text(b), "c": _label_text(c), "coeff": v})
    return _entry("positivity", True, n)


def check_self_adjoint(A: PshAlgebra, D: int) -> dict:
    """``<m(a⊗b), c> = <a⊗b, Δc>`` with ``Δ`` assembled independently by
    iterating over all splittings, plus nonnegativity and counitality of Δ."""
    n = 0
    for c in A.labels(D):
        dc = A.comult(c)
        for pair, v in dc.items():
            if v < 0:
                return _entry("self_adjointness", False, n, {"c": _label_text(c), "term": _label_text(pair), "coeff": v})
        if dc.get((c, A.unit), 0) != 1 or dc.get((A.unit, c), 0) != 1:
            return _entry("self_adjointness", False, n, {"c": _label_text(c), "reason": "Δ(c) lacks c⊗1 or 1⊗c"})
        dc_deg = A.degree[c]
        for k in range(dc_deg + 1):
            for a in A.basis[k]:
                for b in A.basis[dc_deg - k]:
                    n += 1
                    lhs = A.multiply(SymTensor.basis(a), SymTensor.basis(b))[(c,)]
                    if lhs != dc.get((a, b), 0):
                        return _entry("self_adjointness", False, n,
                                      {"a": _label_text(a), "b": _label_text(b), "c": _label_text(c), "product": lhs, "coproduct": dc.get((a, b), 0)})
    return _entry("self_adjointness", True, n)


def check_algebra(A: PshAlgebra, D: int) -> dict:
    """Unit law and associativity on basis triples of degree at most ``D``."""
    n = 0
    u = A.unit_element()
    for a in A.labels(D):
        x = SymTensor.basis(a)
        n += 1
        if A.multiply(u, x) != x or A.multiply(x, u) != x:
            return _entry("unit_associativity", False, n, {"a": _label_text(a), "reason": "unit law"})
    for a, b, c in basis_tensors(A, 3, D):
        n += 1
        x, y, z = (SymTensor.basis(t) for t in (a, b, c))
        if A.multiply(A.multiply(x, y), z) != A.multiply(x, A.multiply(y, z)):
            return _entry("unit_associativity", False, n, {"a": _label_text(a), "b": _label_text(b), "c": _label_text(c)})
    return _entry("unit_associativity", True, n)


HOPF_SQUARE = (SetMap((1, 1, 2, 2), 2), SetMap((1, 2, 1, 2), 2), SetMap.collapse(2), SetMap.collapse(2))


def check_hopf_mate(A: PshAlgebra, D: int) -> dict:
    """Mate of the square ``[4] -> [2] -> [1]`` commutes: ``Δ m = m_{(13)(24)} (Δ⊗Δ)``."""
    f, g, h, i = HOPF_SQUARE
    ok, n, w = square_mate_check(A, f, g, h, i, D)
    return _entry("hopf_mate", ok, n, w)


def check_connected(A: PshAlgebra, D: int) -> dict:
    """Degree 0 is ℤ·unit, and unit∘counit is the identity there."""
    zero = A.basis[0]
    if zero != [A.unit]:
        return _entry("connectedness", False, 1, {"degree0": [_label_text(l) for l in zero]})
    u = A.unit_element()
    empty = SetMap((), 1)
    back = m_a(empty, delta_a(empty, u, A), A)
    if back != u or A.counit(u) != 1:
        return _entry("connectedness", False, 2, {"unit_counit": back.to_text()})
    return _entry("connectedness", True, 2)


def check_psh_axioms(A: PshAlgebra, D: int | None = None) -> dict:
    """Report on positivity, self-adjointness, the Hopf mate square and
    connectedness (plus unit/associativity) for degrees at most ``D``."""
    D = A.max_degree if D is None else D
    if D > A.max_degree:
        raise ValueError(f"D = {D} exceeds the algebra's truncation {A.max_degree}")
    entries = [check_positivity(A, D), check_self_adjoint(A, D), check_algebra(A, D),
               check_hopf_mate(A, D), check_connected(A, D)]
    return {"check": "psh_axioms", "algebra": A.name, "D": D, "ok": all(e["ok"] for e in entries), "axioms": entries}


# -- primitives ---------------------------------------------------------------------------


def reduced_coproduct_matrix(A: PshAlgebra, n: int) -> tuple[list[list[int]], list[tuple]]:
    """Rows: pairs ``(a, b)`` of positive degrees summing to ``n``; columns: ``A_n``."""
    rows = [(a, b) for k in range(1, n) for a in A.basis[k] for b in A.basis[n - k]]
    pos = {r: k for k, r in enumerate(rows)}
    mat = [[0] * len(A.basis[n]) for _ in rows]
    for j, c in enumerate(A.basis[n]):
        for pair, v in A.comult(c).items():
            k = pos.get(pair)
            if k is not None:
                mat[k][j] = v
    return mat, rows


def primitives(A: PshAlgebra, n: int) -> list[SymTensor]:
    """ℤ-basis of the primitives of degree ``n`` (kernel of the reduced coproduct)."""
    if not 1 <= n <= A.max_degree:
        raise ValueError(f"need 1 <= n <= {A.max_degree}")
    mat, _ = reduced_coproduct_matrix(A, n)
    cols = len(A.basis[n])
    kernel = integer_kernel(mat) if mat else [[int(i == j) for i in range(cols)] for j in range(cols)]
    return [SymTensor(1, {(A.basis[n][k],): v for k, v in enumerate(vec) if v}) for vec in kernel]


def is_primitive(A: PshAlgebra, x: SymTensor) -> bool:
    expected = SymTensor(2, {})
    for (c,), v in x.items():
        expected = expected + v * SymTensor(2, {(c, A.unit): 1}) + v * SymTensor(2, {(A.unit, c): 1})
    return A.coproduct(x) == expected

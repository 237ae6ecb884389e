"""The Heisenberg double of a PSH algebra and its Fock-space action.

Elements of ``Heis(A)`` are arity-2 tensors ``x ⊗ y`` (left leg multiplies,
right leg skews). The product is computed by the straightening rule, while
the Fock action ``φ(x ⊗ y) = m_x Δ_y`` is computed separately by operator
application; their agreement is verified, never assumed.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import flint

from .psh import PshAlgebra, primitives, symmetric_functions
from .symfunc import SymTensor, _label_text, basis_element

MUTANTS = (None, "swap_legs", "misroute")


# -- elements ---------------------------------------------------------------------


class HeisElement:
    """An element of ``Heis(A)``: an arity-2 tensor, left = ``m`` part, right = ``Δ`` part."""

    __slots__ = ("t",)

    def __init__(self, t: SymTensor):
        if t.arity != 2:
            raise ValueError("Heisenberg elements are arity-2 tensors")
        self.t = t

    @classmethod
    def pure(cls, x: SymTensor, y: SymTensor) -> "HeisElement":
        out: dict = defaultdict(int)
        for (a,), u in x.items():
            for (b,), v in y.items():
                out[(a, b)] += u * v
        return cls(SymTensor(2, out))

    @classmethod
    def basis(cls, a, b) -> "HeisElement":
        return cls(SymTensor(2, {(a, b): 1}))

    @classmethod
    def unit(cls, A: PshAlgebra) -> "HeisElement":
        return cls.basis(A.unit, A.unit)

    def __add__(self, other: "HeisElement") -> "HeisElement":
        return HeisElement(self.t + other.t)

    def __sub__(self, other: "HeisElement") -> "HeisElement":
        return HeisElement(self.t - other.t)

    def __rmul__(self, k: int) -> "HeisElement":
        return HeisElement(k * self.t)

    def __eq__(self, other) -> bool:
        return isinstance(other, HeisElement) and self.t == other.t

    def __hash__(self):
        return hash(self.t)

    def items(self):
        return self.t.items()

    def is_zero(self) -> bool:
        return not self.t

    def to_text(self) -> str:
        return self.t.to_text()

    def to_json(self) -> dict:
        return self.t.to_json()

    def __repr__(self) -> str:
        return f"HeisElement({self.to_text()})"


def heis_product(u: HeisElement, v: HeisElement, A: PshAlgebra, mutant: str | None = None) -> HeisElement:
    """Straightened product ``(x⊗y)(z⊗w) = Σ (x · Δ_{y(2)} z) ⊗ (y(1) · w)``.

    ``mutant`` seeds faults: ``"swap_legs"`` exchanges ``y(1)`` and ``y(2)``
    (invisible for cocommutative ``A``); ``"misroute"`` skews ``x`` instead of ``z``.
    """
    if mutant not in MUTANTS:
        raise ValueError(f"unknown mutant {mutant!r}")
    out: dict = defaultdict(int)
    for (x, y), cu in u.items():
        for (z, w), cv in v.items():
            for (y1, y2), cy in A.comult(y).items():
                if mutant == "swap_legs":
                    y1, y2 = y2, y1
                if mutant == "misroute":
                    left = A.multiply(A.op_delta(SymTensor.basis(y2), SymTensor.basis(x)), SymTensor.basis(z))
                else:
                    left = A.multiply(SymTensor.basis(x), A.op_delta(SymTensor.basis(y2), SymTensor.basis(z)))
                if not left:
                    continue
                right = A.multiply(SymTensor.basis(y1), SymTensor.basis(w))
                k = cu * cv * cy
                for (l,), a in left.items():
                    for (r,), b in right.items():
                        out[(l, r)] += k * a * b
    return HeisElement(SymTensor(2, out))


def commutator(u: HeisElement, v: HeisElement, A: PshAlgebra) -> HeisElement:
    return heis_product(u, v, A) - heis_product(v, u, A)


# -- Fock space -----------------------------------------------------------------------


@dataclass
class FockOperator:
    """An endomorphism of ``A_{≤D}`` stored column by column.

    ``columns[z]`` is the exact image of the basis vector ``z``. Source
    vectors whose image would leave degree ``D`` are absent (outside the
    domain) rather than truncated, so comparisons only use exact columns.
    ``shifts`` records the degree shifts of the homogeneous parts.
    """

    A: PshAlgebra
    D: int
    columns: dict
    shifts: frozenset = field(default_factory=frozenset)

    @property
    def domain(self) -> set:
        return set(self.columns)

    def apply(self, z: SymTensor) -> SymTensor:
        out: dict = defaultdict(int)
        for (lab,), c in z.items():
            if lab not in self.columns:
                raise ValueError(f"{_label_text(lab)} lies outside the exact domain")
            for k, v in self.columns[lab].items():
                out[k] += c * v
        return SymTensor(1, out)

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        """``self ∘ other`` on the columns where every intermediate is exact."""
        cols = {}
        for z, img in other.columns.items():
            if all(k[0] in self.columns for k in img.keys()):
                cols[z] = self.apply(img)
        return FockOperator(self.A, self.D, cols, frozenset(a + b for a in self.shifts for b in other.shifts))

    def __add__(self, other: "FockOperator") -> "FockOperator":
        cols = {z: self.columns[z] + other.columns[z] for z in self.domain & other.domain}
        return FockOperator(self.A, self.D, cols, self.shifts | other.shifts)

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        return self + other.scaled(-1)

    def scaled(self, k: int) -> "FockOperator":
        return FockOperator(self.A, self.D, {z: k * v for z, v in self.columns.items()}, self.shifts)

    def compare(self, other: "FockOperator"):
        """``(equal, n_columns_compared, first differing source label)``."""
        common = sorted(self.domain & other.domain, key=lambda l: (self.A.degree[l], repr(l)))
        for z in common:
            if self.columns[z] != other.columns[z]:
                return False, len(common), z
        return True, len(common), None

    def block(self, e: int, c: int) -> list[list[int]]:
        """Integer matrix from degree ``c`` to degree ``e`` (columns in domain only)."""
        rows = self.A.basis[e]
        cols = [z for z in self.A.basis[c] if z in self.columns]
        return [[self.columns[z][(r,)] for z in cols] for r in rows]


def phi(u: HeisElement, A: PshAlgebra, D: int, _cache: dict | None = None) -> FockOperator:
    """``φ(u)`` acting on ``A_{≤D}``, built from ``m_x`` and ``Δ_y`` directly."""
    if D > A.max_degree:
        raise ValueError(f"D = {D} exceeds the algebra's truncation {A.max_degree}")
    total = None
    for (x, y), c in u.items():
        key = (x, y, D)
        op = _cache.get(key) if _cache is not None else None
        if op is None:
            op = _phi_pure(x, y, A, D)
            if _cache is not None:
                _cache[key] = op
        term = op.scaled(c)
        total = term if total is None else total + term
    if total is None:
        return FockOperator(A, D, {z: SymTensor(1) for z in A.labels(D)}, frozenset({0}))
    return total


def _phi_pure(x, y, A: PshAlgebra, D: int) -> FockOperator:
    dx, dy = A.degree[x], A.degree[y]
    cols = {}
    for z in A.labels(D):
        dz = A.degree[z]
        if dz >= dy and dz - dy + dx > D:
            continue
        cols[z] = A.op_m(SymTensor.basis(x), A.op_delta(SymTensor.basis(y), SymTensor.basis(z)))
    return FockOperator(A, D, cols, frozenset({dx - dy}))


def fock_apply(u: HeisElement, z: SymTensor, A: PshAlgebra, D: int) -> SymTensor:
    """``φ(u)(z)`` truncated at degree ``D``."""
    out = SymTensor(1)
    for (x, y), c in u.items():
        img = A.op_m(SymTensor.basis(x), A.op_delta(SymTensor.basis(y), z))
        out = out + c * img
    return out.truncate(D)


# -- verification ---------------------------------------------------------------------


def pure_basis(A: PshAlgebra, max_left: int, max_right: int) -> list[HeisElement]:
    return [HeisElement.basis(x, y) for x in A.labels(max_left) for y in A.labels(max_right)]


def check_relation(A: PshAlgebra, x, D: int) -> dict:
    """``Δ_x ∘ m = m ∘ Δ²_{Δ(x)}`` on basis tensors ``a ⊗ b`` of degree ≤ ``D``.

    Equivalently ``Δ_x m_a = m Δ²_{Δ(x)} i_a`` for every ``a``: the right side
    sends ``b`` to ``Σ Δ_{x(1)}(a) · Δ_{x(2)}(b)``.
    """
    xs = SymTensor.basis(x)
    dx = A.coproduct(xs)
    n = 0
    for a in A.labels(D):
        for b in A.labels(D - A.degree[a]):
            ea, eb = SymTensor.basis(a), SymTensor.basis(b)
            lhs = A.op_delta(xs, A.multiply(ea, eb))
            rhs = SymTensor(1)
            for (x1, x2), c in dx.items():
                rhs = rhs + c * A.multiply(A.op_delta(SymTensor.basis(x1), ea), A.op_delta(SymTensor.basis(x2), eb))
            n += 1
            if lhs != rhs:
                return {"x": _label_text(x), "ok": False, "checked": n,
                        "witness": {"a": _label_text(a), "b": _label_text(b), "lhs": lhs.to_text(), "rhs": rhs.to_text()}}
    return {"x": _label_text(x), "ok": True, "checked": n, "witness": None}


def verify_relation(A: PshAlgebra, D: int, max_x: int) -> dict:
    rows = [check_relation(A, x, D) for x in A.labels(max_x)]
    return {"check": "heisenberg_relation", "D": D, "ok": all(r["ok"] for r in rows), "rows": rows}


def verify_phi_algebra(A: PshAlgebra, D: int, max_bidegree: int = 3, mutant: str | None = None) -> dict:
    """``φ(u)φ(v) = φ(uv)`` on ``A_{≤D}`` for pure basis ``u, v`` with both
    legs of degree at most ``max_bidegree``, plus the relation check for all
    ``x`` of degree at most ``max_bidegree``."""
    cache: dict = {}
    gens = pure_basis(A, max_bidegree, max_bidegree)
    ops = {g: phi(g, A, D, cache) for g in gens}
    n = 0
    witness = None
    cols = 0
    for u in gens:
        for v in gens:
            prod = heis_product(u, v, A, mutant)
            composed = ops[u] @ ops[v]
            ok, k, z = phi(prod, A, D, cache).compare(composed)
            n += 1
            cols += k
            if not ok:
                witness = {"u": u.to_text(), "v": v.to_text(), "product": prod.to_text(), "on": _label_text(z),
                           "phi_of_product": phi(prod, A, D, cache).columns[z].to_text(),
                           "composite": composed.columns[z].to_text()}
                break
        if witness:
            break
    rel = verify_relation(A, D, max_bidegree)
    return {"check": "phi_algebra", "D": D, "mutant": mutant, "pairs_checked": n, "columns_compared": cols,
            "ok": witness is None and rel["ok"], "algebra_map_ok": witness is None, "witness": witness,
            "relation": rel}


def _rank(columns: list[list[int]]) -> int:
    if not columns or not columns[0]:
        return 0
    m = flint.fmpq_mat(len(columns[0]), len(columns), [columns[j][i] for i in range(len(columns[0]))
                                                        for j in range(len(columns))])
    return m.rank()


def verify_injectivity(A: PshAlgebra, D: int) -> dict:
    """Rank of ``u ↦ φ(u)`` on ``(A⊗A)_{≤D}`` acting on ``A_{≤D}``.

    Images are computed exactly, so ``A`` must be truncated at ``2D`` or
    above. Reports the rank per bidegree and for all bidegrees together.
    """
    if A.max_degree < 2 * D:
        raise ValueError(f"need the algebra truncated at {2 * D} or above")
    srcs = A.labels(D)
    row_index: dict = {}

    def column(x, y) -> list:
        vec = {}
        for z in srcs:
            img = A.op_m(SymTensor.basis(x), A.op_delta(SymTensor.basis(y), SymTensor.basis(z)))
            for (t,), c in img.items():
                key = (t, z)
                if key not in row_index:
                    row_index[key] = len(row_index)
                vec[row_index[key]] = c
        return vec

    per = []
    all_cols = []
    for a in range(D + 1):
        for b in range(D + 1 - a):
            cols = [column(x, y) for x in A.basis[a] for y in A.basis[b]]
            all_cols.extend(cols)
            per.append({"bidegree": [a, b], "dim": len(cols), "cols": cols})
    nrows = len(row_index)

    def dense(cols):
        return [[c.get(r, 0) for r in range(nrows)] for c in cols]

    rows = []
    for p in per:
        r = _rank(dense(p["cols"]))
        rows.append({"bidegree": p["bidegree"], "dim": p["dim"], "rank": r, "ok": r == p["dim"]})
    total = _rank(dense(all_cols))
    return {"check": "injectivity", "D": D, "ok": all(r["ok"] for r in rows) and total == len(all_cols),
            "total_dim": len(all_cols), "total_rank": total, "bidegrees": rows}


# -- generators -----------------------------------------------------------------------


def _lambda_primitive(A: PshAlgebra, n: int) -> SymTensor:
    p = basis_element("powersum", n)
    if all(k[0] in A.degree for k in p.keys()):
        return p
    return primitives(A, n)[0]


def generator(presentation: int, kind: str, n: int, A: PshAlgebra, variant: str = "literal") -> HeisElement:
    """Generators of the three presentations.

    1: ``p_n = e_n ⊗ 1``, ``q_n = 1 ⊗ P_n`` with ``P_n`` the power sum.
    2: ``c_{-k} = p_k ⊗ 1``, ``c_k = 1 ⊗ p_k`` (``kind`` is ``"c"``, ``n = ±k``).
    3: ``a_n = e_n ⊗ 1``, ``b_n = 1 ⊗ h_n``; ``variant="swapped"`` uses
    ``a_n = 1 ⊗ e_n``, ``b_n = h_n ⊗ 1``. Index 0 gives the unit in the
    relevant leg.
    """
    one = A.unit_element()

    def elem(k, which):
        if k == 0:
            return one
        return basis_element(which, k)

    if presentation == 1:
        if kind == "p":
            return HeisElement.pure(elem(n, "elementary"), one)
        if kind == "q":
            return HeisElement.pure(one, _lambda_primitive(A, n))
    elif presentation == 2:
        if kind == "c" and n != 0:
            p = _lambda_primitive(A, abs(n))
            return HeisElement.pure(p, one) if n < 0 else HeisElement.pure(one, p)
    elif presentation == 3:
        if kind in ("a", "b"):
            which = "elementary" if kind == "a" else "homogeneous"
            x = elem(n, which)
            left = (kind == "a") != (variant == "swapped")
            return HeisElement.pure(x, one) if left else HeisElement.pure(one, x)
    raise ValueError(f"no generator {kind}_{n} in presentation {presentation}")


def _fock_check(lhs_u: HeisElement, lhs_v: HeisElement, expected: HeisElement, A: PshAlgebra, D: int, cache) -> bool:
    pu, pv = phi(lhs_u, A, D, cache), phi(lhs_v, A, D, cache)
    comm = (pu @ pv) - (pv @ pu)
    ok, n, _ = comm.compare(phi(expected, A, D, cache))
    return ok and n > 0


def commutator_table(presentation: int, max_index: int, A: PshAlgebra | None = None, D: int | None = None,
                     variant: str = "literal") -> dict:
    """Compute commutators and compare them with the quoted right-hand sides.

    Every row carries the computed value; ``match`` says whether it equals
    the expected one. Presentation 1 is a report only (``ok`` is ``None``).
    """
    D = D if D is not None else 2 * max_index
    A = A if A is not None else symmetric_functions(max(D, 2 * max_index))
    cache: dict = {}
    unit = HeisElement.unit(A)
    rows = []
    if presentation == 1:
        for m in range(1, max_index + 1):
            for n in range(1, max_index + 1):
                u, v = generator(1, "p", m, A), generator(1, "q", n, A)
                c = commutator(u, v, A)
                exp = unit if m == n else HeisElement(SymTensor(2))
                rows.append({"m": m, "n": n, "computed": c.to_text(), "expected": exp.to_text(), "match": c == exp})
        return {"presentation": 1, "ok": None, "rows": rows,
                "note": "report only: the normalization of the primitive generator is not fixed"}
    if presentation == 2:
        ks = [k for k in range(-max_index, max_index + 1) if k != 0]
        for k in ks:
            for l in ks:
                u, v = generator(2, "c", k, A), generator(2, "c", l, A)
                c = commutator(u, v, A)
                exp = k * unit if k + l == 0 else HeisElement(SymTensor(2))
                fock = _fock_check(u, v, exp, A, D, cache)
                rows.append({"k": k, "l": l, "computed": c.to_text(), "expected": exp.to_text(),
                             "match": c == exp, "fock_match": fock})
        return {"presentation": 2, "ok": all(r["match"] and r["fock_match"] for r in rows), "rows": rows}
    if presentation == 3:
        for m in range(1, max_index + 1):
            for n in range(1, max_index + 1):
                u, v = generator(3, "a", m, A, variant), generator(3, "b", n, A, variant)
                c = commutator(u, v, A)
                exp = heis_product(generator(3, "b", n - 1, A, variant), generator(3, "a", m - 1, A, variant), A)
                fock = _fock_check(u, v, exp, A, D, cache)
                rows.append({"m": m, "n": n, "computed": c.to_text(), "expected": exp.to_text(),
                             "match": c == exp, "fock_match": fock})
        return {"presentation": 3, "variant": variant, "ok": all(r["match"] and r["fock_match"] for r in rows),
                "rows": rows}
    raise ValueError("presentation must be 1, 2 or 3")

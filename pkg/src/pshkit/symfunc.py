"""The ring of symmetric functions in the Schur basis.

Elements of tensor powers are stored as :class:`SymTensor`: a sparse map from
tuples of basis labels to nonzero integers. For the ring itself the labels are
:class:`~pshkit.partitions.Partition` objects, but the container only needs
labels to be hashable and to have a degree (see :func:`label_degree`), so the
same class carries elements of tensor products of PSH algebras.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from typing import Callable, Hashable, Iterable, Iterator, Mapping

from .partitions import EMPTY, Partition, conjugate, contains, generate_partitions, hook, parse_partition, to_json

Label = Hashable
Index = tuple


def label_degree(label) -> int:
    """Degree of a basis label: partition size, or summed over nested tuples."""
    if isinstance(label, Partition):
        return label.size
    if isinstance(label, tuple):
        return sum(label_degree(x) for x in label)
    raise TypeError(f"label without a degree: {label!r}")


class SymTensor:
    """Finitely supported integer combination of ``arity``-tuples of labels."""

    __slots__ = ("arity", "_c")

    def __init__(self, arity: int, coeffs: Mapping[Index, int] | Iterable[tuple[Index, int]] = ()):
        if arity < 0:
            raise ValueError("arity must be nonnegative")
        self.arity = arity
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[Index, int] = defaultdict(int)
        for idx, v in items:
            idx = tuple(idx)
            if len(idx) != arity:
                raise ValueError(f"index {idx!r} does not have arity {arity}")
            c[idx] += int(v)
        self._c = {k: v for k, v in c.items() if v != 0}

    # construction helpers -------------------------------------------------

    @classmethod
    def basis(cls, *labels) -> "SymTensor":
        return cls(len(labels), {tuple(labels): 1})

    @classmethod
    def zero(cls, arity: int) -> "SymTensor":
        return cls(arity)

    @classmethod
    def unit(cls, arity: int, unit_label=EMPTY) -> "SymTensor":
        return cls(arity, {(unit_label,) * arity: 1})

    # container protocol ---------------------------------------------------

    def items(self):
        return self._c.items()

    def keys(self):
        return self._c.keys()

    def __iter__(self) -> Iterator[Index]:
        return iter(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __getitem__(self, idx) -> int:
        return self._c.get(tuple(idx), 0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def as_dict(self) -> dict[Index, int]:
        return dict(self._c)

    # arithmetic -----------------------------------------------------------

    def _check(self, other: "SymTensor") -> None:
        if not isinstance(other, SymTensor):
            raise TypeError("expected SymTensor")
        if other.arity != self.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: "SymTensor") -> "SymTensor":
        self._check(other)
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) + v
        return SymTensor(self.arity, out)

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        return self + (-1) * other

    def __neg__(self) -> "SymTensor":
        return (-1) * self

    def __rmul__(self, scalar: int) -> "SymTensor":
        if not isinstance(scalar, int):
            return NotImplemented
        return SymTensor(self.arity, {k: scalar * v for k, v in self._c.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymTensor):
            return NotImplemented
        return self.arity == other.arity and self._c == other._c

    def __hash__(self):
        return hash((self.arity, frozenset(self._c.items())))

    # grading ---------------------------------------------------------------

    def degree_of(self, idx: Index) -> int:
        return sum(label_degree(x) for x in idx)

    def homogeneous(self, n: int) -> "SymTensor":
        return SymTensor(self.arity, {k: v for k, v in self._c.items() if self.degree_of(k) == n})

    def truncate(self, d: int | None) -> "SymTensor":
        if d is None:
            return self
        return SymTensor(self.arity, {k: v for k, v in self._c.items() if self.degree_of(k) <= d})

    def max_degree(self) -> int:
        return max((self.degree_of(k) for k in self._c), default=-1)

    def leg_map(self, fn: Callable[[Index], "SymTensor"], arity: int) -> "SymTensor":
        """Extend ``fn`` (basis index -> SymTensor) linearly."""
        out: dict[Index, int] = defaultdict(int)
        for k, v in self._c.items():
            for k2, v2 in fn(k).items():
                out[k2] += v * v2
        return SymTensor(arity, out)

    # display --------------------------------------------------------------

    def sorted_items(self) -> list[tuple[Index, int]]:
        return sorted(self._c.items(), key=lambda kv: _sort_key(kv[0]))

    def __repr__(self) -> str:
        return f"SymTensor({self.arity}, {self.to_text()})"

    def to_text(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for idx, v in self.sorted_items():
            term = " ⊗ ".join(_label_text(x) for x in idx) if idx else "1"
            if v == 1:
                parts.append(f"+ {term}")
            elif v == -1:
                parts.append(f"- {term}")
            elif v < 0:
                parts.append(f"- {-v}*{term}")
            else:
                parts.append(f"+ {v}*{term}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "terms": [{"index": [_label_json(x) for x in idx], "coeff": v} for idx, v in self.sorted_items()],
        }

    @classmethod
    def from_json(cls, doc) -> "SymTensor":
        if not isinstance(doc, dict) or "arity" not in doc or "terms" not in doc:
            raise ValueError("SymTensor JSON needs 'arity' and 'terms'")
        arity = int(doc["arity"])
        terms = []
        for t in doc["terms"]:
            idx = tuple(parse_partition(p) for p in t["index"])
            terms.append((idx, int(t["coeff"])))
        return cls(arity, terms)


def _sort_key(idx):
    # graded, then reverse-lex within each leg
    return (sum(label_degree(x) for x in idx), tuple(_label_key(x) for x in idx))


def _label_key(x):
    if isinstance(x, Partition):
        return (x.size, tuple(-p for p in x))
    return tuple(_label_key(y) for y in x)


def _label_text(x) -> str:
    if isinstance(x, Partition):
        return "(" + ",".join(map(str, x)) + ")"
    return "[" + ", ".join(_label_text(y) for y in x) + "]"


def _label_json(x):
    if isinstance(x, Partition):
        return to_json(x)
    return [_label_json(y) for y in x]


def schur(*parts) -> SymTensor:
    """``s_lambda`` as an arity-1 tensor; ``schur()`` is the unit."""
    if len(parts) == 1 and isinstance(parts[0], (tuple, list)):
        parts = tuple(parts[0])
    return SymTensor.basis(Partition(parts))


# -- Littlewood-Richardson coefficients --------------------------------------

_LR_MEMO: dict[tuple[Partition, Partition, Partition], int] = {}
_LR_LOCK = threading.Lock()


def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    """``c^lam_{mu,nu}``: the number of LR tableaux of shape lam/mu, content nu.

    Enumerates semistandard fillings of the skew shape whose reverse reading
    word (rows top to bottom, each read right to left) is a lattice word.
    """
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if lam.size != mu.size + nu.size or not contains(lam, mu) or not contains(lam, nu):
        return 0
    key = (lam, mu, nu)
    val = _LR_MEMO.get(key)
    if val is None:
        val = _count_lr_tableaux(lam, mu, nu)
        with _LR_LOCK:
            _LR_MEMO[key] = val
    return val


def _count_lr_tableaux(lam: Partition, mu: Partition, nu: Partition) -> int:
    if nu.size == 0:
        return 1
    # cells in reading order: row by row, right to left within a row
    cells = [(r, c) for r in range(len(lam)) for c in range(lam[r] - 1, mu.part(r) - 1, -1)]
    ncells = len(cells)
    k = len(nu)
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (k + 1)

    def rec(pos: int) -> int:
        if pos == ncells:
            return 1
        r, c = cells[pos]
        hi = k
        right = filling.get((r, c + 1))
        if right is not None:
            hi = min(hi, right)
        above = filling.get((r - 1, c))
        lo = above + 1 if above is not None else 1
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= nu[v - 1]:
                continue
            if v > 1 and counts[v - 1] <= counts[v]:
                continue
            counts[v] += 1
            filling[(r, c)] = v
            total += rec(pos + 1)
            del filling[(r, c)]
            counts[v] -= 1
        return total

    return rec(0)


_PRODUCT_MEMO: dict[tuple[Partition, Partition], dict[Partition, int]] = {}
_COPRODUCT_MEMO: dict[Partition, dict[tuple[Partition, Partition], int]] = {}


def schur_product(mu: Partition, nu: Partition) -> dict[Partition, int]:
    """Expansion of ``s_mu * s_nu`` in the Schur basis."""
    key = (mu, nu)
    out = _PRODUCT_MEMO.get(key)
    if out is None:
        n = mu.size + nu.size
        out = {}
        for lam in generate_partitions(n):
            if contains(lam, mu) and contains(lam, nu):
                c = lr_coefficient(lam, mu, nu)
                if c:
                    out[lam] = c
        with _LR_LOCK:
            _PRODUCT_MEMO[key] = out
    return out


def schur_coproduct(lam: Partition) -> dict[tuple[Partition, Partition], int]:
    """``Delta(s_lam) = sum c^lam_{mu,nu} s_mu ⊗ s_nu``."""
    out = _COPRODUCT_MEMO.get(lam)
    if out is None:
        out = {}
        for a in range(lam.size + 1):
            for mu in generate_partitions(a):
                if not contains(lam, mu):
                    continue
                for nu in generate_partitions(lam.size - a):
                    c = lr_coefficient(lam, mu, nu)
                    if c:
                        out[(mu, nu)] = c
        with _LR_LOCK:
            _COPRODUCT_MEMO[lam] = out
    return out


def _require_arity(f: SymTensor, arity: int) -> None:
    if f.arity != arity:
        raise ValueError(f"expected arity {arity}, got {f.arity}")


def multiply(f: SymTensor, g: SymTensor, max_degree: int | None = None) -> SymTensor:
    """Product in the ring, extended bilinearly from the LR rule."""
    _require_arity(f, 1)
    _require_arity(g, 1)
    out: dict[Index, int] = defaultdict(int)
    for (mu,), a in f.items():
        for (nu,), b in g.items():
            if max_degree is not None and mu.size + nu.size > max_degree:
                continue
            for lam, c in schur_product(mu, nu).items():
                out[(lam,)] += a * b * c
    return SymTensor(1, out)


def coproduct(f: SymTensor) -> SymTensor:
    _require_arity(f, 1)
    out: dict[Index, int] = defaultdict(int)
    for (lam,), a in f.items():
        for idx, c in schur_coproduct(lam).items():
            out[idx] += a * c
    return SymTensor(2, out)


def inner(f: SymTensor, g: SymTensor) -> int:
    """Hall inner product, extended to tensors leg by leg."""
    if f.arity != g.arity:
        raise ValueError(f"arity mismatch: {f.arity} vs {g.arity}")
    if len(f) > len(g):
        f, g = g, f
    return sum(v * g[k] for k, v in f.items())


def basis_element(kind: str, n: int) -> SymTensor:
    """``e_n``, ``h_n`` or ``p_n`` in the Schur basis."""
    if n < 1:
        raise ValueError("n must be >= 1; use schur() for the unit")
    if kind in ("elementary", "e"):
        return SymTensor.basis(Partition((1,) * n))
    if kind in ("homogeneous", "h", "complete"):
        return SymTensor.basis(Partition((n,)))
    if kind in ("powersum", "p"):
        return SymTensor(1, {(hook(n, k),): (-1) ** k for k in range(n)})
    raise ValueError(f"unknown kind {kind!r}")


def skew(x: SymTensor, y: SymTensor) -> SymTensor:
    """The skewing operator ``Delta_x`` applied to ``y``: pair the first leg of
    ``Delta(y)`` against ``x`` and keep the second."""
    _require_arity(x, 1)
    _require_arity(y, 1)
    out: dict[Index, int] = defaultdict(int)
    xd = {k[0]: v for k, v in x.items()}
    for (lam,), b in y.items():
        for (mu, nu), c in schur_coproduct(lam).items():
            a = xd.get(mu)
            if a:
                out[(nu,)] += a * b * c
    return SymTensor(1, out)


def op_m(x: SymTensor, y: SymTensor, max_degree: int | None = None) -> SymTensor:
    """Multiplication operator ``m_x`` applied to ``y``."""
    return multiply(x, y, max_degree)


def op_delta(x: SymTensor, y: SymTensor) -> SymTensor:
    """Skewing operator ``Delta_x`` applied to ``y`` (adjoint of ``m_x``)."""
    return skew(x, y)


def conjugate_element(f: SymTensor) -> SymTensor:
    """The involution ``s_lam -> s_lam'`` (omega without signs)."""
    _require_arity(f, 1)
    return SymTensor(1, {(conjugate(k[0]),): v for k, v in f.items()})


def tensor_product(*fs: SymTensor) -> SymTensor:
    """Outer tensor product, concatenating legs."""
    out: dict[Index, int] = {(): 1}
    arity = 0
    for f in fs:
        nxt: dict[Index, int] = defaultdict(int)
        for k1, v1 in out.items():
            for k2, v2 in f.items():
                nxt[k1 + k2] += v1 * v2
        out = nxt
        arity += f.arity
    return SymTensor(arity, out)


def clear_caches() -> None:
    with _LR_LOCK:
        _LR_MEMO.clear()
        _PRODUCT_MEMO.clear()
        _COPRODUCT_MEMO.clear()

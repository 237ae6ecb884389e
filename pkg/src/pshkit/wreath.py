"""Wreath-product PSH algebras at the level of Grothendieck groups.

The representation rings of ``S_n[G]`` assemble into ``Λ^{⊗Irr G}``; only the
index set ``Irr G`` enters, so a character table is ingested mainly to
validate it and to name the tensor factors. The decomposition is evidenced by
counting primitives: in every degree there is one irreducible primitive per
irreducible of ``G``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .partitions import EMPTY, Partition
from .psh import PshAlgebra, check_psh_axioms, primitives, symmetric_functions, tensor_power
from .symfunc import _label_text

BUNDLED = ("trivial", "z2", "z3", "s3")


class CharacterTableError(ValueError):
    pass


@dataclass(frozen=True)
class CharacterTable:
    """Integer character table, or just the number of irreducibles in count mode."""

    name: str
    class_sizes: tuple[int, ...]
    characters: tuple[tuple[int, ...], ...] | None
    irr_count: int

    @property
    def order(self) -> int:
        return sum(self.class_sizes)

    @property
    def count_only(self) -> bool:
        return self.characters is None

    def to_json(self) -> dict:
        doc = {"name": self.name, "class_sizes": list(self.class_sizes)}
        if self.count_only:
            doc.update(mode="count", irr_count=self.irr_count)
        else:
            doc["characters"] = [list(r) for r in self.characters]
        return doc


def _ints(xs, what: str) -> tuple[int, ...]:
    if not isinstance(xs, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in xs):
        raise CharacterTableError(f"{what} must be a list of integers")
    return tuple(xs)


def load_character_table(document) -> CharacterTable:
    """Validate a table given as a dict, a JSON string, or a path to a JSON file."""
    if isinstance(document, Path) or (isinstance(document, str) and not document.lstrip().startswith("{")):
        document = json.loads(Path(document).read_text(encoding="utf-8"))
    elif isinstance(document, str):
        document = json.loads(document)
    if not isinstance(document, dict):
        raise CharacterTableError("table document must be a JSON object")
    name = document.get("name")
    if not isinstance(name, str):
        raise CharacterTableError("'name' must be a string")
    sizes = _ints(document.get("class_sizes"), "'class_sizes'")
    if not sizes or any(s <= 0 for s in sizes):
        raise CharacterTableError("class sizes must be positive and nonempty")
    if document.get("mode") == "count":
        k = document.get("irr_count")
        if not isinstance(k, int) or k != len(sizes):
            raise CharacterTableError("count mode needs 'irr_count' equal to the number of classes")
        return CharacterTable(name, sizes, None, k)
    rows = document.get("characters")
    if not isinstance(rows, list):
        raise CharacterTableError("'characters' must be a list of rows")
    chars = tuple(_ints(r, "character row") for r in rows)
    n = len(sizes)
    if len(chars) != n or any(len(r) != n for r in chars):
        raise CharacterTableError(f"character table must be {n}x{n}")
    for i, r in enumerate(chars):
        if r[0] <= 0:
            raise CharacterTableError(f"character {i} has nonpositive degree {r[0]}")
    order = sum(sizes)
    for i in range(n):
        for j in range(i, n):
            ip = sum(s * a * b for s, a, b in zip(sizes, chars[i], chars[j]))
            if ip != (order if i == j else 0):
                raise CharacterTableError(f"rows {i} and {j} fail orthogonality: pairing {ip}, group order {order}")
    return CharacterTable(name, sizes, chars, n)


def bundled_table(name: str) -> CharacterTable:
    if name not in BUNDLED:
        raise KeyError(f"no bundled table {name!r}; have {', '.join(BUNDLED)}")
    text = resources.files("pshkit").joinpath("data").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return load_character_table(json.loads(text))


def build_PG(table: CharacterTable, D: int) -> PshAlgebra:
    """``Λ^{⊗Irr G}`` truncated at ``D`` (nested pair labels for more than one factor)."""
    A = tensor_power(symmetric_functions(D), table.irr_count, D)
    A.name = f"P_{table.name}"
    return A


def flatten_label(label, k: int) -> tuple[Partition, ...]:
    """Left-nested pair label of ``Λ^{⊗k}`` as a flat ``k``-tuple."""
    if k == 1:
        return (label,)
    return flatten_label(label[0], k - 1) + (label[1],)


def nest_label(parts, k: int):
    if k == 1:
        return parts[0]
    return (nest_label(parts[:-1], k - 1), parts[-1])


def irreducible_labels(table: CharacterTable) -> list:
    """Degree-1 label ``R_ρ`` for each irreducible ``ρ`` (a box in factor ``ρ``)."""
    k = table.irr_count
    one = Partition((1,))
    return [nest_label(tuple(one if j == r else EMPTY for j in range(k)), k) for r in range(k)]


def verify_decomposition(table: CharacterTable, D: int) -> dict:
    """PSH axioms, primitive rank ``|Irr G|`` in degrees ``1..D``, and the
    degree-1 primitives being exactly the ``R_ρ``."""
    A = build_PG(table, D)
    axioms = check_psh_axioms(A, D)
    k = table.irr_count
    ranks = []
    for n in range(1, D + 1):
        r = len(primitives(A, n))
        ranks.append({"degree": n, "rank": r, "ok": r == k})
    prim1 = primitives(A, 1) if D >= 1 else []
    found = set()
    for p in prim1:
        items = list(p.items())
        if len(items) == 1 and abs(items[0][1]) == 1:
            found.add(items[0][0][0])
    expected = set(irreducible_labels(table))
    deg1_ok = found == expected and len(A.basis[1]) == k if D >= 1 else True
    return {
        "check": "wreath_decomposition", "table": table.name, "D": D, "irr": k,
        "ok": axioms["ok"] and all(r["ok"] for r in ranks) and deg1_ok and len(A.basis[0]) == 1,
        "axioms": axioms, "primitive_ranks": ranks, "degree1_ok": deg1_ok,
        "irreducible_labels": [_label_text(l) for l in sorted(expected, key=repr)],
    }

"""Integer partitions.

A :class:`Partition` is an immutable, weakly decreasing tuple of positive
integers. The empty tuple is the unique partition of 0.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Iterable, Iterator


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Input that is not already in canonical form is rejected instead of
    sorted, so caller bugs surface at construction.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(parts)
        for p in parts:
            if not isinstance(p, int) or isinstance(p, bool):
                raise TypeError(f"partition parts must be int, got {p!r}")
            if p <= 0:
                raise ValueError(f"partition parts must be positive: {parts}")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """Part ``i`` (0-based), with zero padding past the end."""
        return self[i] if i < len(self) else 0

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    def __str__(self) -> str:
        return to_text(self)


EMPTY = Partition()


def generate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order.

    >>> [tuple(p) for p in generate_partitions(4)]
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_partitions_cached(n, n))


@lru_cache(maxsize=None)
def _partitions_cached(n: int, max_part: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _gen(n, max_part))


def _gen(n: int, max_part: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _gen(n - first, first):
            yield (first,) + rest


def partitions_up_to(d: int) -> list[Partition]:
    """Partitions of every size ``0..d``, grouped by size."""
    out: list[Partition] = []
    for n in range(d + 1):
        out.extend(generate_partitions(n))
    return out


def conjugate(lam: Partition) -> Partition:
    """Transpose of the Young diagram."""
    if not lam:
        return EMPTY
    return Partition(sum(1 for p in lam if p > j) for j in range(lam[0]))


def contains(lam: Partition, mu: Partition) -> bool:
    """True iff the diagram of ``mu`` fits inside the diagram of ``lam``."""
    if len(mu) > len(lam):
        return False
    return all(m <= l for m, l in zip(mu, lam))


def hook(n: int, k: int) -> Partition:
    """The hook ``(n - k, 1^k)`` of size ``n``."""
    if not 0 <= k < n:
        raise ValueError("need 0 <= k < n")
    return Partition((n - k,) + (1,) * k)


# -- text / JSON forms ------------------------------------------------------


def parse_partition(value) -> Partition:
    """Parse ``"3,1"``, ``"0"``, ``""``, ``"[3,1]"`` or a list into a Partition."""
    if isinstance(value, Partition):
        return value
    if isinstance(value, (list, tuple)):
        return Partition(int(v) for v in value)
    text = str(value).strip()
    if text.startswith("["):
        return parse_partition(json.loads(text))
    if text in ("", "0", "()", "∅"):
        return EMPTY
    return Partition(int(tok) for tok in text.replace("(", "").replace(")", "").split(",") if tok.strip())


def to_text(lam: Partition) -> str:
    return ",".join(map(str, lam)) if lam else "0"


def to_json(lam: Partition) -> list[int]:
    return list(lam)

"""Natural numbers with a sparse binary encoding.

Search on the BIT-encoded Rado graph produces vertices whose binary
expansions are astronomically long (towers of exponentials), yet each
has only a handful of set bits.  :class:`SparseNat` stores such a number
as the frozen set of its bit positions, where a position may itself be a
``SparseNat``.  Every number below ``2**INLINE_BITS`` is kept as a plain
``int``, so the encoding is canonical: equal numbers have equal
representations and ``int`` values are always smaller than ``SparseNat``
values.
"""

from __future__ import annotations

from functools import total_ordering
from typing import Iterable, Union

INLINE_BITS = 512
# positions at or beyond this are never touched by small deposits
_MASK_LIMIT = 4096

Natural = Union[int, "SparseNat"]


@total_ordering
class SparseNat:
    """A natural number at least ``2**INLINE_BITS``, stored by bit positions."""

    __slots__ = ("positions", "_desc", "_hash")

    def __init__(self, positions: Iterable[Natural]):
        pos = frozenset(positions)
        if not pos:
            raise ValueError("SparseNat needs at least one bit")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "_desc", tuple(sorted(pos, reverse=True)))
        object.__setattr__(self, "_hash", hash(("sparse", pos)))

    def __setattr__(self, name, value):
        raise AttributeError("SparseNat is immutable")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, SparseNat):
            return self.positions == other.positions
        if isinstance(other, int):
            return False
        return NotImplemented

    def __lt__(self, other) -> bool:
        if isinstance(other, int):
            return False
        if not isinstance(other, SparseNat):
            return NotImplemented
        for a, b in zip(self._desc, other._desc):
            if a != b:
                return a < b
        return len(self._desc) < len(other._desc)

    def __repr__(self) -> str:
        return f"SparseNat({sorted(self.positions)!r})"

    def top(self) -> Natural:
        return self._desc[0]


def make_natural(positions: Iterable[Natural]) -> Natural:
    """The number whose set bits are exactly ``positions`` (canonical form)."""
    pos = set(positions)
    if all(isinstance(p, int) and p < INLINE_BITS for p in pos):
        return sum(1 << p for p in pos)
    return SparseNat(pos)


def bit_positions(v: Natural) -> list[Natural]:
    """Set bit positions of ``v`` in increasing order."""
    if isinstance(v, SparseNat):
        return sorted(v.positions)
    out = []
    i = 0
    while v:
        low = (v & -v).bit_length() - 1
        i += low
        out.append(i)
        v >>= low + 1
        i += 1
    return out


def has_bit(v: Natural, u: Natural) -> bool:
    """True iff bit ``u`` of ``v`` is 1."""
    if isinstance(v, SparseNat):
        return u in v.positions
    if isinstance(u, SparseNat) or u >= v.bit_length():
        return False
    return (v >> u) & 1 == 1


def check_natural(v) -> Natural:
    if isinstance(v, bool) or not isinstance(v, (int, SparseNat)):
        raise TypeError(f"vertex must be a natural number, got {v!r}")
    if isinstance(v, int) and v < 0:
        raise ValueError(f"vertex must be non-negative, got {v}")
    return v


def small_mask(values: Iterable[Natural]) -> int:
    """Bitmask of the small ``int`` members of ``values``."""
    return sum(1 << x for x in values if isinstance(x, int) and x < _MASK_LIMIT)


def deposit(j: int, mask: int) -> int:
    """The ``j``-th number (from 0, ascending) having no bit in common with ``mask``."""
    out = 0
    pos = 0
    while j:
        if not (mask >> pos) & 1:
            if j & 1:
                out |= 1 << pos
            j >>= 1
        pos += 1
    return out


def to_json(v: Natural):
    """JSON-friendly form: ints stay ints, sparse values become ``{"bits": [...]}``."""
    if isinstance(v, SparseNat):
        return {"bits": [to_json(p) for p in sorted(v.positions)]}
    return v


def from_json(obj) -> Natural:
    if isinstance(obj, dict):
        return make_natural(from_json(p) for p in obj["bits"])
    return check_natural(obj)

"""Ordered partitions of an index set into 2 or 3 labeled subsets.

Splits are encoded as tuples of disjoint bitmasks covering a ground set and
are streamed in a fixed deterministic order, so sums over partitions are
reproducible and can be range-partitioned across workers (exact rational
addition is associative and commutative, hence any reduction order yields the
identical total).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import ConstraintError
from .scalars import Rat, SpectralSet, kernel_f, kernel_g, kernel_h

MAX_GROUND = 63  # bitmask encoding cap; desk experiments stay far below


@dataclass(frozen=True)
class GroundSet:
    """Indices 0..n-1, each tagged with its source set label and source index."""

    origin: tuple = ()

    @staticmethod
    def from_sets(*sets: SpectralSet) -> "GroundSet":
        tags = []
        for s in sets:
            label = s.label or "x"
            tags.extend((label, i) for i in range(len(s)))
        return GroundSet(tuple(tags))

    @property
    def size(self) -> int:
        return len(self.origin)

    def tags(self, mask: int) -> list[str]:
        """Serialized sorted origin tags for a subset mask, e.g. ['u[0]', 'v[2]']."""
        return sorted(f"{lab}[{idx}]" for bit, (lab, idx)
                      in enumerate(self.origin) if mask >> bit & 1)


Split = tuple  # ordered tuple of 2 or 3 disjoint bitmasks covering the ground set


def _subsets_ascending(universe: int, card: int | None) -> Iterator[int]:
    """Subsets of a bitmask universe in ascending mask order.

    With a cardinality constraint, masks of that popcount are emitted in the
    same ascending order (Gosper's hack over a compacted universe).
    """
    bits = [b for b in range(universe.bit_length()) if universe >> b & 1]
    n = len(bits)
    if card is None:
        for packed in range(1 << n):
            yield _unpack(packed, bits)
        return
    if card < 0 or card > n:
        return
    if card == 0:
        yield 0
        return
    packed = (1 << card) - 1
    limit = 1 << n
    while packed < limit:
        yield _unpack(packed, bits)
        low = packed & -packed
        ripple = packed + low
        packed = ripple | ((packed ^ ripple) >> (low.bit_length() + 1))


def _unpack(packed: int, bits: list[int]) -> int:
    mask = 0
    b = 0
    while packed:
        if packed & 1:
            mask |= 1 << bits[b]
        packed >>= 1
        b += 1
    return mask


def count_splits(n: int, parts: int, cards: Sequence[int] | None = None) -> int:
    if cards is None:
        return parts ** n
    from math import comb
    total, remaining = 1, n
    for k in cards:
        total *= comb(remaining, k)
        remaining -= k
    return total


def enumerate_splits(ground: GroundSet | int, parts: int,
                     cards: Sequence[int] | None = None) -> Iterator[Split]:
    """Stream every ordered split of the ground set into `parts` subsets.

    Emission order is deterministic: ascending lexicographic in the masks of
    the non-first parts, so the all-in-part-one split comes first. With
    `cards` given, only splits with those per-part cardinalities are emitted
    (cards must sum to the ground size).
    """
    n = ground if isinstance(ground, int) else ground.size
    if n > MAX_GROUND:
        raise ConstraintError(f"ground set size {n} exceeds {MAX_GROUND}")
    if parts not in (2, 3):
        raise ConstraintError("only 2- or 3-part splits are supported")
    if cards is not None:
        cards = tuple(cards)
        if len(cards) != parts:
            raise ConstraintError("one cardinality per part is required")
        if any(k < 0 for k in cards) or sum(cards) != n:
            raise ConstraintError(
                f"cardinalities {cards} do not sum to ground size {n}")
    full = (1 << n) - 1
    if parts == 2:
        for m2 in _subsets_ascending(full, None if cards is None else cards[1]):
            yield (full ^ m2, m2)
    else:
        for m2 in _subsets_ascending(full, None if cards is None else cards[1]):
            rest = full ^ m2
            for m3 in _subsets_ascending(rest, None if cards is None else cards[2]):
                yield (rest ^ m3, m2, m3)


def split_elements(split: Split, part: int, spectra: SpectralSet | Sequence,
                   ground: GroundSet | None = None) -> SpectralSet:
    """Resolve one part's bitmask back to parameter values.

    `spectra` is either the single SpectralSet whose indices the ground set
    uses directly, or the ordered source sets matching a GroundSet built via
    GroundSet.from_sets.
    """
    mask = split[part]
    if isinstance(spectra, SpectralSet):
        vals = tuple(spectra[b] for b in bits_of(mask))
        return SpectralSet(vals, spectra.label)
    assert ground is not None, "ground set required to resolve multiple sources"
    by_label = {s.label or "x": s for s in spectra}
    vals = []
    for b in bits_of(mask):
        label, idx = ground.origin[b]
        vals.append(by_label[label][idx])
    return SpectralSet(tuple(vals))


def bits_of(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_values(values: Sequence, mask: int) -> tuple:
    return tuple(values[b] for b in bits_of(mask))


class CoefficientMap:
    """Map from a surviving-subset bitmask to an exact rational coefficient.

    Absent keys mean coefficient 0; merging adds exactly. Equality ignores
    entries that are exactly zero.
    """

    def __init__(self, items=None):
        self._data: dict[int, Rat] = {}
        if items:
            for k, v in (items.items() if isinstance(items, dict) else items):
                self.add(k, v)

    def add(self, key: int, value) -> None:
        value = Rat(value)
        cur = self._data.get(key)
        new = value if cur is None else cur + value
        if new == 0:
            self._data.pop(key, None)
        else:
            self._data[key] = new

    def __getitem__(self, key: int) -> Rat:
        return self._data.get(key, Rat(0))

    def __iter__(self):
        return iter(sorted(self._data))

    def items(self):
        return [(k, self._data[k]) for k in sorted(self._data)]

    def __len__(self) -> int:
        return len(self._data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoefficientMap):
            return NotImplemented
        return self._data == other._data

    def __repr__(self) -> str:
        inner = ", ".join(f"{k:#x}: {v}" for k, v in self.items())
        return f"CoefficientMap({{{inner}}})"


# ---------------------------------------------------------------------------
# Closed partition sums used inside the multiple-action proofs. Both are
# exposed as standalone checks: each must sum to exactly 1.
# ---------------------------------------------------------------------------

def single_extraction_sum(u, wset: SpectralSet, c) -> Rat:
    """Sum over singleton extractions of f(rest, x) / h(u, x); equals 1 for u in wset."""
    vals = wset.values
    total = Rat(0)
    for k in range(len(vals)):
        x = vals[k]
        term = 1 / kernel_h(u, x, c)
        for j, y in enumerate(vals):
            if j != k:
                term *= kernel_f(y, x, c)
        total += term
    return total


def pole_extraction_sum(wset: SpectralSet, pivot, c) -> Rat:
    """Sum over singleton extractions of g(rest, x) / g(rest, pivot); equals 1 for pivot in wset.

    1/g(y, pivot) is evaluated as the polynomial (y - pivot)/c, so splits that
    keep the pivot in the non-singleton part contribute exactly 0 instead of
    tripping a pole.
    """
    vals = wset.values
    pivot = Rat(pivot)
    c = Rat(c)
    total = Rat(0)
    for k in range(len(vals)):
        x = vals[k]
        term = Rat(1)
        for j, y in enumerate(vals):
            if j != k:
                term *= kernel_g(y, x, c) * (y - pivot) / c
        total += term
    return total

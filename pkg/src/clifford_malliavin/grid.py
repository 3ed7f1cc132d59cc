"""Discretization of L^2(R_+) into equal-width slots.

Slot ``k`` (``1 <= k <= d``) is the interval ``[(k-1)*width, k*width)`` and carries
the orthonormal basis vector ``e_k = width**-0.5 * 1_{slot k}``. Every other module
uses the same continuum-to-grid dictionary:

* ``int g dt``           ->  ``width * sum_k g(k)``
* Dirac ``delta_t``      ->  ``width**-1`` times the slot indicator
* evaluation at ``t``    ->  value on the slot containing ``t``

Borel sets are restricted to unions of slots and are given as iterables of
1-based slot numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import GridMismatchError


@dataclass(frozen=True)
class TimeGrid:
    slots: int
    width: float = 1.0

    def __post_init__(self):
        if not isinstance(self.slots, int) or isinstance(self.slots, bool) or self.slots < 1:
            raise ValueError(f"number of slots must be a positive integer, got {self.slots!r}")
        if not (math.isfinite(self.width) and self.width > 0):
            raise ValueError(f"slot width must be positive, got {self.width!r}")
        object.__setattr__(self, "width", float(self.width))

    @property
    def horizon(self) -> float:
        return self.slots * self.width

    @property
    def all_slots(self) -> frozenset[int]:
        return frozenset(range(1, self.slots + 1))

    def slot_set(self, slots: Iterable[int]) -> frozenset[int]:
        """Validate an iterable of 1-based slot numbers and return it as a frozenset."""
        out = frozenset(int(k) for k in slots)
        bad = [k for k in out if not 1 <= k <= self.slots]
        if bad:
            raise ValueError(f"slots {sorted(bad)} outside 1..{self.slots}")
        return out

    def mask(self, slots: Iterable[int]) -> int:
        """Bitmask of a slot set; slot ``k`` is bit ``k-1``."""
        m = 0
        for k in self.slot_set(slots):
            m |= 1 << (k - 1)
        return m

    def to_dict(self) -> dict:
        return {"slots": self.slots, "width": self.width}

    @classmethod
    def from_dict(cls, data: dict) -> "TimeGrid":
        return cls(int(data["slots"]), float(data.get("width", 1.0)))


def check_same_grid(*grids: TimeGrid) -> TimeGrid:
    first = grids[0]
    for g in grids[1:]:
        if g != first:
            raise GridMismatchError(f"grid mismatch: {first} vs {g}")
    return first


def measure(grid: TimeGrid, slots: Iterable[int]) -> float:
    """Lebesgue measure of a union of slots."""
    return grid.width * len(grid.slot_set(slots))


def indicator_vector(grid: TimeGrid, slots: Iterable[int]):
    """The indicator ``1_A`` as a degree-1 tensor: coefficient ``sqrt(width)`` on each slot of ``A``."""
    from .antisym import AntiTensor

    A = grid.slot_set(slots)
    root = math.sqrt(grid.width)
    return AntiTensor.from_entries(grid, 1, {(k,): root for k in A})

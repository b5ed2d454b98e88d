"""GL(n,2)-orbit decomposition, isotropy subgroups and canonical representatives.

The change-of-basis action on structure constants is linear over GF(2) in the
packed tensor, so each group element is preloaded as a table of basis images;
applying it is then an XOR-fold over the set bits of the tensor.

Classification at n = 4 works inside the theta = dx^1 slice: the unit element
is intrinsic, its coefficient vector transforms by g^-T, so the subgroup
preserving "unit = x^0" is H1 = {g : row 0 of g = e0} of order |GL|/(2^n - 1).
Slice solutions are H1-orbit-partitioned, and every full-group stabilizer of a
slice member already lies in H1, which recovers the full orbit size through
the orbit-stabilizer theorem without touching the other theta slices.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra import (
    EnumerationMode,
    StructureConstants,
    act,
    enumerate_algebras,
    find_unit,
    is_associative,
    is_commutative,
    v_index,
)
from .gf2 import GF2Matrix, bits_of, gl_group, gl_order, mat_inverse


class _TensorAction:
    """Precomputed linear action of one group element on packed tensors."""

    __slots__ = ("g", "images")

    def __init__(self, g: GF2Matrix, n: int):
        self.g = g
        ginv = mat_inverse(g)
        colmask = [0] * n
        for mu in range(n):
            for a in bits_of(g.rows[mu]):
                colmask[a] |= 1 << mu
        images = []
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    img = 0
                    row = ginv.rows[c]
                    for mu in bits_of(colmask[a]):
                        for nu in bits_of(colmask[b]):
                            img ^= row << ((mu * n + nu) * n)
                    images.append(img)
        self.images = images

    def apply(self, bits: int) -> int:
        out = 0
        images = self.images
        while bits:
            low = bits & -bits
            out ^= images[low.bit_length() - 1]
            bits ^= low
        return out


@lru_cache(maxsize=16)
def _actions(n: int, first_row_fixed: bool = False) -> tuple[_TensorAction, ...]:
    group = gl_group(n)
    if first_row_fixed:
        group = tuple(g for g in group if g.rows[0] == 1)
    return tuple(_TensorAction(g, n) for g in group)


def unit_stabilizer_order(n: int) -> int:
    return gl_order(n) // ((1 << n) - 1)


@dataclass(frozen=True)
class OrbitReport:
    """One GL(n,2)-orbit: canonical form, members seen, stabilizer, full size."""

    canonical: StructureConstants
    members: tuple[StructureConstants, ...]
    isotropy: tuple[GF2Matrix, ...]
    orbit_size: int
    label: str | None = None

    @property
    def isotropy_order(self) -> int:
        return len(self.isotropy)

    def with_label(self, label: str | None) -> "OrbitReport":
        return OrbitReport(self.canonical, self.members, self.isotropy, self.orbit_size, label)


def canonical_rep(v: StructureConstants) -> StructureConstants:
    """Lexicographic minimum of the full GL-orbit under the packed-bit order."""
    best = v.bits
    for action in _actions(v.n):
        w = action.apply(v.bits)
        if w < best:
            best = w
    return StructureConstants(v.n, best)


def isotropy(v: StructureConstants, n: int) -> list[GF2Matrix]:
    """All g in GL(n,2) with act(g, v) = v."""
    out = []
    for action in _actions(n):
        if action.apply(v.bits) == v.bits:
            out.append(action.g)
    return out


def _slice_isotropy(v: StructureConstants, n: int) -> list[GF2Matrix]:
    # For unital tensors with unit x^0 the stabilizer lies inside H1.
    out = []
    for action in _actions(n, first_row_fixed=True):
        if action.apply(v.bits) == v.bits:
            out.append(action.g)
    return out


def orbits(
    solutions: Sequence[StructureConstants],
    n: int,
    *,
    slice_mode: bool = False,
    labels: dict[int, str] | None = None,
) -> list[OrbitReport]:
    """Partition solutions into GL(n,2)-orbits, sorted by canonical representative.

    With slice_mode the input must consist of unital tensors with unit x^0;
    orbits are expanded with the unit-preserving subgroup only (the orbit
    restricted to the slice), while orbit_size and isotropy still refer to the
    full group via the orbit-stabilizer identity.
    """
    for v in solutions:
        if v.n != n:
            raise ValueError("dimension mismatch in solution list")
    actions = _actions(n, first_row_fixed=slice_mode)
    pending = {v.bits for v in solutions}
    pool = dict.fromkeys(sorted(pending))  # deterministic seed order
    reports = []
    seen: set[int] = set()
    for seed in pool:
        if seed in seen:
            continue
        orbit_bits = {action.apply(seed) for action in actions}
        stray = orbit_bits - pending
        if stray and not slice_mode:
            raise ValueError("input set is not closed under the group action")
        members_here = sorted(orbit_bits & pending)
        seen.update(members_here)
        canonical = StructureConstants(n, members_here[0])
        if slice_mode:
            iso = _slice_isotropy(canonical, n)
            size = gl_order(n) // len(iso)
        else:
            iso = isotropy(canonical, n)
            size = len(members_here)
            assert size * len(iso) == gl_order(n)
        label = labels.get(canonical.bits) if labels else None
        reports.append(
            OrbitReport(
                canonical,
                tuple(StructureConstants(n, b) for b in members_here),
                tuple(iso),
                size,
                label,
            )
        )
    reports.sort(key=lambda r: r.canonical.bits)
    return reports


def unital_classes(n: int, cap: int = 1 << 26) -> list[StructureConstants]:
    """One canonical representative per isomorphism class of unital algebras."""
    if n <= 3:
        sols = list(enumerate_algebras(n, EnumerationMode.inner_any(), cap=cap))
        reps = orbits(sols, n)
    else:
        sols = list(enumerate_algebras(n, EnumerationMode.inner(1), cap=cap))
        reps = orbits(sols, n, slice_mode=True)
    return [r.canonical for r in reps]


def same_orbit(a: StructureConstants, b: StructureConstants) -> bool:
    if a.n != b.n:
        return False
    return any(action.apply(a.bits) == b.bits for action in _actions(a.n))


def find_isomorphism(a: StructureConstants, b: StructureConstants) -> GF2Matrix | None:
    """A group element carrying a to b, or None."""
    for action in _actions(a.n):
        if action.apply(a.bits) == b.bits:
            return action.g
    return None


def slice_canonical_rep(v: StructureConstants) -> StructureConstants:
    """Minimum over the unit-preserving subgroup; v must have unit x^0."""
    best = v.bits
    for action in _actions(v.n, first_row_fixed=True):
        w = action.apply(v.bits)
        if w < best:
            best = w
    return StructureConstants(v.n, best)

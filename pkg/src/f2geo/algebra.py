"""Structure constants of commutative products on GF(2)^n and their enumeration.

A product x^mu o x^nu = V^{mu nu}_rho x^rho is stored as an n^3-bit integer
with V^{mu nu}_rho at bit (mu*n + nu)*n + rho (mu-major).  The same tensor
defines the differential calculus through [dx^mu, x^nu] = V^{mu nu}_rho dx^rho.

Validated tensors are symmetric in (mu, nu) and associative:
V^{rho nu}_lam V^{lam mu}_gam = V^{rho mu}_lam V^{lam nu}_gam for all indices,
arithmetic mod 2.  A unit is a vector theta with theta_mu V^{mu nu}_rho =
delta^nu_rho; when one exists it is unique and the calculus is inner with
theta = theta_mu dx^mu.

Enumeration imposes the linear constraints (symmetry, and the unit equations
in inner modes) through an affine solve, then scans the affine space in
numpy chunks filtering by associativity.  Output order is ascending on the
packed bit representation, so listings and golden files are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .gf2 import GF2Matrix, Singular, bits_of, is_invertible, mat_inverse, solve_affine


class SearchCapExceeded(RuntimeError):
    """Candidate space larger than the configured cap."""


DISPLAY_NAMES = {
    1: ("e",),
    2: ("e", "x"),
    3: ("e", "x", "y"),
    4: ("e", "x", "y", "z"),
}


def generic_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


def v_index(n: int, mu: int, nu: int, rho: int) -> int:
    return (mu * n + nu) * n + rho


@dataclass(frozen=True, order=True)
class StructureConstants:
    """Packed V^{mu nu}_rho tensor; ordering follows the packed integer."""

    n: int
    bits: int

    def entry(self, mu: int, nu: int, rho: int) -> int:
        return (self.bits >> v_index(self.n, mu, nu, rho)) & 1

    def product(self, mu: int, nu: int) -> int:
        """x^mu o x^nu as a coefficient vector (bit rho set iff V^{mu nu}_rho)."""
        return (self.bits >> v_index(self.n, mu, nu, 0)) & ((1 << self.n) - 1)

    def product_of_vectors(self, a: int, b: int) -> int:
        """Bilinear extension of o to coefficient vectors a, b."""
        out = 0
        for mu in bits_of(a):
            for nu in bits_of(b):
                out ^= self.product(mu, nu)
        return out

    def to_hex(self) -> str:
        width = (self.n**3 + 3) // 4
        return f"{self.bits:0{width}x}"

    @classmethod
    def from_hex(cls, n: int, text: str) -> "StructureConstants":
        return cls(n, int(text, 16))

    @classmethod
    def from_products(cls, n: int, products: dict[tuple[int, int], Iterable[int]]) -> "StructureConstants":
        """Build a symmetric tensor from products on pairs (mu <= nu).

        products maps (mu, nu) to the list of rho indices with coefficient 1;
        unordered pairs are mirrored automatically.
        """
        bits = 0
        for (mu, nu), rhos in products.items():
            mask = 0
            for rho in rhos:
                mask ^= 1 << rho
            for m, nv in {(mu, nu), (nu, mu)}:
                for rho in bits_of(mask):
                    bits |= 1 << v_index(n, m, nv, rho)
        return cls(n, bits)


@dataclass(frozen=True)
class UnitVector:
    """Coefficients theta_mu of the unit 1-form theta = theta_mu dx^mu."""

    n: int
    theta: int

    def name(self, names: Sequence[str] | None = None) -> str:
        names = names or DISPLAY_NAMES.get(self.n, generic_names(self.n))
        return "+".join(f"d{names[i]}" for i in bits_of(self.theta)) or "0"


@dataclass(frozen=True)
class EnumerationMode:
    """All | Inner(theta) | InnerAny | UnitalUpToIso."""

    kind: str
    theta: int | None = None

    @classmethod
    def all(cls) -> "EnumerationMode":
        return cls("all")

    @classmethod
    def inner(cls, theta: int) -> "EnumerationMode":
        return cls("inner", theta)

    @classmethod
    def inner_any(cls) -> "EnumerationMode":
        return cls("inner-any")

    @classmethod
    def unital_up_to_iso(cls) -> "EnumerationMode":
        return cls("unital-iso")


def is_commutative(v: StructureConstants) -> bool:
    n = v.n
    return all(
        v.entry(mu, nu, rho) == v.entry(nu, mu, rho)
        for mu in range(n)
        for nu in range(mu + 1, n)
        for rho in range(n)
    )


def is_associative(v: StructureConstants) -> bool:
    n = v.n
    for rho in range(n):
        for nu in range(n):
            for mu in range(n):
                for gam in range(n):
                    lhs = 0
                    rhs = 0
                    for lam in range(n):
                        lhs ^= v.entry(rho, nu, lam) & v.entry(lam, mu, gam)
                        rhs ^= v.entry(rho, mu, lam) & v.entry(lam, nu, gam)
                    if lhs != rhs:
                        return False
    return True


def find_unit(v: StructureConstants) -> UnitVector | None:
    """The unique theta with theta_mu V^{mu nu}_rho = delta^nu_rho, if any."""
    n = v.n
    eqs = []
    for nu in range(n):
        for rho in range(n):
            mask = 0
            for mu in range(n):
                if v.entry(mu, nu, rho):
                    mask |= 1 << mu
            eqs.append((mask, 1 if nu == rho else 0))
    try:
        space = solve_affine(eqs, n)
    except Exception:
        return None
    if space.dim != 0:
        # Unit elements are unique when they exist; a positive-dimensional
        # solution space can only happen for degenerate V with no actual unit.
        for cand in space.members():
            if _is_unit(v, cand):
                return UnitVector(n, cand)
        return None
    return UnitVector(n, space.particular) if _is_unit(v, space.particular) else None


def _is_unit(v: StructureConstants, theta: int) -> bool:
    n = v.n
    for nu in range(n):
        acc = 0
        for mu in bits_of(theta):
            acc ^= v.product(mu, nu)
        if acc != 1 << nu:
            return False
    return True


def act(g: GF2Matrix, v: StructureConstants) -> StructureConstants:
    """Change of variables y = g x: W^{mu nu}_del = g^mu_a g^nu_b V^{ab}_c (g^-1)^c_del."""
    n = v.n
    if g.nrows != n or g.cols != n:
        raise ValueError("group element has wrong shape")
    ginv = mat_inverse(g)  # raises Singular for degenerate g
    # Column masks of g: colmask[a] has bit mu iff g[mu][a] = 1.
    colmask = [0] * n
    for mu in range(n):
        for a in bits_of(g.rows[mu]):
            colmask[a] |= 1 << mu
    bits = 0
    rest = v.bits
    while rest:
        low = rest & -rest
        k = low.bit_length() - 1
        rest ^= low
        c = k % n
        ab = k // n
        b, a = ab % n, ab // n
        row = ginv.rows[c]
        for mu in bits_of(colmask[a]):
            for nu in bits_of(colmask[b]):
                bits ^= row << ((mu * n + nu) * n)
    return StructureConstants(n, bits)


def calculus_relations(
    v: StructureConstants, names: Sequence[str] | None = None, include_zero: bool = True
) -> list[str]:
    """Render the commutators [dx^mu, x^nu] = V^{mu nu}_rho dx^rho, mu <= nu."""
    n = v.n
    names = list(names or DISPLAY_NAMES.get(n, generic_names(n)))
    lines = []
    for mu in range(n):
        for nu in range(mu, n):
            targets = v.product(mu, nu)
            rhs = "+".join(f"d{names[r]}" for r in bits_of(targets)) or "0"
            if targets == 0 and not include_zero:
                continue
            lhs = f"[d{names[mu]},{names[nu]}]"
            if mu != nu:
                lhs += f"=[d{names[nu]},{names[mu]}]"
            lines.append(f"{lhs}={rhs}")
    return lines


# ---------------------------------------------------------------------------
# Enumeration


def _constraint_space(n: int, theta: int | None):
    """Affine space of symmetric tensors, with the unit equations when theta is given."""
    nv = n**3
    eqs = []
    for mu in range(n):
        for nu in range(mu + 1, n):
            for rho in range(n):
                eqs.append(
                    (1 << v_index(n, mu, nu, rho) | 1 << v_index(n, nu, mu, rho), 0)
                )
    if theta is not None:
        for nu in range(n):
            for rho in range(n):
                mask = 0
                for mu in bits_of(theta):
                    mask |= 1 << v_index(n, mu, nu, rho)
                eqs.append((mask, 1 if nu == rho else 0))
    return solve_affine(eqs, nv)


def _scan_chunk(args) -> list[int]:
    """Associativity filter on one contiguous index range of an affine space."""
    n, particular, basis, start, end = args
    basis_arr = np.array(basis, dtype=np.uint64)
    shifts = np.arange(n**3, dtype=np.uint64)
    ks = np.arange(start, end, dtype=np.uint64)
    members = np.full(ks.shape, np.uint64(particular), dtype=np.uint64)
    for i in range(len(basis)):
        sel = (ks >> np.uint64(i)) & np.uint64(1)
        members ^= sel * basis_arr[i]
    tens = ((members[:, None] >> shifts) & np.uint64(1)).astype(np.uint8)
    tens = tens.reshape(-1, n, n, n)  # axes: candidate, mu, nu, rho
    # T[c,p,q,m,g] = sum_l V^{pq}_l V^{lm}_g ; associativity <=> sym in (q,m).
    t = np.einsum("cpql,clmg->cpqmg", tens, tens) & 1
    ok = (t == t.transpose(0, 1, 3, 2, 4)).all(axis=(1, 2, 3, 4))
    return [int(m) for m in members[ok]]


def _associative_members(
    n: int, space, cap: int, chunk: int = 1 << 16, jobs: int = 1
) -> list[int]:
    """Scan an affine space of symmetric tensors, keeping associative ones.

    The range is cut into contiguous chunks; with jobs > 1 the chunks run in
    worker processes and the merged result is identical to the serial one.
    """
    if space.size() > cap:
        raise SearchCapExceeded(
            f"candidate space 2^{space.dim} exceeds cap {cap}"
        )
    if n**3 > 64:
        raise SearchCapExceeded("bit-parallel scan packs tensors in one 64-bit word; need n <= 4")
    total = space.size()
    tasks = [
        (n, space.particular, tuple(space.basis), start, min(start + chunk, total))
        for start in range(0, total, chunk)
    ]
    survivors: list[int] = []
    if jobs > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_scan_chunk, tasks):
                survivors.extend(part)
    else:
        for task in tasks:
            survivors.extend(_scan_chunk(task))
    return survivors


def enumerate_algebras(
    n: int,
    mode: EnumerationMode,
    cap: int = 1 << 26,
    unsafe_large: bool = False,
    jobs: int = 1,
) -> Iterator[StructureConstants]:
    """Yield commutative associative tensors for the mode, ascending by packed bits."""
    if not (1 <= n <= 4) and not unsafe_large:
        raise ValueError("n outside 1..4; pass unsafe_large=True to override")
    if mode.kind == "all":
        space = _constraint_space(n, None)
        found = _associative_members(n, space, cap, jobs=jobs)
        for b in sorted(found):
            yield StructureConstants(n, b)
    elif mode.kind == "inner":
        if mode.theta is None or not (0 < mode.theta < (1 << n)):
            raise ValueError("inner mode needs a nonzero theta vector")
        space = _constraint_space(n, mode.theta)
        found = _associative_members(n, space, cap, jobs=jobs)
        for b in sorted(found):
            yield StructureConstants(n, b)
    elif mode.kind == "inner-any":
        found_all: list[int] = []
        for theta in range(1, 1 << n):
            space = _constraint_space(n, theta)
            found_all.extend(_associative_members(n, space, cap, jobs=jobs))
        # Units are unique, so the theta-slices are disjoint.
        for b in sorted(found_all):
            yield StructureConstants(n, b)
    elif mode.kind == "unital-iso":
        from .orbits import unital_classes  # local import avoids a cycle

        for rep in unital_classes(n, cap=cap):
            yield rep
    else:
        raise ValueError(f"unknown mode {mode.kind!r}")

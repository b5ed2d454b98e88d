"""Closed-form families: functions algebra, cyclic group algebra, field extensions,
their metrics, and the partition quantum Levi-Civita connections.

These are independent oracles against the brute-force solvers: every output
here is produced from the defining formulas, never by search.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .algebra import StructureConstants, v_index
from .gf2 import bits_of, mat_rank
from .geometry import Connection, Metric, SigmaMap, _sigma_bit


def functions_algebra(n: int) -> StructureConstants:
    """Pointwise product of delta functions: x^mu o x^nu = delta_{mu nu} x^mu."""
    if n < 1:
        raise ValueError("n >= 1")
    bits = 0
    for mu in range(n):
        bits |= 1 << v_index(n, mu, mu, mu)
    return StructureConstants(n, bits)


def euclidean_metric(n: int) -> Metric:
    return Metric(n, tuple(1 << i for i in range(n)))


def cyclic_algebra(n: int) -> StructureConstants:
    """Group algebra of Z_n in the power basis: x^mu o x^nu = x^{mu+nu mod n}."""
    if n < 1:
        raise ValueError("n >= 1")
    bits = 0
    for mu in range(n):
        for nu in range(n):
            bits |= 1 << v_index(n, mu, nu, (mu + nu) % n)
    return StructureConstants(n, bits)


def cyclic_metrics(n: int) -> list[Metric]:
    """The n metrics sum_mu dx^mu (x) dx^{m-mu} and their complements.

    The complement adds c (x) c for the central element c = sum dx^mu, which
    reverses every coefficient; degenerate or duplicate results are dropped.
    """
    if n < 2:
        raise ValueError("n >= 2")
    primaries = []
    for m in range(n):
        rows = [0] * n
        for mu in range(n):
            rows[mu] |= 1 << ((m - mu) % n)
        primaries.append(Metric(n, tuple(rows)))
    full = (1 << n) - 1
    complements = [Metric(n, tuple(r ^ full for r in g.rows)) for g in primaries]
    out: list[Metric] = []
    for g in primaries + complements:
        if mat_rank(g.to_matrix()) == n and g not in out:
            out.append(g)
    return out


def field_extension_algebra(d: int) -> StructureConstants:
    """A_d = F2[x]/<x^(2^d) - x> in the power basis x^0 .. x^(2^d - 1)."""
    if not 1 <= d <= 2:
        raise ValueError("supported range is d in {1, 2}")
    n = 1 << d
    bits = 0
    for mu in range(n):
        for nu in range(n):
            k = mu + nu
            while k >= n:
                k -= n - 1  # x^n = x^1
            bits |= 1 << v_index(n, mu, nu, k)
    return StructureConstants(n, bits)


@dataclass(frozen=True)
class PartitionDatum:
    """X = T | S | Sbar with a bijection S -> Sbar, all indices 0-based."""

    n: int
    fixed: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        used = list(self.fixed)
        for s, sb in self.pairs:
            used.extend((s, sb))
        if sorted(used) != list(range(self.n)):
            raise ValueError("partition must cover every index exactly once")


def partition_qlc(p: PartitionDatum) -> Connection:
    """The connection of the partition datum for the functions calculus.

    nabla dx^t = 0 on T; nabla dx^s = nabla dx^sbar =
    (dx^s + dx^sbar) (x) (dx^s + dx^sbar) on each pair; sigma swaps
    (s,s) <-> (sbar,sbar), is the identity on (s,sbar) and (sbar,s), and is
    the flip elsewhere.  Zero curvature by construction.
    """
    n = p.n
    gamma = 0
    for s, sb in p.pairs:
        for m in (s, sb):
            for a in (s, sb):
                for b in (s, sb):
                    gamma ^= 1 << v_index(n, m, a, b)
    sigma_bits = 0
    paired: dict[int, int] = {}
    for s, sb in p.pairs:
        paired[s] = sb
        paired[sb] = s
    for m in range(n):
        for nu in range(n):
            if m == nu and m in paired:
                sigma_bits |= 1 << _sigma_bit(n, m, m, paired[m], paired[m])
            elif nu in paired and paired[nu] == m:
                sigma_bits |= 1 << _sigma_bit(n, m, nu, m, nu)
            else:
                sigma_bits |= 1 << _sigma_bit(n, m, nu, nu, m)
    theta = (1 << n) - 1  # unit of the functions algebra is sum x^mu
    return Connection(n, gamma, SigmaMap(n, sigma_bits), 0, theta)


def partition_qlc_count(n: int) -> int:
    """Sum over m = |T| with n - m even of C(n, m) (n - m - 1)!! pairings."""
    if n < 1:
        raise ValueError("n >= 1")
    total = 0
    for m in range(n, -1, -1):
        if (n - m) % 2:
            continue
        total += comb(n, m) * _double_factorial(n - m - 1)
    return total


def _double_factorial(k: int) -> int:
    if k <= 0:
        return 1
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def all_partition_data(n: int) -> list[PartitionDatum]:
    """Every partition-and-bijection datum, deterministically ordered."""
    out = []

    def pairings(items: tuple[int, ...]):
        if not items:
            yield ()
            return
        first, rest = items[0], items[1:]
        for i, other in enumerate(rest):
            head = (first, other)
            remaining = rest[:i] + rest[i + 1 :]
            for tail in pairings(remaining):
                yield (head,) + tail

    for subset in range(1 << n):
        fixed = tuple(bits_of(subset))
        moving = tuple(i for i in range(n) if not (subset >> i) & 1)
        if len(moving) % 2:
            continue
        for pr in pairings(moving):
            out.append(PartitionDatum(n, fixed, pr))
    out.sort(key=lambda p: (p.fixed, p.pairs))
    return out

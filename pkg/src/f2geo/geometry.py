"""Quantum metrics, bimodule maps and Levi-Civita connections for a fixed calculus.

For structure constants V (module algebra) the solver finds, over GF(2):

  metrics      symmetric invertible g with the centrality system
               g_{ln} V^{lr}_m + g_{mg} V^{gr}_n = 0 for all m, n, r;
  alpha maps   alpha^m_{nr} symmetric in (n, r) (equivalently wedge(alpha)=0)
               satisfying the calculus-compatibility system;
  sigma maps   sigma^{mn}_{rl} satisfying the bimodule condition and, for
               torsion freedom, wedge(sigma) = -wedge (= wedge in char 2);
  QLCs         connections nabla dx^m = Gamma^m_{nr} dx^n (x) dx^r built from
               theta, sigma, alpha via nabla w = theta (x) w - sigma(w (x) theta)
               + alpha(w), filtered by metric compatibility
               (nabla (x) id) g + (sigma (x) id)(id (x) nabla) g = 0
               and invertibility of sigma as an n^2 x n^2 matrix.

The sigma search solves the linear conditions first and scans the affine
space in numpy chunks; the quadratic compatibility condition and the paper's
theta-based formulation are evaluated on every candidate and any disagreement
between the two is reported as a diagnostic warning rather than resolved.

Index packing: Gamma^m_{nr} and alpha^m_{nr} at bit (m*n+nu)*n+rho;
sigma^{mn}_{rl} at bit ((m*n+nu)*n+rho)*n+lam.  Exterior-square elements use
the basis dx^a ^ dx^b with a < b in lexicographic pair order.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .algebra import SearchCapExceeded, StructureConstants, find_unit, v_index
from .gf2 import (
    GF2Matrix,
    Inconsistent,
    bits_of,
    mat_inverse,
    mat_rank,
    solve_affine,
)


class NotInner(ValueError):
    """Calculus has no unit, so the inner-connection machinery does not apply."""


class InvalidGeometry(ValueError):
    """(calculus, metric, connection) fail their invariants."""


class InconsistentConnection(ValueError):
    """Gamma is not realizable as a bimodule connection for this calculus."""


def pair_list(n: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(n) for b in range(a + 1, n)]


def pair_index(n: int, a: int, b: int) -> int:
    if a > b:
        a, b = b, a
    return pair_list(n).index((a, b))


@dataclass(frozen=True, order=True)
class Metric:
    """Symmetric invertible central metric, rows[i] bit j = g_{ij}."""

    n: int
    rows: tuple[int, ...]

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def packed(self) -> int:
        out = 0
        for i, r in enumerate(self.rows):
            out |= r << (i * self.n)
        return out

    def to_matrix(self) -> GF2Matrix:
        return GF2Matrix(self.rows, self.n)

    def inverse(self) -> GF2Matrix:
        return mat_inverse(self.to_matrix())

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "Metric":
        n = len(entries)
        rows = []
        for row in entries:
            acc = 0
            for j, e in enumerate(row):
                acc |= (int(e) & 1) << j
            rows.append(acc)
        return cls(n, tuple(rows))

    def terms(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(self.n) if self.entry(i, j)]


@dataclass(frozen=True, order=True)
class AlphaMap:
    n: int
    bits: int

    def entry(self, m: int, nu: int, rho: int) -> int:
        return (self.bits >> v_index(self.n, m, nu, rho)) & 1


@dataclass(frozen=True, order=True)
class SigmaMap:
    n: int
    bits: int

    def entry(self, m: int, nu: int, rho: int, lam: int) -> int:
        n = self.n
        return (self.bits >> ((((m * n + nu) * n + rho) * n) + lam)) & 1

    def as_matrix(self) -> GF2Matrix:
        """sigma as an n^2 x n^2 matrix: row (r,l), column (m,n)... column (m,nu)."""
        n = self.n
        rows = [0] * (n * n)
        for m in range(n):
            for nu in range(n):
                col = m * n + nu
                for rho in range(n):
                    for lam in range(n):
                        if self.entry(m, nu, rho, lam):
                            rows[rho * n + lam] |= 1 << col
        return GF2Matrix(tuple(rows), n * n)

    def is_invertible(self) -> bool:
        return mat_rank(self.as_matrix()) == self.n * self.n


def flip_sigma(n: int) -> SigmaMap:
    bits = 0
    for m in range(n):
        for nu in range(n):
            bits |= 1 << ((((m * n + nu) * n + nu) * n) + m)
    return SigmaMap(n, bits)


@dataclass(frozen=True, order=True)
class Connection:
    """Bimodule connection data: nabla dx^m = Gamma^m_{nr} dx^n (x) dx^r."""

    n: int
    gamma: int
    sigma: SigmaMap
    alpha: int = 0
    theta: int | None = None

    def gamma_entry(self, m: int, nu: int, rho: int) -> int:
        return (self.gamma >> v_index(self.n, m, nu, rho)) & 1

    @property
    def is_zero(self) -> bool:
        return self.gamma == 0

    def nabla_terms(self, m: int) -> list[tuple[int, int]]:
        """Pairs (nu, rho) with dx^nu (x) dx^rho appearing in nabla dx^m."""
        return [
            (nu, rho)
            for nu in range(self.n)
            for rho in range(self.n)
            if self.gamma_entry(m, nu, rho)
        ]


@dataclass(frozen=True, order=True)
class Omega2Element:
    """Element of the exterior square; bit k = coefficient of the k-th a<b pair."""

    n: int
    bits: int

    def is_zero(self) -> bool:
        return self.bits == 0

    def terms(self) -> list[tuple[int, int]]:
        return [p for k, p in enumerate(pair_list(self.n)) if (self.bits >> k) & 1]


@dataclass(frozen=True, order=True)
class Omega2Tensor:
    """Element of Omega^2 (x) Omega^1; bit (k*n + c) = (pair k) (x) dx^c."""

    n: int
    bits: int

    def is_zero(self) -> bool:
        return self.bits == 0

    def terms(self) -> list[tuple[int, int, int]]:
        out = []
        for k, (a, b) in enumerate(pair_list(self.n)):
            for c in range(self.n):
                if (self.bits >> (k * self.n + c)) & 1:
                    out.append((a, b, c))
        return out


def wedge(n: int, tensor_bits: int) -> Omega2Element:
    """Omega^1 (x) Omega^1 -> Omega^2; kills dx^a^dx^a, identifies a^b with b^a."""
    bits = 0
    for k, (a, b) in enumerate(pair_list(n)):
        coeff = ((tensor_bits >> (a * n + b)) & 1) ^ ((tensor_bits >> (b * n + a)) & 1)
        bits |= coeff << k
    return Omega2Element(n, bits)


# ---------------------------------------------------------------------------
# Metrics


def centrality_residual(v: StructureConstants, g: Metric) -> bool:
    """True iff [g, x^rho] = 0 for all rho."""
    n = v.n
    for m in range(n):
        for nu in range(n):
            for rho in range(n):
                acc = 0
                for lam in range(n):
                    acc ^= g.entry(lam, nu) & v.entry(lam, rho, m)
                for gam in range(n):
                    acc ^= g.entry(m, gam) & v.entry(gam, rho, nu)
                if acc:
                    return False
    return True


def metric_is_valid(v: StructureConstants, g: Metric) -> bool:
    sym = all(g.entry(i, j) == g.entry(j, i) for i in range(v.n) for j in range(v.n))
    return sym and mat_rank(g.to_matrix()) == v.n and centrality_residual(v, g)


def find_metrics(v: StructureConstants) -> list[Metric]:
    """All central symmetric invertible metrics, ascending by packed bits."""
    n = v.n
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    var = {p: k for k, p in enumerate(pairs)}

    def gvar(i: int, j: int) -> int:
        return var[(i, j) if i <= j else (j, i)]

    eqs = []
    for m in range(n):
        for nu in range(n):
            for rho in range(n):
                mask = 0
                for lam in range(n):
                    if v.entry(lam, rho, m):
                        mask ^= 1 << gvar(lam, nu)
                for gam in range(n):
                    if v.entry(gam, rho, nu):
                        mask ^= 1 << gvar(m, gam)
                if mask:
                    eqs.append((mask, 0))
    space = solve_affine(eqs, len(pairs))
    out = []
    for member in space.members():
        rows = [0] * n
        for (i, j), k in var.items():
            if (member >> k) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        g = Metric(n, tuple(rows))
        if mat_rank(g.to_matrix()) == n:
            out.append(g)
    out.sort(key=lambda m: m.packed())
    return out


def transport_metric(g: Metric, h: GF2Matrix) -> Metric:
    """Metric components after the change of variables y = h x: h^-T g h^-1."""
    hinv = mat_inverse(h)
    n = g.n
    rows = [0] * n
    for i in range(n):
        for j in range(n):
            acc = 0
            for a in range(n):
                for b in range(n):
                    acc ^= hinv.entry(a, i) & g.entry(a, b) & hinv.entry(b, j)
            rows[i] |= acc << j
    return Metric(n, tuple(rows))


# ---------------------------------------------------------------------------
# Bimodule maps


def find_alphas(v: StructureConstants, cap: int = 1 << 20) -> list[AlphaMap]:
    """All alpha with the calculus-compatibility system and wedge(alpha) = 0."""
    if find_unit(v) is None:
        raise NotInner("alpha maps live on inner calculi")
    n = v.n
    nv = n**3
    eqs = []
    for m in range(n):
        for nu in range(n):
            for rho in range(nu + 1, n):
                eqs.append(
                    (1 << v_index(n, m, nu, rho) | 1 << v_index(n, m, rho, nu), 0)
                )
    # alpha^r_{g s} V^{g n}_l + alpha^r_{l g} V^{g n}_s = V^{r n}_m alpha^m_{l s}
    for r in range(n):
        for nu in range(n):
            for lam in range(n):
                for s in range(n):
                    mask = 0
                    for gam in range(n):
                        if v.entry(gam, nu, lam):
                            mask ^= 1 << v_index(n, r, gam, s)
                        if v.entry(gam, nu, s):
                            mask ^= 1 << v_index(n, r, lam, gam)
                    for m in range(n):
                        if v.entry(r, nu, m):
                            mask ^= 1 << v_index(n, m, lam, s)
                    if mask:
                        eqs.append((mask, 0))
    space = solve_affine(eqs, nv)
    if space.size() > cap:
        raise SearchCapExceeded(f"alpha space 2^{space.dim} exceeds cap")
    return sorted(AlphaMap(n, m) for m in space.members())


def _sigma_bit(n: int, m: int, nu: int, rho: int, lam: int) -> int:
    return (((m * n + nu) * n + rho) * n) + lam


@lru_cache(maxsize=64)
def _sigma_space_cached(n: int, vbits: int):
    v = StructureConstants(n, vbits)
    return solve_affine(_sigma_linear_equations(v), n**4)


def sigma_space(v: StructureConstants):
    """Affine space of sigma maps passing the bimodule and torsion conditions."""
    return _sigma_space_cached(v.n, v.bits)


def gamma_from_sigma(v: StructureConstants, sigma_bits: int, alpha_bits: int, theta: int) -> int:
    """Gamma of nabla w = theta (x) w - sigma(w (x) theta) + alpha(w)."""
    n = v.n
    gamma = alpha_bits
    for m in range(n):
        for rho in bits_of(theta):
            gamma ^= 1 << v_index(n, m, rho, m)
        for t in bits_of(theta):
            block = (sigma_bits >> _sigma_bit(n, m, t, 0, 0)) & ((1 << n * n) - 1)
            gamma ^= block << v_index(n, m, 0, 0)
    return gamma


def sigma_from_gamma(v: StructureConstants, gamma: int) -> SigmaMap:
    """The sigma forced by Gamma and the commutation relations.

    sigma^{mn}_{rl} = d^n_r d^m_l + V^{mn}_g Gamma^g_{rl}
                    + Gamma^m_{bl} V^{bn}_r + Gamma^m_{rb} V^{bn}_l  (mod 2).
    Valid for any calculus, inner or not.
    """
    n = v.n

    def G(m, a, b):
        return (gamma >> v_index(n, m, a, b)) & 1

    bits = 0
    for m in range(n):
        for nu in range(n):
            for rho in range(n):
                for lam in range(n):
                    val = (1 if (nu == rho and m == lam) else 0)
                    for g in range(n):
                        val ^= v.entry(m, nu, g) & G(g, rho, lam)
                        val ^= G(m, g, lam) & v.entry(g, nu, rho)
                        val ^= G(m, rho, g) & v.entry(g, nu, lam)
                    bits |= (val & 1) << _sigma_bit(n, m, nu, rho, lam)
    return SigmaMap(n, bits)


def sigma_is_bimodule_map(v: StructureConstants, sigma: SigmaMap) -> bool:
    n = v.n
    for m in range(n):
        for nu in range(n):
            for gam in range(n):
                for w in range(n):
                    for s in range(n):
                        acc = 0
                        for a in range(n):
                            acc ^= v.entry(m, gam, a) & sigma.entry(a, nu, w, s)
                            acc ^= v.entry(nu, gam, a) & sigma.entry(m, a, w, s)
                            acc ^= sigma.entry(m, nu, a, s) & v.entry(a, gam, w)
                            acc ^= sigma.entry(m, nu, w, a) & v.entry(a, gam, s)
                        if acc:
                            return False
    return True


def wedge_sigma_is_minus_wedge(sigma: SigmaMap) -> bool:
    n = sigma.n
    for m in range(n):
        for nu in range(n):
            tensor = 0
            for rho in range(n):
                for lam in range(n):
                    tensor |= sigma.entry(m, nu, rho, lam) << (rho * n + lam)
            expect = wedge(n, 1 << (m * n + nu))
            if wedge(n, tensor) != expect:
                return False
    return True


# ---------------------------------------------------------------------------
# Metric compatibility


def nabla_g_residual_zero(g: Metric, gamma: int, sigma: SigmaMap) -> bool:
    """(nabla (x) id) g + (sigma (x) id)(id (x) nabla) g = 0, componentwise."""
    n = g.n

    def G(m, a, b):
        return (gamma >> v_index(n, m, a, b)) & 1

    for a in range(n):
        for b in range(n):
            for c in range(n):
                acc = 0
                for m in range(n):
                    if g.entry(m, c):
                        acc ^= G(m, a, b)
                for m in range(n):
                    for x in range(n):
                        if sigma.entry(m, x, a, b):
                            for nu in range(n):
                                acc ^= g.entry(m, nu) & G(nu, x, c)
                if acc:
                    return False
    return True


def theta_compat_residual_zero(g: Metric, sigma: SigmaMap, theta: int) -> bool:
    """The paper's theta-based compatibility for alpha = 0 (quadratic in sigma)."""
    n = g.n
    sigth = [
        [
            [
                _parity(sum(sigma.entry(nu, t, lam, rho) for t in bits_of(theta)))
                for rho in range(n)
            ]
            for lam in range(n)
        ]
        for nu in range(n)
    ]
    for beta in range(n):
        th_b = (theta >> beta) & 1
        for gam in range(n):
            for rho in range(n):
                acc = th_b & g.entry(gam, rho)
                for m in range(n):
                    for nu in range(n):
                        if not g.entry(m, nu):
                            continue
                        for lam in range(n):
                            acc ^= sigth[nu][lam][rho] & sigma.entry(m, lam, beta, gam)
                if acc:
                    return False
    return True


def _parity(x: int) -> int:
    return x & 1


# ---------------------------------------------------------------------------
# QLC search


def find_qlcs(
    v: StructureConstants,
    g: Metric,
    cap: int = 1 << 24,
    chunk: int = 1 << 14,
) -> list[Connection]:
    """All quantum Levi-Civita bimodule connections for (v, g).

    Solves the linear sigma conditions, scans the affine space, filters by
    metric compatibility and sigma invertibility; alpha ranges over the
    bimodule maps admitted by the calculus (only 0 for the classified cases).
    """
    unit = find_unit(v)
    if unit is None:
        raise NotInner("find_qlcs needs an inner calculus")
    if not metric_is_valid(v, g):
        raise InvalidGeometry("metric fails symmetry/invertibility/centrality")
    theta = unit.theta
    n = v.n
    space = sigma_space(v)
    if space.size() > cap:
        raise SearchCapExceeded(
            f"sigma space 2^{space.dim} exceeds cap {cap}; raise cap to proceed"
        )
    alphas = find_alphas(v)
    gmat = np.array(g.to_lists(), dtype=np.uint8)
    theta_vec = np.array([(theta >> i) & 1 for i in range(n)], dtype=np.uint8)
    theta_part = np.zeros((n, n, n), dtype=np.uint8)
    for m in range(n):
        for rho in range(n):
            theta_part[m, rho, m] = (theta >> rho) & 1

    out: list[Connection] = []
    mismatches = 0
    nbits = n**4
    basis_rows = np.array(
        [[(b >> k) & 1 for k in range(nbits)] for b in space.basis], dtype=np.uint8
    ).reshape(space.dim, nbits)
    part_row = np.array([(space.particular >> k) & 1 for k in range(nbits)], dtype=np.uint8)
    total = space.size()
    for alpha in alphas:
        alpha_arr = np.zeros((n, n, n), dtype=np.uint8)
        for m in range(n):
            for a in range(n):
                for b in range(n):
                    alpha_arr[m, a, b] = alpha.entry(m, a, b)
        for start in range(0, total, chunk):
            ks = np.arange(start, min(start + chunk, total), dtype=np.uint64)
            kbits = ((ks[:, None] >> np.arange(space.dim, dtype=np.uint64)) & np.uint64(1)).astype(
                np.uint8
            )
            sigbits = (kbits @ basis_rows) & 1 ^ part_row if space.dim else np.tile(
                part_row, (len(ks), 1)
            )
            sig = sigbits.reshape(-1, n, n, n, n)  # axes: c, m, nu, rho, lam
            gam = (
                theta_part[None]
                ^ (np.einsum("t,cmtrl->cmrl", theta_vec, sig) & 1)
                ^ alpha_arr[None]
            )
            term1 = np.einsum("mw,cmab->cabw", gmat, gam) & 1
            h = np.einsum("mn,cnxw->cmxw", gmat, gam) & 1
            term2 = np.einsum("cmxab,cmxw->cabw", sig, h) & 1
            ok = ((term1 ^ term2) == 0).all(axis=(1, 2, 3))
            # Cross-check with the theta formulation on every candidate.
            if alpha.bits == 0:
                sigth = np.einsum("t,cntlr->cnlr", theta_vec, sig) & 1
                m2 = np.einsum("mn,cnlr->cmlr", gmat, sigth) & 1
                quad = np.einsum("cmlr,cmlbg->crbg", m2, sig) & 1
                const = np.einsum("b,gr->rbg", theta_vec, gmat)
                ok_theta = ((quad ^ const[None]) == 0).all(axis=(1, 2, 3))
                disagree = int((ok != ok_theta).sum())
                if disagree:
                    mismatches += disagree
            for row in sigbits[ok]:
                mem = 0
                for k in np.flatnonzero(row):
                    mem |= 1 << int(k)
                sigma = SigmaMap(n, mem)
                if not sigma.is_invertible():
                    continue
                gamma = gamma_from_sigma(v, sigma.bits, alpha.bits, theta)
                out.append(Connection(n, gamma, sigma, alpha.bits, theta))
    if mismatches:
        warnings.warn(
            f"metric-compatibility formulations disagree on {mismatches} candidates",
            RuntimeWarning,
            stacklevel=2,
        )
    uniq = {(c.gamma, c.sigma.bits, c.alpha): c for c in out}
    return sorted(uniq.values(), key=lambda c: (c.gamma, c.sigma.bits, c.alpha))


def qlcs_bimodule(
    v: StructureConstants,
    g: Metric,
    *,
    require_symmetric_gamma: bool = False,
    cap: int = 1 << 20,
) -> list[Connection]:
    """Gamma-first search over all constant bimodule connections.

    Works for non-inner calculi: sigma is forced by Gamma, then filtered by
    the bimodule condition, wedge(sigma) = -wedge, metric compatibility and
    invertibility.  With require_symmetric_gamma the honest torsion condition
    wedge(nabla) = d is imposed as well (equivalent for inner calculi).
    """
    if not metric_is_valid(v, g):
        raise InvalidGeometry("metric fails symmetry/invertibility/centrality")
    n = v.n
    if (1 << n**3) > cap:
        raise SearchCapExceeded("Gamma space exceeds cap")
    unit = find_unit(v)
    out = []
    for gamma in range(1 << n**3):
        if require_symmetric_gamma and not _gamma_symmetric(n, gamma):
            continue
        sigma = sigma_from_gamma(v, gamma)
        if not sigma_is_bimodule_map(v, sigma):
            continue
        if not wedge_sigma_is_minus_wedge(sigma):
            continue
        if not nabla_g_residual_zero(g, gamma, sigma):
            continue
        if not sigma.is_invertible():
            continue
        out.append(Connection(n, gamma, sigma, 0, unit.theta if unit else None))
    return sorted(out, key=lambda c: (c.gamma, c.sigma.bits))


def _gamma_symmetric(n: int, gamma: int) -> bool:
    for m in range(n):
        for a in range(n):
            for b in range(a + 1, n):
                if ((gamma >> v_index(n, m, a, b)) & 1) != ((gamma >> v_index(n, m, b, a)) & 1):
                    return False
    return True


def reconstruct_sigma(v: StructureConstants, gamma: int) -> SigmaMap:
    """sigma from Gamma via the inner formula plus the bimodule extension.

    Solves sigma(dx^m (x) theta) = theta (x) dx^m - nabla dx^m together with
    the bimodule condition; raises InconsistentConnection when no bimodule
    sigma realizes Gamma (or when the extension is not unique).
    """
    unit = find_unit(v)
    if unit is None:
        raise NotInner("reconstruct_sigma needs an inner calculus")
    n = v.n
    theta = unit.theta
    eqs = []
    for m in range(n):
        for rho in range(n):
            for lam in range(n):
                mask = 0
                for t in bits_of(theta):
                    mask ^= 1 << _sigma_bit(n, m, t, rho, lam)
                rhs = (gamma >> v_index(n, m, rho, lam)) & 1
                if lam == m:
                    rhs ^= (theta >> rho) & 1
                eqs.append((mask, rhs))
    # Intersect with the linear sigma conditions (bimodule + torsion).
    nv = n**4
    sk_eqs = _sigma_linear_equations(v)
    try:
        sol = solve_affine(list(sk_eqs) + eqs, nv)
    except Inconsistent as exc:
        raise InconsistentConnection(str(exc)) from exc
    if sol.dim != 0:
        raise InconsistentConnection(
            f"sigma extension not unique (dim {sol.dim})"
        )
    return SigmaMap(n, sol.particular)


def _sigma_linear_equations(v: StructureConstants):
    n = v.n
    eqs = []
    for m in range(n):
        for nu in range(n):
            for gam in range(n):
                for w in range(n):
                    for s in range(n):
                        mask = 0
                        for a in range(n):
                            if v.entry(m, gam, a):
                                mask ^= 1 << _sigma_bit(n, a, nu, w, s)
                            if v.entry(nu, gam, a):
                                mask ^= 1 << _sigma_bit(n, m, a, w, s)
                            if v.entry(a, gam, w):
                                mask ^= 1 << _sigma_bit(n, m, nu, a, s)
                            if v.entry(a, gam, s):
                                mask ^= 1 << _sigma_bit(n, m, nu, w, a)
                        if mask:
                            eqs.append((mask, 0))
    for m in range(n):
        for nu in range(n):
            for a in range(n):
                for b in range(a + 1, n):
                    mask = 1 << _sigma_bit(n, m, nu, a, b) | 1 << _sigma_bit(n, m, nu, b, a)
                    rhs = 1 if (m, nu) in ((a, b), (b, a)) else 0
                    eqs.append((mask, rhs))
    return eqs


# ---------------------------------------------------------------------------
# Torsion and curvature


def torsion(c: Connection) -> list[Omega2Element]:
    """T dx^m = wedge(nabla dx^m) per generator (d dx^m = 0)."""
    n = c.n
    out = []
    for m in range(n):
        tensor = 0
        for a in range(n):
            for b in range(n):
                tensor |= c.gamma_entry(m, a, b) << (a * n + b)
        out.append(wedge(n, tensor))
    return out


def curvature(c: Connection) -> list[Omega2Tensor]:
    """R dx^m = Gamma^m_{nr} dx^n ^ nabla dx^r expanded on the (a<b, c) basis."""
    n = c.n
    out = []
    for m in range(n):
        bits = 0
        for k, (a, b) in enumerate(pair_list(n)):
            for w in range(n):
                acc = 0
                for rho in range(n):
                    acc ^= c.gamma_entry(m, a, rho) & c.gamma_entry(rho, b, w)
                    acc ^= c.gamma_entry(m, b, rho) & c.gamma_entry(rho, a, w)
                bits |= acc << (k * n + w)
        out.append(Omega2Tensor(n, bits))
    return out


def is_flat(c: Connection) -> bool:
    return all(t.is_zero() for t in curvature(c))

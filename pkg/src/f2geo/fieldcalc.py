"""Polynomials over GF(2) and the noncommutative differential of a calculus V.

A polynomial is a set of monomials (coefficients are 0/1, so addition is
symmetric difference of monomial sets).  One-forms are kept in left normal
form sum_mu a_mu dx^mu with polynomial coefficients on the left; moving a
generator through a variable uses dx^mu x^nu = x^nu dx^mu + V^{mu nu}_rho dx^rho,
which never raises the coefficient degree.

Text syntax: monomials are caret-exponent products joined by "+", e.g.
"x1^2*x3 + x2"; "1" is the empty monomial and "0" the zero polynomial.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .algebra import StructureConstants, find_unit
from .geometry import (
    Connection,
    InvalidGeometry,
    Metric,
    metric_is_valid,
    nabla_g_residual_zero,
    sigma_from_gamma,
    sigma_is_bimodule_map,
)

_MONO_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class Polynomial:
    """Element of F2[x^1..x^n]; monomials stored as exponent tuples."""

    n: int
    monomials: frozenset[tuple[int, ...]]

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n, frozenset())

    @classmethod
    def one(cls, n: int) -> "Polynomial":
        return cls(n, frozenset({(0,) * n}))

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        expo = [0] * n
        expo[i] = 1
        return cls(n, frozenset({tuple(expo)}))

    @classmethod
    def from_monomials(cls, n: int, monos) -> "Polynomial":
        acc: set[tuple[int, ...]] = set()
        for m in monos:
            m = tuple(m)
            if m in acc:
                acc.remove(m)
            else:
                acc.add(m)
        return cls(n, frozenset(acc))

    @classmethod
    def parse(cls, n: int, text: str) -> "Polynomial":
        text = text.strip()
        if text in ("", "0"):
            return cls.zero(n)
        monos = []
        for part in text.split("+"):
            part = part.strip()
            expo = [0] * n
            if part != "1":
                for factor in part.split("*"):
                    m = _MONO_RE.match(factor.strip())
                    if not m:
                        raise ValueError(f"bad monomial factor {factor!r}")
                    idx = int(m.group(1)) - 1
                    if not 0 <= idx < n:
                        raise ValueError(f"variable x{idx + 1} outside 1..{n}")
                    expo[idx] += int(m.group(2) or 1)
            monos.append(tuple(expo))
        return cls.from_monomials(n, monos)

    def render(self) -> str:
        if not self.monomials:
            return "0"
        parts = []
        for expo in sorted(self.monomials, reverse=True):
            factors = [
                f"x{i + 1}" + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(expo)
                if k
            ]
            parts.append("*".join(factors) if factors else "1")
        return " + ".join(parts)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(self.n, self.monomials ^ other.monomials)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        acc: set[tuple[int, ...]] = set()
        for a in self.monomials:
            for b in other.monomials:
                m = tuple(x + y for x, y in zip(a, b))
                if m in acc:
                    acc.remove(m)
                else:
                    acc.add(m)
        return Polynomial(self.n, frozenset(acc))

    def is_zero(self) -> bool:
        return not self.monomials

    def degree(self) -> int:
        return max((sum(e) for e in self.monomials), default=0)


@dataclass(frozen=True)
class OneForm:
    """Left-normal 1-form sum_mu coeffs[mu] dx^mu."""

    n: int
    coeffs: tuple[Polynomial, ...]

    @classmethod
    def zero(cls, n: int) -> "OneForm":
        return cls(n, tuple(Polynomial.zero(n) for _ in range(n)))

    def __add__(self, other: "OneForm") -> "OneForm":
        return OneForm(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, f: Polynomial) -> "OneForm":
        return OneForm(self.n, tuple(f * c for c in self.coeffs))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def render(self, names=None) -> str:
        names = names or [f"x{i + 1}" for i in range(self.n)]
        parts = [
            f"({c.render()})d{names[i]}"
            for i, c in enumerate(self.coeffs)
            if not c.is_zero()
        ]
        return " + ".join(parts) if parts else "0"


class _Mover:
    """Normal-form engine for one calculus: pushes dx^mu through monomials."""

    def __init__(self, v: StructureConstants):
        self.v = v
        self.n = v.n

    @lru_cache(maxsize=None)
    def push(self, mu: int, seq: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
        """dx^mu * (x^seq) in left normal form.

        Returns ((monomial, generator index), ...) pairs with coefficient 1;
        the pair set is XOR-canonical.
        """
        if not seq:
            return (((0,) * self.n, mu),)
        nu, rest = seq[0], seq[1:]
        acc: set[tuple[tuple[int, ...], int]] = set()
        # x^nu * (dx^mu * rest)
        for mono, gen in self.push(mu, rest):
            lifted = list(mono)
            lifted[nu] += 1
            _toggle(acc, (tuple(lifted), gen))
        # + V^{mu nu}_rho * (dx^rho * rest)
        for rho in range(self.n):
            if self.v.entry(mu, nu, rho):
                for mono, gen in self.push(rho, rest):
                    _toggle(acc, (mono, gen))
        return tuple(sorted(acc))

    @lru_cache(maxsize=None)
    def d_seq(self, seq: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
        """d(x^seq) in left normal form via the Leibniz rule."""
        if not seq:
            return ()
        nu, rest = seq[0], seq[1:]
        acc: set[tuple[tuple[int, ...], int]] = set()
        for term in self.push(nu, rest):  # (d x^nu) * rest
            _toggle(acc, term)
        for mono, gen in self.d_seq(rest):  # x^nu * d(rest)
            lifted = list(mono)
            lifted[nu] += 1
            _toggle(acc, (tuple(lifted), gen))
        return tuple(sorted(acc))


def _toggle(acc: set, item) -> None:
    if item in acc:
        acc.remove(item)
    else:
        acc.add(item)


_movers: dict[tuple[int, int], _Mover] = {}


def _mover(v: StructureConstants) -> _Mover:
    key = (v.n, v.bits)
    if key not in _movers:
        _movers[key] = _Mover(v)
    return _movers[key]


def _seq_of(expo: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for i, k in enumerate(expo):
        out.extend([i] * k)
    return tuple(out)


def differential(f: Polynomial, v: StructureConstants) -> OneForm:
    """df in left normal form, monomial by monomial."""
    if f.n != v.n:
        raise ValueError("dimension mismatch")
    mover = _mover(v)
    coeff_sets: list[set[tuple[int, ...]]] = [set() for _ in range(v.n)]
    for expo in f.monomials:
        for mono, gen in mover.d_seq(_seq_of(expo)):
            _toggle(coeff_sets[gen], mono)
    return OneForm(v.n, tuple(Polynomial(v.n, frozenset(s)) for s in coeff_sets))


def one_form_times_poly(w: OneForm, f: Polynomial, v: StructureConstants) -> OneForm:
    """Right product w * f renormalized to left normal form."""
    mover = _mover(v)
    coeff_sets: list[set[tuple[int, ...]]] = [set() for _ in range(v.n)]
    for mu, c in enumerate(w.coeffs):
        for cm in c.monomials:
            for fm in f.monomials:
                for mono, gen in mover.push(mu, _seq_of(fm)):
                    total = tuple(a + b for a, b in zip(cm, mono))
                    _toggle(coeff_sets[gen], total)
    return OneForm(v.n, tuple(Polynomial(v.n, frozenset(s)) for s in coeff_sets))


def partial(f: Polynomial, mu: int, v: StructureConstants) -> Polynomial:
    """Coefficient of dx^mu in df."""
    return differential(f, v).coeffs[mu]


def laplacian(f: Polynomial, v: StructureConstants, g: Metric, c: Connection) -> Polynomial:
    """box f = ( , ) nabla d f for the inverse metric ( , ) and connection c.

    Expansion: box f = sum (d_nu d_mu f) B[nu][mu]
                     + sum (d_mu f) * sum_{ab} Gamma^mu_{ab} B[a][b].
    """
    if not metric_is_valid(v, g):
        raise InvalidGeometry("metric fails its invariants for this calculus")
    sigma = sigma_from_gamma(v, c.gamma)
    if sigma.bits != c.sigma.bits or not sigma_is_bimodule_map(v, sigma):
        raise InvalidGeometry("connection sigma inconsistent with the calculus")
    if not nabla_g_residual_zero(g, c.gamma, c.sigma):
        raise InvalidGeometry("connection is not metric compatible")
    n = v.n
    binv = g.inverse()
    first = differential(f, v)
    out = Polynomial.zero(n)
    for mu in range(n):
        dmu = first.coeffs[mu]
        if dmu.is_zero():
            continue
        second = differential(dmu, v)
        for nu in range(n):
            if binv.entry(nu, mu):
                out = out + second.coeffs[nu]
        k = 0
        for a in range(n):
            for b in range(n):
                k ^= c.gamma_entry(mu, a, b) & binv.entry(a, b)
        if k:
            out = out + dmu
    return out

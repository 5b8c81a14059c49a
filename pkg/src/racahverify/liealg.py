"""Rotation generators, their quadratic invariant, and su(1,1) triples.

The orthogonal algebra o(2n) acts on 2n oscillator variables through

    L_{mu,nu} = x_mu d_nu - x_nu d_mu,

with bracket [L_{mu,nu}, L_{rho,sigma}] = delta_{nu,rho} L_{mu,sigma}
- delta_{nu,sigma} L_{mu,rho} - delta_{mu,rho} L_{nu,sigma}
+ delta_{mu,sigma} L_{nu,rho}.  This module builds those generators,
sweeps the bracket relations, constructs the quadratic invariant
sum_{mu<nu} L_{mu,nu}^2, and houses the su(1,1) triples (one
single-variable copy per oscillator variable) whose coproducts drive
everything downstream.

A pitfall worth stating once: the quadratic invariant is central only
when the sum runs over ALL coordinate pairs, 1 <= mu < nu <= 2n.
Truncating the sum at n produces the invariant of an o(n) subalgebra,
which fails to commute with the generators that mix the two index
ranges; check_casimir_centrality takes an explicit bound so the failure
is demonstrable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from ._parallel import run_tasks
from .report import RelationReport, ReportEntry
from .weyl import AlgebraSignature, Operator, commutator


@dataclass(frozen=True)
class SO2nContext:
    """n commuting planar-rotation factors inside o(2n); 2n variables."""

    n: int
    signature: AlgebraSignature = field(init=False)

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("need at least three factors")
        object.__setattr__(self, "signature", AlgebraSignature(2 * self.n))

    @property
    def num_vars(self) -> int:
        return 2 * self.n


def make_L(ctx: SO2nContext, mu: int, nu: int) -> Operator:
    """The rotation generator x_mu d_nu - x_nu d_mu (1-based indices).

    The formula is antisymmetric in (mu, nu), so swapped indices return
    the negated generator; equal indices are rejected.
    """
    m = ctx.num_vars
    if not (1 <= mu <= m and 1 <= nu <= m):
        raise ValueError(f"indices ({mu}, {nu}) out of range 1..{m}")
    if mu == nu:
        raise ValueError("rotation generator needs two distinct indices")
    sig = ctx.signature
    return Operator.x(sig, mu) * Operator.d(sig, nu) - Operator.x(sig, nu) * Operator.d(sig, mu)


def _bracket_rhs(ctx: SO2nContext, mu: int, nu: int, rho: int, sigma: int) -> Operator:
    def delta(a: int, b: int) -> int:
        return 1 if a == b else 0

    out = Operator.zero(ctx.signature)
    for coeff, a, b in (
        (delta(nu, rho), mu, sigma),
        (-delta(nu, sigma), mu, rho),
        (-delta(mu, rho), nu, sigma),
        (delta(mu, sigma), nu, rho),
    ):
        if coeff and a != b:
            out = out + coeff * make_L(ctx, a, b)
    return out


def check_o2n_relations(ctx: SO2nContext, jobs: int = 1) -> RelationReport:
    """Verify the bracket of every unordered pair of distinct generators.

    For m = 2n variables there are m(m-1)/2 generators and
    C(m(m-1)/2, 2) pairs; each entry records the residual of
    [L_{mu,nu}, L_{rho,sigma}] minus its structure-constant expansion.
    """
    m = ctx.num_vars
    gens = [(mu, nu) for mu in range(1, m + 1) for nu in range(mu + 1, m + 1)]
    L = {pair: make_L(ctx, *pair) for pair in gens}
    pairs = [
        (gens[a], gens[b])
        for a in range(len(gens))
        for b in range(a + 1, len(gens))
    ]

    def check(pair: tuple[tuple[int, int], tuple[int, int]]) -> ReportEntry:
        (mu, nu), (rho, sigma) = pair
        t0 = time.perf_counter()
        residual = commutator(L[(mu, nu)], L[(rho, sigma)]) - _bracket_rhs(ctx, mu, nu, rho, sigma)
        ms = (time.perf_counter() - t0) * 1000
        return ReportEntry(
            relation="o2n",
            indices=(mu, nu, rho, sigma),
            passed=residual.is_zero(),
            residual_terms=residual.term_count(),
            ms=ms,
        )

    report = RelationReport()
    report.extend(run_tasks(check, pairs, jobs))
    return report


def casimir_sum(ctx: SO2nContext, bound: int) -> Operator:
    """sum of L_{mu,nu}^2 over 1 <= mu < nu <= bound.

    Only bound = 2n gives the central invariant of the full algebra; a
    smaller bound gives the invariant of the o(bound) subalgebra, which
    is not central in o(2n).
    """
    if not 2 <= bound <= ctx.num_vars:
        raise ValueError(f"bound must lie in 2..{ctx.num_vars}")
    total = Operator.zero(ctx.signature)
    for mu in range(1, bound + 1):
        for nu in range(mu + 1, bound + 1):
            l = make_L(ctx, mu, nu)
            total = total + l * l
    return total


def quadratic_casimir(ctx: SO2nContext) -> Operator:
    """The central quadratic invariant: sum of all L_{mu,nu}^2, mu < nu <= 2n."""
    return casimir_sum(ctx, ctx.num_vars)


def check_casimir_centrality(
    ctx: SO2nContext, bound: int | None = None, jobs: int = 1
) -> RelationReport:
    """Commute the (possibly truncated) invariant with every generator.

    With the default bound 2n every entry passes.  With bound = n the
    report shows the failures that prove the truncated sum is not the
    invariant of the full algebra.
    """
    m = ctx.num_vars
    if bound is None:
        bound = m
    cas = casimir_sum(ctx, bound)
    gens = [(mu, nu) for mu in range(1, m + 1) for nu in range(mu + 1, m + 1)]

    def check(pair: tuple[int, int]) -> ReportEntry:
        t0 = time.perf_counter()
        residual = commutator(cas, make_L(ctx, *pair))
        ms = (time.perf_counter() - t0) * 1000
        return ReportEntry(
            relation="casimir-central",
            indices=pair,
            passed=residual.is_zero(),
            residual_terms=residual.term_count(),
            ms=ms,
            note="" if bound == m else f"sum bound {bound}",
        )

    report = RelationReport()
    report.extend(run_tasks(check, gens, jobs))
    return report


@dataclass(frozen=True)
class SU11Triple:
    """A raising/lowering/Cartan triple obeying

        [J0, Jp] = Jp,   [J0, Jm] = -Jm,   [Jp, Jm] = -2 J0.

    The relations are verified at construction time, so holding an
    SU11Triple is proof the realization closes.  Triples over disjoint
    variables add componentwise (the coproduct), and the sum is checked
    again.
    """

    Jp: Operator
    Jm: Operator
    J0: Operator

    def __post_init__(self):
        for label, residual in self.relation_residuals():
            if not residual.is_zero():
                raise ValueError(f"triple violates {label}: residual {residual}")

    def relation_residuals(self) -> list[tuple[str, Operator]]:
        return [
            ("[J0, J+] - J+", commutator(self.J0, self.Jp) - self.Jp),
            ("[J0, J-] + J-", commutator(self.J0, self.Jm) + self.Jm),
            ("[J+, J-] + 2*J0", commutator(self.Jp, self.Jm) + 2 * self.J0),
        ]

    def __add__(self, other: SU11Triple) -> SU11Triple:
        if not isinstance(other, SU11Triple):
            return NotImplemented
        return SU11Triple(self.Jp + other.Jp, self.Jm + other.Jm, self.J0 + other.J0)


def sum_triples(triples: list[SU11Triple]) -> SU11Triple:
    """Coproduct sum of triples over pairwise disjoint variables."""
    if not triples:
        raise ValueError("need at least one triple")
    total = triples[0]
    for t in triples[1:]:
        total = total + t
    return total


def make_metaplectic(ctx: SO2nContext, mu: int) -> SU11Triple:
    """The one-variable realization in x_mu:

        J+ = x_mu^2 / 2,  J- = d_mu^2 / 2,  J0 = (1/2)(1/2 + x_mu d_mu).
    """
    m = ctx.num_vars
    if not 1 <= mu <= m:
        raise ValueError(f"index {mu} out of range 1..{m}")
    sig = ctx.signature
    half = Fraction(1, 2)
    jp = Operator.x(sig, mu, 2) * half
    jm = Operator.d(sig, mu, 2) * half
    j0 = (Operator.constant(sig, half) + Operator.x(sig, mu) * Operator.d(sig, mu)) * half
    return SU11Triple(jp, jm, j0)


def casimir_of(t: SU11Triple) -> Operator:
    """J0^2 - J+ J- - J0; verified to commute with all three members."""
    c = t.J0 * t.J0 - t.Jp * t.Jm - t.J0
    for member in (t.Jp, t.Jm, t.J0):
        if not commutator(c, member).is_zero():
            raise RuntimeError("computed element is not central in its triple")
    return c

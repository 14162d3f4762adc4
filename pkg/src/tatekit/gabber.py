"""Desk-scale model of the compositum field with finitely many cosets.

The context fixes a prime p and a list of bounded coset representatives
s_1, s_2, ... of the generator cosets (values in (-1, 1), pairwise
distinct signatures mod p, strictly decreasing values).  Elements of the
modeled field are finite Hahn sums whose exponents meet finitely many
cosets of the p-divisible subgroup; the witness series truncations
f_N = sum of t^(-s_i) stay at distance > 1 from every such element,
which is the computable core of the non-density argument.  All norm
comparisons are exact exponent comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .exponents import (
    CosetSignature,
    ExponentVector,
    bounded_coset_representatives,
    compare,
)
from .field import HahnSum


@dataclass(frozen=True)
class GabberContext:
    p: int
    reps: tuple[ExponentVector, ...]

    @property
    def count(self) -> int:
        return len(self.reps)

    def rep(self, i: int) -> ExponentVector:
        """1-based access to the i-th representative."""
        if not 1 <= i <= self.count:
            raise DomainError(f"rep-shortage: representative {i} not available")
        return self.reps[i - 1]


def build_context(p: int, count: int) -> GabberContext:
    reps = bounded_coset_representatives(p, count)
    for a, b in zip(reps, reps[1:]):
        if compare(a, b) <= 0:
            raise DomainError(
                "representatives must have strictly decreasing values"
            )
    return GabberContext(p, tuple(reps))


def signature_set(g: HahnSum, p: int) -> frozenset[CosetSignature]:
    return frozenset(e.signature(p) for e, _ in g.terms)


@dataclass(frozen=True)
class MElem:
    """A finite Hahn sum together with the coset signatures it meets."""

    elem: HahnSum
    signatures: frozenset[CosetSignature]


def melem(ctx: GabberContext, g: HahnSum) -> MElem:
    if g.p != ctx.p:
        raise DomainError("characteristic differs from the context")
    return MElem(g, signature_set(g, ctx.p))


def witness_truncation(ctx: GabberContext, upto: int) -> HahnSum:
    """f_N = t^(-s_1) + ... + t^(-s_N); support strictly increasing since
    the representative values strictly decrease."""
    if upto < 0 or upto > ctx.count:
        raise DomainError(
            f"rep-shortage: asked for {upto} terms, have {ctx.count} representatives"
        )
    return HahnSum.make(ctx.p, {-ctx.rep(i): 1 for i in range(1, upto + 1)})


def missing_coset_index(ctx: GabberContext, g: HahnSum, upto: int) -> int | None:
    """Least i <= upto whose witness coset does not meet g's exponents;
    None when every one of them is present."""
    if upto > ctx.count:
        raise DomainError("rep-shortage: fewer representatives than requested")
    present = signature_set(g, ctx.p)
    for i in range(1, upto + 1):
        if (-ctx.rep(i)).signature(ctx.p) not in present:
            return i
    return None


@dataclass(frozen=True)
class DistanceReport:
    missing_index: int
    bound_exponent: ExponentVector
    actual_exponent: ExponentVector
    passed: bool


def distance_lower_bound_check(
    ctx: GabberContext, g: HahnSum, upto: int
) -> DistanceReport:
    """Certify that the witness truncation stays far from g.

    With i the least missing coset, the difference f_N - g keeps the
    term t^(-s_i), so its norm is at least e^(s_i); since every s_i is
    positive the norm strictly exceeds 1.  Both comparisons are exact
    exponent comparisons and are recorded in the report.
    """
    i = missing_coset_index(ctx, g, upto)
    if i is None:
        raise DomainError("all witness cosets are present in g")
    witness = witness_truncation(ctx, upto)
    difference = witness - g
    val = difference.valuation()
    if not val.is_exact:
        raise DomainError("difference has no exact valuation (internal error)")
    bound = -ctx.rep(i)
    at_least_bound = compare(val.value, bound) <= 0
    exceeds_one = compare(val.value, ExponentVector.zero()) < 0
    return DistanceReport(i, bound, val.value, at_least_bound and exceeds_one)


def value_group_witness(ctx: GabberContext, exponent: ExponentVector) -> MElem:
    """The monomial t^exponent: norm e^(-exponent), inside the model."""
    return melem(ctx, HahnSum.t_power(ctx.p, exponent))


def residue_witness(ctx: GabberContext, c: int) -> MElem:
    """The constant c, whose residue is c itself."""
    return melem(ctx, HahnSum.constant(ctx.p, c))

"""Exact arithmetic and decidable ordering for the exponent group.

The group is the set of finite integer combinations of the real numbers
1/sqrt(2), 1/sqrt(3), 1/sqrt(5), ... (one generator per prime, 1-based
index).  Clearing denominators turns any integer combination into a sum
of square roots of distinct squarefree integers, and such sums vanish
only trivially; two combinations are therefore equal as real numbers
exactly when their coordinate vectors coincide.  Every nonzero
combination can be bounded away from zero, so ordering is decidable by
refining certified rational enclosures until they separate.

The coset structure modulo a prime p (coordinatewise reduction) and a
bounded search for group elements with all coordinates divisible by p
near a rational target are also provided; together they produce bounded
lists of pairwise distinct coset representatives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import isqrt

from .errors import DomainError, PrecisionError, SearchExhausted

# Interval refinement halves the width each round; distinct elements
# separate long before this cap, so hitting it signals an internal bug
# rather than a hard input.
REFINEMENT_CAP = 256

# Width of the per-vector cached enclosure used to shortcut comparisons.
_FAST_WIDTH = Fraction(1, 1 << 80)

_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def _is_prime(c: int) -> bool:
    if c < 2:
        return False
    if c % 2 == 0:
        return c == 2
    d = 3
    while d * d <= c:
        if c % d == 0:
            return False
        d += 2
    return True


def nth_prime(i: int) -> int:
    """Return the i-th prime (1-based): 2, 3, 5, ..."""
    if i < 1:
        raise ValueError("generator indices are 1-based")
    while len(_PRIMES) < i:
        c = _PRIMES[-1] + 2
        while not _is_prime(c):
            c += 2
        _PRIMES.append(c)
    return _PRIMES[i - 1]


@dataclass(frozen=True)
class RealInterval:
    """Closed interval with exact rational endpoints, lo <= hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def strictly_inside(self, lo: Fraction, hi: Fraction) -> bool:
        """True when the whole interval sits in the open interval (lo, hi)."""
        return lo < self.lo and self.hi < hi


@lru_cache(maxsize=None)
def _sqrt_bounds(n: int, bits: int) -> tuple[Fraction, Fraction]:
    # isqrt gives floor(sqrt(n * 4^bits)); sqrt(n) is irrational for the
    # primes we use, so the enclosure [a, a+1] / 2^bits is always strict.
    scale = 1 << bits
    a = isqrt(n * scale * scale)
    return Fraction(a, scale), Fraction(a + 1, scale)


@dataclass(frozen=True)
class CosetSignature:
    """Coordinatewise residues mod p; equal signatures = same coset of
    the subgroup of p-divisible vectors."""

    p: int
    residues: tuple[tuple[int, int], ...]  # (generator index, residue in 1..p-1)

    @property
    def is_zero(self) -> bool:
        return not self.residues


@dataclass(frozen=True)
class ExponentVector:
    """Finitely supported integer coordinate vector over the generators.

    Canonical form: coordinates sorted by ascending generator index, no
    zero coefficients stored.  The real value is
    sum(coeff / sqrt(nth_prime(index))).
    """

    coords: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, data: dict[int, int]) -> ExponentVector:
        items = []
        for index, coeff in sorted(data.items()):
            if index < 1:
                raise ValueError("generator indices are 1-based")
            if coeff:
                items.append((index, int(coeff)))
        return cls(tuple(items))

    @classmethod
    def zero(cls) -> ExponentVector:
        return cls(())

    @classmethod
    def unit(cls, index: int, coeff: int = 1) -> ExponentVector:
        return cls.from_dict({index: coeff})

    @property
    def is_zero(self) -> bool:
        return not self.coords

    def as_dict(self) -> dict[int, int]:
        return dict(self.coords)

    def coefficient(self, index: int) -> int:
        for i, c in self.coords:
            if i == index:
                return c
        return 0

    def __add__(self, other: ExponentVector) -> ExponentVector:
        data = self.as_dict()
        for i, c in other.coords:
            data[i] = data.get(i, 0) + c
        return ExponentVector.from_dict(data)

    def __neg__(self) -> ExponentVector:
        return ExponentVector(tuple((i, -c) for i, c in self.coords))

    def __sub__(self, other: ExponentVector) -> ExponentVector:
        return self + (-other)

    def scale(self, k: int) -> ExponentVector:
        if k == 0:
            return ExponentVector.zero()
        return ExponentVector(tuple((i, c * k) for i, c in self.coords))

    def divided_by(self, k: int) -> ExponentVector:
        """Exact division of every coordinate; error if not divisible."""
        if any(c % k for _, c in self.coords):
            raise DomainError("coordinates are not all divisible by %d" % k)
        return ExponentVector(tuple((i, c // k) for i, c in self.coords))

    def signature(self, p: int) -> CosetSignature:
        """Coordinatewise reduction mod p (the coset of p-divisible vectors)."""
        residues = tuple((i, c % p) for i, c in self.coords if c % p)
        return CosetSignature(p, residues)

    @cached_property
    def _fast_enclosure(self) -> RealInterval:
        return enclose(self, _FAST_WIDTH)

    # Total order by real value.  Equality is coordinate equality; the
    # cached enclosures decide almost every strict comparison without a
    # fresh refinement.
    def __lt__(self, other: ExponentVector) -> bool:
        return compare(self, other) < 0

    def __le__(self, other: ExponentVector) -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other: ExponentVector) -> bool:
        return compare(self, other) > 0

    def __ge__(self, other: ExponentVector) -> bool:
        return compare(self, other) >= 0

    def __str__(self) -> str:
        inner = ", ".join(f"{i}:{c}" for i, c in self.coords)
        return f"[{inner}]"


def _bits_for(total_weight: Fraction, width: Fraction) -> int:
    # Smallest b with 2^b * width >= total_weight, via bit length:
    # floor(q) < 2^(floor(q).bit_length()) and q < floor(q) + 1.
    quotient = total_weight / width
    if quotient <= 1:
        return 0
    return (quotient.numerator // quotient.denominator).bit_length()


def enclose(vec: ExponentVector, width: Fraction) -> RealInterval:
    """Certified rational enclosure of the real value, hi - lo <= width."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if vec.is_zero:
        return RealInterval(Fraction(0), Fraction(0))
    # Term i contributes c/sqrt(q) = (c/q)*sqrt(q); at b bits the term
    # enclosure has width |c|/(q * 2^b).
    weight = sum(Fraction(abs(c), nth_prime(i)) for i, c in vec.coords)
    bits = _bits_for(weight, width)
    lo = Fraction(0)
    hi = Fraction(0)
    for i, c in vec.coords:
        q = nth_prime(i)
        slo, shi = _sqrt_bounds(q, bits)
        if c > 0:
            lo += Fraction(c, q) * slo
            hi += Fraction(c, q) * shi
        else:
            lo += Fraction(c, q) * shi
            hi += Fraction(c, q) * slo
    return RealInterval(lo, hi)


def compare(a: ExponentVector, b: ExponentVector) -> int:
    """-1, 0, or +1 by real value; 0 exactly when coordinates coincide."""
    if a.coords == b.coords:
        return 0
    ia, ib = a._fast_enclosure, b._fast_enclosure
    if ia.lo > ib.hi:
        return 1
    if ia.hi < ib.lo:
        return -1
    diff = a - b
    width = Fraction(1, 2)
    for _ in range(REFINEMENT_CAP):
        iv = enclose(diff, width)
        if iv.lo > 0:
            return 1
        if iv.hi < 0:
            return -1
        width /= 2
    raise PrecisionError(
        "interval refinement cap hit while separating distinct elements"
    )


def certify_in_open_interval(
    vec: ExponentVector, lo: Fraction, hi: Fraction
) -> bool:
    """Decide value in (lo, hi); requires value != lo, hi (true here since
    nonzero rationals are never group values)."""
    if vec.is_zero:
        return lo < 0 < hi
    width = Fraction(1, 2)
    for _ in range(REFINEMENT_CAP):
        iv = enclose(vec, width)
        if iv.strictly_inside(lo, hi):
            return True
        if iv.lo >= hi or iv.hi <= lo:
            return False
        width /= 2
    raise PrecisionError("interval refinement cap hit at interval boundary")


def find_p_multiple_near(
    target: Fraction,
    eps: Fraction,
    p: int,
    gen_count: int,
    coeff_bound: int,
) -> ExponentVector | None:
    """Bounded search for a vector with all coordinates divisible by p whose
    value is within eps of target, certified by interval enclosures.

    Searches boxes of growing max-coordinate size (breadth first) over the
    first gen_count generators with |coefficient| <= coeff_bound; within a
    box shell candidates are tried in lexicographic coordinate order, so
    the returned hit is the lexicographically smallest one in the first
    shell containing any.  Returns None when the search space is exhausted.
    """
    target = Fraction(target)
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    check_width = eps / 4
    for radius in range(0, coeff_bound + 1, p):
        if radius == 0:
            shells = [tuple([0] * gen_count)]
        else:
            choices = list(range(-radius, radius + 1, p))
            shells = (
                combo
                for combo in itertools.product(choices, repeat=gen_count)
                if max(abs(c) for c in combo) == radius
            )
        for combo in shells:
            vec = ExponentVector.from_dict(
                {i + 1: c for i, c in enumerate(combo)}
            )
            iv = enclose(vec, check_width)
            if iv.strictly_inside(target - eps, target + eps):
                return vec
    return None


def bounded_coset_representatives(
    p: int,
    count: int,
    *,
    shift_eps: Fraction = Fraction(3, 4),
    shift_coeff_bound: int | None = None,
) -> list[ExponentVector]:
    """Representatives s_1..s_count of the cosets of the i-th generators,
    shifted by p-divisible vectors so every value lies in (-1, 1).

    Each s_i keeps the coset signature of the i-th generator, the values
    are certified inside (-1, 1) by interval enclosures, and signatures
    are pairwise distinct.  Raises SearchExhausted if the bounded shift
    search fails (unreachable for these generators, whose values already
    lie in (0, 1); kept as a real code path for robustness).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    bound = shift_coeff_bound if shift_coeff_bound is not None else 2 * p
    reps = []
    for i in range(1, count + 1):
        gen = ExponentVector.unit(i)
        mid = enclose(gen, Fraction(1, 8)).midpoint
        shift = find_p_multiple_near(mid, shift_eps, p, i, bound)
        if shift is None:
            raise SearchExhausted(
                f"no p-divisible shift found for generator {i} within bounds"
            )
        rep = gen - shift
        if not certify_in_open_interval(rep, Fraction(-1), Fraction(1)):
            raise SearchExhausted(
                f"shifted representative for generator {i} not in (-1, 1)"
            )
        if rep.signature(p) != gen.signature(p):
            raise DomainError("shift left the coset (internal error)")
        reps.append(rep)
    signatures = {r.signature(p) for r in reps}
    if len(signatures) != count:
        raise DomainError("coset representatives are not pairwise distinct")
    return reps

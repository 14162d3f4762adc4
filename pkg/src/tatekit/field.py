"""Ball-precision exact arithmetic for the two valued-field backends.

``LaurentSeries`` models Laurent series over F_p with exponents in the
lattice (1/p^e)Z; ``HahnSum`` models finite sums over the square-root
exponent group of :mod:`tatekit.exponents` with F_p coefficients.  An
element is a finite explicit part plus an optional ball: ``cutoff = c``
means the element is the explicit part up to an unknown tail of
valuation >= c.  All explicit exponents sit strictly below the cutoff
and coefficients are nonzero mod p, so representations are canonical
and equality is structural.

Norms are written multiplicatively as e^(-v); ``NormValue`` carries the
exponent v, which is a Fraction for the Laurent backend and an
``ExponentVector`` for the Hahn backend.  Ordering of norms reverses
the ordering of exponents, and |0| = 0 is the minimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Union

from .errors import BackendMismatch, DomainError, PrecisionError
from .exponents import ExponentVector, _is_prime


@lru_cache(maxsize=None)
def _require_prime(p: int) -> int:
    if not _is_prime(p):
        raise DomainError(f"characteristic {p} is not prime")
    return p

Exponent = Union[Fraction, ExponentVector]

_ZERO = "zero"
_FINITE = "finite"
_AT_MOST = "at_most"

_EXACT = "exact"
_AT_LEAST = "at_least"


@dataclass(frozen=True)
class NormValue:
    """|x| = e^(-exponent), |0| = 0, or an upper bound e^(-exponent)."""

    kind: str
    exponent: Exponent | None = None

    @classmethod
    def zero(cls) -> NormValue:
        return cls(_ZERO)

    @classmethod
    def finite(cls, exponent: Exponent) -> NormValue:
        return cls(_FINITE, exponent)

    @classmethod
    def at_most(cls, exponent: Exponent) -> NormValue:
        return cls(_AT_MOST, exponent)

    @property
    def is_zero(self) -> bool:
        return self.kind == _ZERO

    @property
    def is_finite(self) -> bool:
        return self.kind == _FINITE

    @property
    def is_bound(self) -> bool:
        return self.kind == _AT_MOST

    def _check_same_scale(self, other: NormValue) -> None:
        if (
            self.exponent is not None
            and other.exponent is not None
            and isinstance(self.exponent, ExponentVector)
            != isinstance(other.exponent, ExponentVector)
        ):
            raise BackendMismatch("norms from different backends")

    def __mul__(self, other: NormValue) -> NormValue:
        self._check_same_scale(other)
        if self.is_zero or other.is_zero:
            return NormValue.zero()
        exponent = self.exponent + other.exponent
        if self.is_bound or other.is_bound:
            return NormValue.at_most(exponent)
        return NormValue.finite(exponent)

    def compare(self, other: NormValue) -> int:
        """-1/0/+1 as real numbers; raises PrecisionError when a bare
        upper bound cannot decide."""
        self._check_same_scale(other)
        if self.is_zero and other.is_zero:
            return 0
        if self.is_zero:
            if other.is_finite:
                return -1
            raise PrecisionError("comparison with a norm upper bound is undecidable")
        if other.is_zero:
            if self.is_finite:
                return 1
            raise PrecisionError("comparison with a norm upper bound is undecidable")
        if self.is_finite and other.is_finite:
            if self.exponent == other.exponent:
                return 0
            return 1 if self.exponent < other.exponent else -1
        # At least one side is only an upper bound e^(-c).
        if self.is_bound and other.is_finite:
            if self.exponent > other.exponent:
                return -1
            raise PrecisionError("comparison with a norm upper bound is undecidable")
        if other.is_bound and self.is_finite:
            if other.exponent > self.exponent:
                return 1
            raise PrecisionError("comparison with a norm upper bound is undecidable")
        raise PrecisionError("comparison of two norm upper bounds is undecidable")

    def root(self, p: int) -> NormValue:
        """The p-th root e^(-exponent/p); Laurent-scale exponents only."""
        if self.is_zero:
            return self
        if isinstance(self.exponent, ExponentVector):
            raise DomainError("p-th roots of Hahn-scale norms are not supported")
        return NormValue(self.kind, self.exponent / p)


def norm_max(a: NormValue, b: NormValue) -> NormValue:
    return a if a.compare(b) >= 0 else b


@dataclass(frozen=True)
class Valuation:
    """Result of reading off the leading exponent of an element."""

    kind: str
    value: Exponent | None = None

    @classmethod
    def exact(cls, value: Exponent) -> Valuation:
        return cls(_EXACT, value)

    @classmethod
    def at_least(cls, value: Exponent) -> Valuation:
        return cls(_AT_LEAST, value)

    @classmethod
    def zero(cls) -> Valuation:
        return cls(_ZERO)

    @property
    def is_exact(self) -> bool:
        return self.kind == _EXACT

    @property
    def is_at_least(self) -> bool:
        return self.kind == _AT_LEAST

    @property
    def is_zero(self) -> bool:
        return self.kind == _ZERO

    def to_norm(self) -> NormValue:
        if self.is_zero:
            return NormValue.zero()
        if self.is_exact:
            return NormValue.finite(self.value)
        return NormValue.at_most(self.value)


def _min_optional(a, b):
    # None plays the role of +infinity.
    if a is None:
        return b
    if b is None:
        return a
    return a if a <= b else b


def _lattice_level(exponent: Fraction, p: int) -> int:
    den = exponent.denominator
    level = 0
    while den % p == 0:
        den //= p
        level += 1
    if den != 1:
        raise DomainError(
            f"exponent {exponent} is not in the (1/{p}^e)Z lattice"
        )
    return level


@dataclass(frozen=True)
class LaurentSeries:
    """Laurent series over F_p with exponents in (1/p^e)Z plus a ball."""

    p: int
    terms: tuple[tuple[Fraction, int], ...]
    cutoff: Fraction | None = None

    @classmethod
    def make(cls, p: int, coeffs, cutoff=None) -> LaurentSeries:
        _require_prime(p)
        items = coeffs.items() if hasattr(coeffs, "items") else coeffs
        # Accumulate under integer-pair keys: hashing Fractions is the
        # dominant cost of series arithmetic otherwise.
        data: dict[tuple[int, int], int] = {}
        for exponent, coeff in items:
            exponent = Fraction(exponent)
            key = (exponent.numerator, exponent.denominator)
            data[key] = data.get(key, 0) + int(coeff)
        return cls._from_accumulated(p, data, cutoff)

    @classmethod
    def _from_accumulated(cls, p, data, cutoff) -> LaurentSeries:
        if cutoff is not None:
            cutoff = Fraction(cutoff)
            _lattice_level(cutoff, p)
        kept = []
        for (num, den), c in data.items():
            c %= p
            if not c:
                continue
            e = Fraction(num, den)
            if cutoff is not None and not e < cutoff:
                continue
            _lattice_level(e, p)
            kept.append((e, c))
        kept.sort()
        return cls(p, tuple(kept), cutoff)

    @classmethod
    def zero(cls, p: int) -> LaurentSeries:
        return cls.make(p, {})

    @classmethod
    def one(cls, p: int) -> LaurentSeries:
        return cls.make(p, {Fraction(0): 1})

    @classmethod
    def constant(cls, p: int, c: int) -> LaurentSeries:
        return cls.make(p, {Fraction(0): c})

    @classmethod
    def t_power(cls, p: int, exponent, coeff: int = 1) -> LaurentSeries:
        return cls.make(p, {Fraction(exponent): coeff})

    @classmethod
    def ball(cls, p: int, cutoff) -> LaurentSeries:
        return cls.make(p, {}, cutoff=cutoff)

    @property
    def is_zero(self) -> bool:
        """Exactly zero (no explicit part and no ball)."""
        return not self.terms and self.cutoff is None

    @cached_property
    def level(self) -> int:
        """Smallest e with all exponents (and the cutoff) in (1/p^e)Z."""
        level = 0
        for e, _ in self.terms:
            level = max(level, _lattice_level(e, self.p))
        if self.cutoff is not None:
            level = max(level, _lattice_level(self.cutoff, self.p))
        return level

    def coefficient(self, exponent) -> int:
        exponent = Fraction(exponent)
        for e, c in self.terms:
            if e == exponent:
                return c
        return 0

    def _check_compatible(self, other) -> LaurentSeries:
        if not isinstance(other, LaurentSeries):
            raise BackendMismatch(
                f"cannot combine Laurent series with {type(other).__name__}"
            )
        if self.p != other.p:
            raise BackendMismatch("characteristics differ")
        return other

    def __add__(self, other: LaurentSeries) -> LaurentSeries:
        self._check_compatible(other)
        data = {(e.numerator, e.denominator): c for e, c in self.terms}
        for e, c in other.terms:
            key = (e.numerator, e.denominator)
            data[key] = data.get(key, 0) + c
        return LaurentSeries._from_accumulated(
            self.p, data, _min_optional(self.cutoff, other.cutoff)
        )

    def __neg__(self) -> LaurentSeries:
        return LaurentSeries(
            self.p, tuple((e, self.p - c) for e, c in self.terms), self.cutoff
        )

    def __sub__(self, other: LaurentSeries) -> LaurentSeries:
        return self + (-other)

    def _vstar(self):
        if self.terms:
            return _min_optional(self.terms[0][0], self.cutoff)
        return self.cutoff

    def __mul__(self, other: LaurentSeries) -> LaurentSeries:
        self._check_compatible(other)
        if self.is_zero or other.is_zero:
            return LaurentSeries.zero(self.p)
        cutoff = None
        if other.cutoff is not None and self._vstar() is not None:
            cutoff = _min_optional(cutoff, self._vstar() + other.cutoff)
        if self.cutoff is not None and other._vstar() is not None:
            cutoff = _min_optional(cutoff, other._vstar() + self.cutoff)
        data: dict[tuple[int, int], int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                key = (e.numerator, e.denominator)
                data[key] = data.get(key, 0) + c1 * c2
        return LaurentSeries._from_accumulated(self.p, data, cutoff)

    def scalar_mul(self, k: int) -> LaurentSeries:
        k %= self.p
        if k == 0:
            return LaurentSeries.zero(self.p)
        return LaurentSeries(
            self.p, tuple((e, (c * k) % self.p) for e, c in self.terms), self.cutoff
        )

    def frobenius(self) -> LaurentSeries:
        """x^p, computed exactly: exponents scale by p, F_p coefficients fix."""
        return LaurentSeries(
            self.p,
            tuple(sorted((e * self.p, c) for e, c in self.terms)),
            None if self.cutoff is None else self.cutoff * self.p,
        )

    def pth_root(self) -> LaurentSeries:
        """The unique y with y^p = x; refines the exponent lattice."""
        return LaurentSeries(
            self.p,
            tuple(sorted((e / self.p, c) for e, c in self.terms)),
            None if self.cutoff is None else self.cutoff / self.p,
        )

    def valuation(self) -> Valuation:
        if self.terms:
            return Valuation.exact(self.terms[0][0])
        if self.cutoff is not None:
            return Valuation.at_least(self.cutoff)
        return Valuation.zero()

    def norm(self) -> NormValue:
        return self.valuation().to_norm()

    def residue(self) -> int:
        """Image in F_p of an element of the unit ball."""
        val = self.valuation()
        if val.is_zero:
            return 0
        if val.is_exact:
            if val.value < 0:
                raise DomainError("norm-exceeds-one: element has negative valuation")
            return self.coefficient(0)
        if val.value <= 0:
            raise PrecisionError(
                "residue is undetermined: ball reaches the unit sphere"
            )
        return 0

    def inverse(self, target_cutoff) -> LaurentSeries:
        """y with x*y = 1 + O(t^target), by a truncated geometric series.

        Exact (no ball) when x is an exact monomial; otherwise y carries
        a cutoff so that the product identity holds at the target.
        """
        val = self.valuation()
        if not val.is_exact:
            raise PrecisionError(
                "valuation-unknown: cannot invert a ball-only element"
            )
        tau = Fraction(target_cutoff)
        v0 = val.value
        c0 = self.coefficient(v0)
        lead_inv = LaurentSeries.make(self.p, {-v0: pow(c0, -1, self.p)})
        u = self * lead_inv - LaurentSeries.one(self.p)
        if u.is_zero:
            return lead_inv
        drop = u._vstar()
        if drop <= 0:
            raise DomainError("inverse: tail does not contract (internal error)")
        rounds = max(1, -((-tau) // drop))  # ceil(tau / drop)
        acc = LaurentSeries.one(self.p)
        power = LaurentSeries.one(self.p)
        for _ in range(1, rounds):
            power = power * (-u)
            acc = acc + power
        y = acc * lead_inv
        y_cut = _min_optional(y.cutoff, tau - v0)
        return LaurentSeries.make(self.p, dict(y.terms), y_cut)

    def __str__(self) -> str:
        from .parsing import format_laurent

        return format_laurent(self)


@dataclass(frozen=True)
class HahnSum:
    """Finite sum over the square-root exponent group with F_p coefficients."""

    p: int
    terms: tuple[tuple[ExponentVector, int], ...]
    cutoff: ExponentVector | None = None

    @classmethod
    def make(cls, p: int, coeffs, cutoff: ExponentVector | None = None) -> HahnSum:
        _require_prime(p)
        items = coeffs.items() if hasattr(coeffs, "items") else coeffs
        data: dict[ExponentVector, int] = {}
        for exponent, coeff in items:
            data[exponent] = (data.get(exponent, 0) + int(coeff)) % p
        kept = {
            e: c
            for e, c in data.items()
            if c and (cutoff is None or e < cutoff)
        }
        return cls(p, tuple(sorted(kept.items(), key=lambda item: item[0])), cutoff)

    @classmethod
    def zero(cls, p: int) -> HahnSum:
        return cls.make(p, {})

    @classmethod
    def one(cls, p: int) -> HahnSum:
        return cls.make(p, {ExponentVector.zero(): 1})

    @classmethod
    def constant(cls, p: int, c: int) -> HahnSum:
        return cls.make(p, {ExponentVector.zero(): c})

    @classmethod
    def t_power(cls, p: int, exponent: ExponentVector, coeff: int = 1) -> HahnSum:
        return cls.make(p, {exponent: coeff})

    @property
    def is_zero(self) -> bool:
        return not self.terms and self.cutoff is None

    def coefficient(self, exponent: ExponentVector) -> int:
        for e, c in self.terms:
            if e == exponent:
                return c
        return 0

    def support(self) -> tuple[ExponentVector, ...]:
        return tuple(e for e, _ in self.terms)

    def _check_compatible(self, other) -> HahnSum:
        if not isinstance(other, HahnSum):
            raise BackendMismatch(
                f"cannot combine Hahn sums with {type(other).__name__}"
            )
        if self.p != other.p:
            raise BackendMismatch("characteristics differ")
        return other

    def __add__(self, other: HahnSum) -> HahnSum:
        self._check_compatible(other)
        data = dict(self.terms)
        for e, c in other.terms:
            data[e] = data.get(e, 0) + c
        return HahnSum.make(self.p, data, _min_optional(self.cutoff, other.cutoff))

    def __neg__(self) -> HahnSum:
        return HahnSum(
            self.p, tuple((e, self.p - c) for e, c in self.terms), self.cutoff
        )

    def __sub__(self, other: HahnSum) -> HahnSum:
        return self + (-other)

    def _vstar(self):
        if self.terms:
            return _min_optional(self.terms[0][0], self.cutoff)
        return self.cutoff

    def __mul__(self, other: HahnSum) -> HahnSum:
        self._check_compatible(other)
        if self.is_zero or other.is_zero:
            return HahnSum.zero(self.p)
        cutoff = None
        if other.cutoff is not None and self._vstar() is not None:
            cutoff = _min_optional(cutoff, self._vstar() + other.cutoff)
        if self.cutoff is not None and other._vstar() is not None:
            cutoff = _min_optional(cutoff, other._vstar() + self.cutoff)
        data: dict[ExponentVector, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                data[e] = data.get(e, 0) + c1 * c2
        return HahnSum.make(self.p, data, cutoff)

    def scalar_mul(self, k: int) -> HahnSum:
        k %= self.p
        if k == 0:
            return HahnSum.zero(self.p)
        return HahnSum(
            self.p, tuple((e, (c * k) % self.p) for e, c in self.terms), self.cutoff
        )

    def frobenius(self) -> HahnSum:
        return HahnSum.make(
            self.p,
            {e.scale(self.p): c for e, c in self.terms},
            None if self.cutoff is None else self.cutoff.scale(self.p),
        )

    def pth_root(self) -> HahnSum:
        """Defined only when every exponent (and cutoff) is p-divisible."""
        for e, _ in self.terms:
            if not e.signature(self.p).is_zero:
                raise DomainError(
                    "not-a-pth-power: exponent outside the p-divisible subgroup"
                )
        cutoff = self.cutoff
        if cutoff is not None:
            if not cutoff.signature(self.p).is_zero:
                raise DomainError(
                    "not-a-pth-power: cutoff outside the p-divisible subgroup"
                )
            cutoff = cutoff.divided_by(self.p)
        return HahnSum.make(
            self.p, {e.divided_by(self.p): c for e, c in self.terms}, cutoff
        )

    def valuation(self) -> Valuation:
        if self.terms:
            return Valuation.exact(self.terms[0][0])
        if self.cutoff is not None:
            return Valuation.at_least(self.cutoff)
        return Valuation.zero()

    def norm(self) -> NormValue:
        return self.valuation().to_norm()

    def residue(self) -> int:
        val = self.valuation()
        if val.is_zero:
            return 0
        zero_vec = ExponentVector.zero()
        if val.is_exact:
            if val.value < zero_vec:
                raise DomainError("norm-exceeds-one: element has negative valuation")
            return self.coefficient(zero_vec)
        if not (zero_vec < val.value):
            raise PrecisionError(
                "residue is undetermined: ball reaches the unit sphere"
            )
        return 0

    def __str__(self) -> str:
        from .parsing import format_hahn

        return format_hahn(self)

"""Restricted power series with finite support and a Gauss-norm slack.

A ``TateElem`` is a finitely supported table of exact field coefficients
indexed by multi-indices, plus an optional slack bound: the element is
the explicit sum up to an unknown remainder of Gauss norm at most the
slack.  Normalization folds any coefficient whose norm does not exceed
the slack into the slack, so explicit coefficients always dominate and
the Gauss norm of a nonempty element is exact.

Operations: ring arithmetic with documented slack propagation, the Gauss
norm, unit and distinguished-order tests, the degree function that makes
the one-variable algebra Euclidean, shear automorphisms
X_i -> X_i +/- X_n^(a_i), a verified search for shears making given
elements distinguished in the last variable, and the projection killing
all but one variable.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import BackendMismatch, DomainError, PrecisionError, SearchExhausted
from .field import NormValue, norm_max

MultiIndex = tuple[int, ...]


@dataclass(frozen=True)
class DistinguishedReport:
    order: int
    dominant_norm: NormValue
    is_distinguished: bool


@dataclass(frozen=True)
class AutomorphismSpec:
    """Shear X_i -> X_i + X_n^(exponents[i-1]) for i < n, fixing X_n.

    The inverse substitutes X_i - X_n^(exponents[i-1]); arity is
    len(exponents) + 1.
    """

    exponents: tuple[int, ...]

    @property
    def arity(self) -> int:
        return len(self.exponents) + 1


@dataclass(frozen=True)
class TateElem:
    """Finitely supported series with exact coefficients and slack."""

    n: int
    char: int
    terms: tuple[tuple[MultiIndex, object], ...]
    slack: NormValue | None = None

    @classmethod
    def make(cls, n: int, char: int, coeffs, slack: NormValue | None = None) -> TateElem:
        items = coeffs.items() if hasattr(coeffs, "items") else coeffs
        data = {}
        for index, coeff in items:
            index = tuple(int(k) for k in index)
            if len(index) != n or any(k < 0 for k in index):
                raise DomainError(f"multi-index {index} invalid for arity {n}")
            if coeff.p != char:
                raise BackendMismatch("coefficient characteristic differs")
            if coeff.cutoff is not None:
                raise DomainError("coefficients must be exact (no ball)")
            if index in data:
                coeff = data[index] + coeff
            if not coeff.is_zero:
                data[index] = coeff
            elif index in data:
                del data[index]
        if slack is not None and slack.is_zero:
            slack = None
        if slack is not None:
            if not (slack.is_finite or slack.is_bound):
                raise DomainError("slack must be a norm value")
            slack = NormValue.finite(slack.exponent)
            data = {
                idx: c
                for idx, c in data.items()
                if c.norm().compare(slack) > 0
            }
        return cls(n, char, tuple(sorted(data.items(), key=lambda kv: kv[0])), slack)

    @classmethod
    def zero(cls, n: int, char: int) -> TateElem:
        return cls(n, char, ())

    @classmethod
    def constant(cls, n: int, coeff) -> TateElem:
        return cls.make(n, coeff.p, {tuple([0] * n): coeff})

    @classmethod
    def monomial(cls, n: int, index: MultiIndex, coeff) -> TateElem:
        return cls.make(n, coeff.p, {tuple(index): coeff})

    @property
    def is_zero(self) -> bool:
        """Exactly zero: empty explicit part and no slack."""
        return not self.terms and self.slack is None

    @property
    def is_exact(self) -> bool:
        return self.slack is None

    def coefficient(self, index: MultiIndex):
        index = tuple(index)
        for idx, c in self.terms:
            if idx == index:
                return c
        return None

    def total_degree(self) -> int:
        return max((sum(idx) for idx, _ in self.terms), default=0)

    def _check_compatible(self, other: TateElem) -> None:
        if not isinstance(other, TateElem):
            raise BackendMismatch("expected a restricted power series")
        if self.n != other.n:
            raise BackendMismatch("arity mismatch")
        if self.char != other.char:
            raise BackendMismatch("characteristics differ")

    def __add__(self, other: TateElem) -> TateElem:
        self._check_compatible(other)
        data = dict(self.terms)
        for idx, c in other.terms:
            data[idx] = data[idx] + c if idx in data else c
        slack = _combine_slack_max(self.slack, other.slack)
        return TateElem.make(self.n, self.char, data, slack)

    def __neg__(self) -> TateElem:
        return TateElem(
            self.n, self.char, tuple((idx, -c) for idx, c in self.terms), self.slack
        )

    def __sub__(self, other: TateElem) -> TateElem:
        return self + (-other)

    def __mul__(self, other: TateElem) -> TateElem:
        self._check_compatible(other)
        data = {}
        for i1, c1 in self.terms:
            for i2, c2 in other.terms:
                idx = tuple(a + b for a, b in zip(i1, i2))
                prod = c1 * c2
                data[idx] = data[idx] + prod if idx in data else prod
        candidates = []
        if self.slack is not None:
            g = _explicit_gauss(other)
            if not g.is_zero:
                candidates.append(self.slack * g)
        if other.slack is not None:
            g = _explicit_gauss(self)
            if not g.is_zero:
                candidates.append(other.slack * g)
        if self.slack is not None and other.slack is not None:
            candidates.append(self.slack * other.slack)
        slack = None
        for cand in candidates:
            slack = cand if slack is None else norm_max(slack, cand)
        return TateElem.make(self.n, self.char, data, slack)

    def scalar_mul(self, k: int) -> TateElem:
        return TateElem.make(
            self.n,
            self.char,
            {idx: c.scalar_mul(k) for idx, c in self.terms},
            self.slack,
        )

    def map_coefficients(self, fn) -> TateElem:
        return TateElem.make(
            self.n, self.char, {idx: fn(c) for idx, c in self.terms}, self.slack
        )

    def __str__(self) -> str:
        from .parsing import format_tate

        return format_tate(self)


def _combine_slack_max(a: NormValue | None, b: NormValue | None) -> NormValue | None:
    if a is None:
        return b
    if b is None:
        return a
    return norm_max(a, b)


def _explicit_gauss(f: TateElem) -> NormValue:
    best = NormValue.zero()
    for _, c in f.terms:
        n = c.norm()
        if best.is_zero or n.compare(best) > 0:
            best = n
    return best


def gauss_norm(f: TateElem) -> NormValue:
    """Maximum coefficient norm.  Exact whenever the explicit part is
    nonempty (normalization folds dominated coefficients into slack);
    a slack-only element yields only an upper bound."""
    if f.terms:
        return _explicit_gauss(f)
    if f.slack is None:
        return NormValue.zero()
    return NormValue.at_most(f.slack.exponent)


def is_unit(f: TateElem) -> bool:
    """True when the constant coefficient strictly dominates everything.

    Requires the slack to sit strictly below the constant term's norm
    (or an exact element); otherwise the question is undecidable at the
    stored precision.
    """
    zero_idx = tuple([0] * f.n)
    const = f.coefficient(zero_idx)
    const_norm = const.norm() if const is not None else NormValue.zero()
    if f.slack is not None:
        if const_norm.is_zero or const_norm.compare(f.slack) <= 0:
            raise PrecisionError(
                "undecidable-at-precision: slack reaches the constant term"
            )
    elif const_norm.is_zero:
        return False
    for idx, c in f.terms:
        if idx == zero_idx:
            continue
        if const_norm.compare(c.norm()) <= 0:
            return False
    return True


def _coefficients_along(g: TateElem, axis: int) -> dict[int, TateElem]:
    """Decompose along one variable: g = sum_k (coeff_k) * X_axis^k with
    coefficients in the remaining n-1 variables."""
    pos = axis - 1
    groups: dict[int, dict[MultiIndex, object]] = {}
    for idx, c in g.terms:
        k = idx[pos]
        rest = idx[:pos] + idx[pos + 1 :]
        groups.setdefault(k, {})[rest] = c
    return {
        k: TateElem.make(g.n - 1, g.char, table) for k, table in groups.items()
    }


def distinguished_order(g: TateElem, axis: int | None = None) -> DistinguishedReport:
    """Largest-index dominant criterion along the chosen variable.

    Writes g as a series in X_axis with coefficients in the other
    variables, finds the largest index s whose coefficient attains the
    Gauss norm (everything above is then strictly smaller), and tests
    that coefficient for being a unit.
    """
    if axis is None:
        axis = g.n
    if not 1 <= axis <= g.n:
        raise DomainError(f"axis {axis} out of range for arity {g.n}")
    if g.slack is not None:
        raise DomainError("distinguished order needs an exact element")
    if not g.terms:
        raise DomainError("zero-input: the zero series has no distinguished order")
    coeffs = _coefficients_along(g, axis)
    norms = {k: gauss_norm(c) for k, c in coeffs.items()}
    total = None
    for n in norms.values():
        total = n if total is None else norm_max(total, n)
    order = max(k for k, n in norms.items() if n.compare(total) == 0)
    return DistinguishedReport(order, total, is_unit(coeffs[order]))


def euclid_degree(f: TateElem) -> int:
    """Largest index attaining the Gauss norm (one variable only)."""
    if f.n != 1:
        raise DomainError("the Euclidean degree is defined in one variable")
    if f.slack is not None:
        raise DomainError("the Euclidean degree needs an exact element")
    if not f.terms:
        raise DomainError("zero-input: the zero series has no degree")
    total = _explicit_gauss(f)
    return max(idx[0] for idx, c in f.terms if c.norm().compare(total) == 0)


def apply_automorphism(
    spec: AutomorphismSpec, f: TateElem, inverse: bool = False
) -> TateElem:
    """Substitute X_i -> X_i +/- X_n^(a_i) for i < n and expand exactly."""
    n = spec.arity
    if f.n != n:
        raise BackendMismatch(
            f"automorphism arity {n} does not match series arity {f.n}"
        )
    sign = -1 if inverse else 1
    data: dict[MultiIndex, object] = {}
    for idx, coeff in f.terms:
        head, last = idx[:-1], idx[-1]
        # One binomial expansion per sheared variable.
        ranges = [range(k + 1) for k in head]
        for js in itertools.product(*ranges):
            factor = 1
            extra = 0
            for i, (k, j) in enumerate(zip(head, js)):
                factor *= math.comb(k, j) * (sign**j)
                extra += spec.exponents[i] * j
            factor %= f.char
            if factor == 0:
                continue
            new_idx = tuple(k - j for k, j in zip(head, js)) + (last + extra,)
            piece = coeff.scalar_mul(factor)
            data[new_idx] = data[new_idx] + piece if new_idx in data else piece
    return TateElem.make(f.n, f.char, data, f.slack)


def find_distinguishing_automorphism(gs: list[TateElem]) -> AutomorphismSpec:
    """Search for a shear making every input distinguished in X_n.

    Tries the identity-like zero exponent vector first, then the
    staircase family a_i = 1 + c * (D+1)^(n-i) for c = 0, 1, ... where D
    is the maximal total degree; every candidate is verified with
    distinguished_order rather than trusted.  The staircase at c = D+1
    provably works for finite supports, so the bound 1 + D^n is never
    hit; the error is kept as a defensive path.
    """
    if not gs:
        raise DomainError("need at least one series")
    n = gs[0].n
    char = gs[0].char
    for g in gs:
        if g.n != n or g.char != char:
            raise BackendMismatch("series from different algebras")
        if g.slack is not None:
            raise DomainError("search needs exact elements")
        if not g.terms:
            raise DomainError("zero-input: zero is never distinguished")
    if n == 1:
        return AutomorphismSpec(())
    degree = max(g.total_degree() for g in gs)
    weights = [(degree + 1) ** (n - 1 - i) for i in range(n - 1)]
    candidates = [tuple([0] * (n - 1))]
    for c in range(0, 2 + degree**n):
        candidates.append(tuple(1 + c * w for w in weights))
    for exponents in candidates:
        spec = AutomorphismSpec(exponents)
        if all(
            distinguished_order(apply_automorphism(spec, g), n).is_distinguished
            for g in gs
        ):
            return spec
    raise SearchExhausted("no distinguishing shear within the degree bound")


def project_kill_vars(f: TateElem, keep_axis: int) -> TateElem:
    """Send every variable except one to zero, yielding a one-variable
    series; the slack is preserved (projection never increases norms)."""
    if not 1 <= keep_axis <= f.n:
        raise DomainError(f"axis {keep_axis} out of range for arity {f.n}")
    pos = keep_axis - 1
    data = {}
    for idx, c in f.terms:
        if all(k == 0 for j, k in enumerate(idx) if j != pos):
            data[(idx[pos],)] = c
    return TateElem.make(1, f.char, data, f.slack)

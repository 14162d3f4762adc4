"""Seeded randomized invariant suites, shared by the CLI and the tests.

Each suite returns the number of failing trials (0 on a healthy build).
Samplers are deliberately small: desk-scale elements exercise every
code path while keeping the whole run under a second.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import gabber
from .exponents import ExponentVector, compare, enclose
from .field import HahnSum, LaurentSeries
from .frobenius import lift_splitting_tate, phi_standard
from .tate import TateElem, gauss_norm

DEFAULT_SEED = 20260810


def sample_exponent_vector(rng: random.Random, max_index=4, max_coeff=6):
    support = rng.sample(range(1, max_index + 1), k=rng.randint(0, max_index))
    return ExponentVector.from_dict(
        {i: rng.choice([c for c in range(-max_coeff, max_coeff + 1) if c]) for i in support}
    )


def sample_laurent(rng: random.Random, p, max_terms=3, min_v=-3, max_v=5):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        terms[Fraction(rng.randint(min_v, max_v))] = rng.randint(1, p - 1)
    return LaurentSeries.make(p, terms)


def sample_hahn(rng: random.Random, p, max_terms=3):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        terms[sample_exponent_vector(rng)] = rng.randint(1, p - 1)
    return HahnSum.make(p, terms)


def sample_tate(rng: random.Random, n, p, max_terms=3, max_exp=3):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        index = tuple(rng.randint(0, max_exp) for _ in range(n))
        terms[index] = sample_laurent(rng, p, max_terms=2)
    return TateElem.make(n, p, {k: v for k, v in terms.items() if not v.is_zero})


def suite_exponent_order(seed: int, trials: int) -> int:
    rng = random.Random(seed)
    failures = 0
    width = Fraction(1, 10**12)
    for _ in range(trials):
        a = sample_exponent_vector(rng)
        b = sample_exponent_vector(rng)
        c = sample_exponent_vector(rng)
        verdict = compare(a, b)
        ia, ib = enclose(a, width), enclose(b, width)
        if ia.lo > ib.hi and verdict != 1:
            failures += 1
        if ia.hi < ib.lo and verdict != -1:
            failures += 1
        if (verdict == 0) != (a.coords == b.coords):
            failures += 1
        if compare(a + c, b + c) != verdict:
            failures += 1
    return failures


def suite_strong_triangle(seed: int, trials: int) -> int:
    rng = random.Random(seed)
    failures = 0
    for _ in range(trials):
        p = rng.choice([2, 3, 5])
        if rng.random() < 0.5:
            x, y = sample_laurent(rng, p), sample_laurent(rng, p)
        else:
            x, y = sample_hahn(rng, p), sample_hahn(rng, p)
        nx, ny = x.norm(), y.norm()
        if nx.compare(ny) == 0:
            continue
        bigger = nx if nx.compare(ny) > 0 else ny
        if (x + y).norm().compare(bigger) != 0:
            failures += 1
    return failures


def suite_gauss_multiplicativity(seed: int, trials: int) -> int:
    rng = random.Random(seed)
    failures = 0
    for _ in range(trials):
        p = rng.choice([2, 3])
        n = rng.choice([1, 2])
        f = sample_tate(rng, n, p)
        g = sample_tate(rng, n, p)
        expected = gauss_norm(f) * gauss_norm(g)
        if gauss_norm(f * g).compare(expected) != 0:
            failures += 1
    return failures


def suite_splitting(seed: int, trials: int) -> int:
    rng = random.Random(seed)
    failures = 0
    for _ in range(trials):
        p = rng.choice([2, 3, 5])
        n = rng.choice([1, 2])
        phi = phi_standard(p)
        h = sample_tate(rng, n, p)
        f = sample_tate(rng, n, p)
        h_p = _tate_frobenius(h)
        lhs = lift_splitting_tate(phi, h_p * f)
        rhs = h * lift_splitting_tate(phi, f)
        if lhs != rhs:
            failures += 1
        if lift_splitting_tate(phi, _tate_frobenius(f)) != f:
            failures += 1
    return failures


def _tate_frobenius(f: TateElem) -> TateElem:
    powered = {
        tuple(k * f.char for k in idx): c.frobenius() for idx, c in f.terms
    }
    return TateElem.make(f.n, f.char, powered, f.slack)


def suite_gabber_distance(seed: int, trials: int) -> int:
    rng = random.Random(seed)
    failures = 0
    ctx = gabber.build_context(2, 4)
    for _ in range(trials):
        used = rng.sample(range(1, 5), k=rng.randint(0, 3))
        terms = {}
        for i in used:
            shift = sample_exponent_vector(rng, max_index=3, max_coeff=2).scale(2)
            terms[-ctx.rep(i) + shift] = 1
        g = HahnSum.make(2, terms)
        report = gabber.distance_lower_bound_check(ctx, g, 4)
        if not report.passed:
            failures += 1
    return failures


@dataclass(frozen=True)
class SuiteResult:
    name: str
    trials: int
    failures: int


def run_all(seed: int = DEFAULT_SEED, trials: int = 200) -> list[SuiteResult]:
    suites = [
        ("exponent-order", suite_exponent_order),
        ("strong-triangle", suite_strong_triangle),
        ("gauss-multiplicativity", suite_gauss_multiplicativity),
        ("splitting-identities", suite_splitting),
        ("gabber-distance", suite_gabber_distance),
    ]
    return [
        SuiteResult(name, trials, fn(seed, trials)) for name, fn in suites
    ]

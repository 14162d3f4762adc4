from fractions import Fraction

import pytest

from tatekit.errors import BackendMismatch, DomainError, PrecisionError
from tatekit.exponents import ExponentVector
from tatekit.field import HahnSum, LaurentSeries, NormValue
from tatekit.selftest import sample_hahn, sample_laurent

E1 = ExponentVector.unit(1)
E2 = ExponentVector.unit(2)


def L(p, terms, cutoff=None):
    return LaurentSeries.make(p, terms, cutoff)


class TestAdd:
    def test_doubling(self):
        t = LaurentSeries.t_power(3, 1)
        assert (t + t).terms == ((Fraction(1), 2),)

    def test_char_p_cancellation(self):
        p = 5
        t = LaurentSeries.t_power(p, 1)
        assert (t + t.scalar_mul(p - 1)).is_zero

    def test_ball_absorbs_small_terms(self):
        p = 3
        x = L(p, {0: 1}, cutoff=2)
        y = L(p, {2: 1})
        total = x + y
        assert total.terms == ((Fraction(0), 1),)
        assert total.cutoff == 2

    def test_backend_mismatch(self):
        with pytest.raises(BackendMismatch):
            LaurentSeries.one(2) + LaurentSeries.one(3)
        with pytest.raises(BackendMismatch):
            LaurentSeries.one(2) + HahnSum.one(2)


class TestMul:
    def test_half_powers(self):
        x = LaurentSeries.t_power(2, Fraction(1, 2))
        assert (x * x).terms == ((Fraction(1), 1),)
        assert x.level == 1 and (x * x).level == 0

    def test_hahn_monomials(self):
        x = HahnSum.t_power(5, -E1)
        y = HahnSum.t_power(5, -E2)
        assert (x * y).terms == ((-E1 - E2, 1),)

    def test_difference_of_squares(self):
        p = 5
        one = LaurentSeries.one(p)
        t = LaurentSeries.t_power(p, 1)
        prod = (one + t) * (one - t)
        assert prod == L(p, {0: 1, 2: -1})

    def test_cutoff_propagation(self):
        p = 3
        x = L(p, {1: 1}, cutoff=4)  # t + O(t^4)
        y = L(p, {0: 1}, cutoff=2)  # 1 + O(t^2)
        # min(v(x) + cut(y), v(y) + cut(x)) = min(1 + 2, 0 + 4) = 3
        assert (x * y).cutoff == 3


class TestValuation:
    def test_exact(self):
        x = L(7, {2: 1, 5: 1})
        v = x.valuation()
        assert v.is_exact and v.value == 2

    def test_ball_only(self):
        x = L(7, {}, cutoff=3)
        v = x.valuation()
        assert v.is_at_least and v.value == 3

    def test_zero(self):
        assert LaurentSeries.zero(7).valuation().is_zero


class TestInverse:
    def test_monomial_exact(self):
        t = LaurentSeries.t_power(5, 1)
        y = t.inverse(10)
        assert y == L(5, {-1: 1})
        assert y.cutoff is None

    def test_geometric(self):
        p = 5
        x = L(p, {0: 1, 1: -1})  # 1 - t
        y = x.inverse(3)
        assert y == L(p, {0: 1, 1: 1, 2: 1}, cutoff=3)
        product = x * y
        assert product.terms == ((Fraction(0), 1),)
        assert product.cutoff >= 3

    def test_ball_only_rejected(self):
        with pytest.raises(PrecisionError):
            L(5, {}, cutoff=1).inverse(3)

    def test_identity_up_to_target(self, rng):
        for _ in range(50):
            p = rng.choice([2, 3, 5])
            x = sample_laurent(rng, p)
            if not x.terms:
                continue
            tau = Fraction(rng.randint(1, 6))
            y = x.inverse(tau)
            residual = x * y - LaurentSeries.one(p)
            v = residual.valuation()
            assert v.is_zero or v.value >= tau


class TestFrobeniusAndRoot:
    def test_square_of_root(self):
        x = LaurentSeries.t_power(2, Fraction(1, 2))
        assert x.frobenius() == LaurentSeries.t_power(2, 1)

    def test_freshman_dream(self):
        p = 3
        x = LaurentSeries.one(p) + LaurentSeries.t_power(p, 1)
        assert x.frobenius() == L(p, {0: 1, p: 1})

    def test_ball_scaling(self):
        x = L(5, {}, cutoff=2)
        assert x.frobenius().cutoff == 10

    def test_root_examples(self):
        t = LaurentSeries.t_power(2, 1)
        root = t.pth_root()
        assert root == LaurentSeries.t_power(2, Fraction(1, 2))
        assert root.level == 1
        x = L(2, {0: 1, 2: 1})
        assert x.pth_root() == L(2, {0: 1, 1: 1})

    def test_hahn_root_requires_divisible_exponents(self):
        x = HahnSum.t_power(2, E1)
        with pytest.raises(DomainError):
            x.pth_root()
        y = HahnSum.t_power(2, E1.scale(2))
        assert y.pth_root() == HahnSum.t_power(2, E1)

    def test_roundtrip(self, rng):
        for _ in range(100):
            p = rng.choice([2, 3, 5])
            x = sample_laurent(rng, p)
            assert x.frobenius().pth_root() == x
            h = sample_hahn(rng, p)
            assert h.frobenius().pth_root() == h


class TestResidue:
    def test_constant_plus_t(self):
        assert L(5, {0: 3, 1: 1}).residue() == 3

    def test_positive_valuation(self):
        assert LaurentSeries.t_power(5, 1).residue() == 0

    def test_negative_valuation_rejected(self):
        with pytest.raises(DomainError):
            LaurentSeries.t_power(5, -1).residue()

    def test_ball_at_zero_rejected(self):
        with pytest.raises(PrecisionError):
            L(5, {}, cutoff=0).residue()

    def test_hahn_residue(self):
        x = HahnSum.constant(3, 2) + HahnSum.t_power(3, E1)
        assert x.residue() == 2
        with pytest.raises(DomainError):
            HahnSum.t_power(3, -E1).residue()

    def test_hahn_ball_residue(self):
        ball = HahnSum.make(3, {}, cutoff=E1)  # tail of valuation >= e_1 > 0
        assert ball.residue() == 0
        with pytest.raises(PrecisionError):
            HahnSum.make(3, {}, cutoff=-E1).residue()

    def test_ring_morphism_on_unit_ball(self, rng):
        for _ in range(100):
            p = rng.choice([2, 3, 5])
            x = sample_laurent(rng, p, min_v=0)
            y = sample_laurent(rng, p, min_v=0)
            assert (x + y).residue() == (x.residue() + y.residue()) % p
            assert (x * y).residue() == (x.residue() * y.residue()) % p


class TestNorm:
    def test_examples(self):
        assert L(11, {2: 1}).norm() == NormValue.finite(Fraction(2))
        assert LaurentSeries.constant(11, 7).norm() == NormValue.finite(Fraction(0))
        assert LaurentSeries.zero(11).norm() == NormValue.zero()

    def test_norm_value_comparisons(self):
        zero = NormValue.zero()
        small = NormValue.finite(Fraction(3))  # e^-3
        big = NormValue.finite(Fraction(-1))  # e^1
        bound = NormValue.at_most(Fraction(2))  # <= e^-2
        assert zero.compare(small) == -1 and small.compare(zero) == 1
        assert small.compare(big) == -1 and big.compare(small) == 1
        assert small.compare(small) == 0
        # A bound e^-2 decides against strictly larger finite norms only.
        assert bound.compare(big) == -1 and big.compare(bound) == 1
        with pytest.raises(PrecisionError):
            bound.compare(small)
        with pytest.raises(PrecisionError):
            bound.compare(zero)
        assert (small * big) == NormValue.finite(Fraction(2))
        assert (zero * bound) == zero
        assert (bound * small).is_bound

    def test_ball_only_norm_is_upper_bound(self):
        x = L(5, {}, cutoff=3)
        n = x.norm()
        assert n.is_bound and n.exponent == 3

    def test_strong_triangle_sampled(self, rng):
        for _ in range(300):
            p = rng.choice([2, 3, 5])
            if rng.random() < 0.5:
                x, y = sample_laurent(rng, p), sample_laurent(rng, p)
            else:
                x, y = sample_hahn(rng, p), sample_hahn(rng, p)
            nx, ny = x.norm(), y.norm()
            if nx.compare(ny) == 0:
                continue
            bigger = nx if nx.compare(ny) > 0 else ny
            assert (x + y).norm().compare(bigger) == 0

    def test_multiplicativity_sampled(self, rng):
        for _ in range(300):
            p = rng.choice([2, 3, 5])
            if rng.random() < 0.5:
                x, y = sample_laurent(rng, p), sample_laurent(rng, p)
            else:
                x, y = sample_hahn(rng, p), sample_hahn(rng, p)
            assert (x * y).norm().compare(x.norm() * y.norm()) == 0


class TestBallSoundness:
    def test_add_contains_representatives(self, rng):
        # Brute-force tail sampling: every representative of x and y sums
        # into the ball of x + y.
        for _ in range(60):
            p = rng.choice([2, 3])
            x = sample_laurent(rng, p, max_terms=2)
            y = sample_laurent(rng, p, max_terms=2)
            cx = Fraction(rng.randint(0, 4))
            cy = Fraction(rng.randint(0, 4))
            x_ball = LaurentSeries.make(p, dict(x.terms), cx)
            y_ball = LaurentSeries.make(p, dict(y.terms), cy)
            total = x_ball + y_ball
            for dx in (0, 1):
                for c1 in range(p):
                    for dy in (0, 1):
                        for c2 in range(p):
                            x_rep = LaurentSeries.make(
                                p, dict(x_ball.terms)
                            ) + LaurentSeries.make(p, {cx + dx: c1})
                            y_rep = LaurentSeries.make(
                                p, dict(y_ball.terms)
                            ) + LaurentSeries.make(p, {cy + dy: c2})
                            diff = (x_rep + y_rep) - LaurentSeries.make(
                                p, dict(total.terms)
                            )
                            v = diff.valuation()
                            assert v.is_zero or v.value >= total.cutoff

    def test_mul_contains_representatives(self, rng):
        for _ in range(40):
            p = 2
            x = sample_laurent(rng, p, max_terms=2, min_v=0, max_v=3)
            y = sample_laurent(rng, p, max_terms=2, min_v=0, max_v=3)
            if not x.terms or not y.terms:
                continue
            x_ball = LaurentSeries.make(p, dict(x.terms), 4)
            y_ball = LaurentSeries.make(p, dict(y.terms), 4)
            total = x_ball * y_ball
            for dx in (0, 1):
                for dy in (0, 1):
                    x_rep = x + LaurentSeries.make(p, {4 + dx: 1})
                    y_rep = y + LaurentSeries.make(p, {4 + dy: 1})
                    diff = (x_rep * y_rep) - LaurentSeries.make(
                        p, dict(total.terms)
                    )
                    v = diff.valuation()
                    assert v.is_zero or v.value >= total.cutoff


class TestLattice:
    def test_exponent_outside_lattice_rejected(self):
        with pytest.raises(DomainError):
            LaurentSeries.make(2, {Fraction(1, 3): 1})

    def test_level_promotion_on_mixed_ops(self):
        a = LaurentSeries.t_power(2, Fraction(1, 2))
        b = LaurentSeries.t_power(2, 1)
        assert (a + b).level == 1

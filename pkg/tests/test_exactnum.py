import math
import random
from fractions import Fraction

import numpy as np
import pytest

from genuscenter.errors import (
    DivisionByZeroError,
    MalformedRationalError,
    SingularMatrixError,
)
from genuscenter.exactnum import (
    Cyclotomic,
    ExactMatrix,
    cyc_normalize,
    inverse,
    linear_solve,
    matrix_rank,
    nullspace,
    rational,
    solve,
    zeta,
)


def golden():
    # phi = 1 + z5 + z5^4 is the golden ratio.
    return rational(1) + zeta(5, 1) + zeta(5, 4)


class TestNormalize:
    def test_zeta4_squared_is_minus_one(self):
        assert cyc_normalize(4, [(2, 1, 1)]) == rational(-1)
        assert zeta(4) * zeta(4) == rational(-1)

    def test_zeta6_squared_reduces(self):
        # Phi_6 = x^2 - x + 1, so z6^2 = z6 - 1.
        assert zeta(6) ** 2 == zeta(6) - rational(1)

    def test_golden_ratio_quadratic(self):
        phi = golden()
        assert phi * phi - phi - rational(1) == rational(0)
        assert abs(phi.embed() - (1 + math.sqrt(5)) / 2) < 1e-12

    def test_idempotent(self):
        v = cyc_normalize(12, [(7, 2, 3), (19, 1, 3), (0, -1, 1)])
        again = cyc_normalize(v.order, v.terms())
        assert again == v and again.terms() == v.terms()

    def test_zero_denominator_rejected(self):
        with pytest.raises(MalformedRationalError):
            cyc_normalize(4, [(1, 1, 0)])


class TestFieldOps:
    def test_sqrt2_squares_to_two(self):
        s = zeta(8) + zeta(8, 7)
        assert s * s == rational(2)

    def test_division_by_sqrt2(self):
        s = zeta(8) + zeta(8, 7)
        got = rational(1) / s
        assert got == s / rational(2)
        assert got * s == rational(1)

    def test_conjugate_of_zeta5(self):
        assert zeta(5).conjugate() == zeta(5, 4)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZeroError):
            rational(1) / Cyclotomic.zero(5)

    def test_cross_order_equality(self):
        assert zeta(2) == rational(-1)
        assert zeta(6, 3) == rational(-1)
        assert zeta(4, 2) == zeta(6, 3)

    @pytest.mark.parametrize("order", [1, 2, 3, 4, 5, 8, 12])
    def test_field_axioms_random(self, order):
        rng = random.Random(order * 7919)

        def rand_cyc():
            return Cyclotomic(
                order,
                {
                    rng.randrange(order): Fraction(rng.randint(-4, 4), rng.randint(1, 5))
                    for _ in range(3)
                },
            )

        for _ in range(25):
            a, b, c = rand_cyc(), rand_cyc(), rand_cyc()
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a * b == b * a
            if not a.is_zero():
                assert a * a.inverse() == rational(1)

    def test_embed_matches_float_recompute(self):
        rng = random.Random(11)
        for order in (3, 5, 8, 12):
            for _ in range(20):
                terms = [
                    (rng.randrange(order), rng.randint(-3, 3), rng.randint(1, 4))
                    for _ in range(3)
                ]
                v = cyc_normalize(order, terms)
                direct = sum(
                    (n / d) * np.exp(2j * np.pi * e / order) for e, n, d in terms
                )
                assert abs(v.embed() - direct) < 1e-9


class TestLinearSolve:
    def test_identity_rank(self):
        assert linear_solve(ExactMatrix.identity(3), "rank") == 3

    def test_golden_rank_one(self):
        phi = golden()
        m = ExactMatrix(2, 2, [[rational(1), phi], [phi, phi + rational(1)]])
        assert matrix_rank(m) == 1
        null = nullspace(m)
        assert len(null) == 1
        for row in m.data:
            acc = Cyclotomic.zero()
            for a, x in zip(row, null[0]):
                acc = acc + a * x
            assert acc.is_zero()

    def test_solve_half(self):
        m = ExactMatrix(1, 1, [[rational(2)]])
        assert solve(m, [rational(1)]) == [rational(1, 2)]

    def test_inverse_roundtrip(self):
        m = ExactMatrix(
            2, 2, [[zeta(4), rational(1)], [rational(0), zeta(8) + zeta(8, 7)]]
        )
        inv = inverse(m)
        assert (m @ inv) == ExactMatrix.identity(2)

    def test_singular_inverse_raises(self):
        m = ExactMatrix(2, 2, [[rational(1), rational(1)], [rational(1), rational(1)]])
        with pytest.raises(SingularMatrixError):
            inverse(m)

    def test_rank_matches_float(self):
        rng = random.Random(5)
        for trial in range(12):
            rows = rng.randint(2, 12)
            cols = rng.randint(2, 12)
            rank_target = rng.randint(1, min(rows, cols))
            # Build rows as random combinations of rank_target generators so the
            # exact rank is known to be at most rank_target (floats confirm it).
            gens = [
                [rational(rng.randint(-3, 3)) for _ in range(cols)]
                for _ in range(rank_target)
            ]
            data = []
            for _ in range(rows):
                coeffs = [rng.randint(-2, 2) for _ in range(rank_target)]
                row = []
                for j in range(cols):
                    acc = Cyclotomic.zero()
                    for g, cf in zip(gens, coeffs):
                        acc = acc + g[j] * rational(cf)
                    row.append(acc)
                data.append(row)
            m = ExactMatrix(rows, cols, data)
            exact = matrix_rank(m)
            float_rank = np.linalg.matrix_rank(m.embed(), tol=1e-9)
            assert exact == float_rank

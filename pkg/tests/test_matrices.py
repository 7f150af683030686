import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from balmatch.matrices import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    ZeroOneMatrix,
    integer_determinant,
    is_balanced,
    is_totally_balanced,
    is_totally_unimodular,
    matrix_of_sets,
)


def permanent_style_det(rows):
    """Reference determinant by Leibniz expansion over permutations."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        # count inversions for the sign
        inv = sum(
            1 for i in range(n) for j in range(i + 1, n) if seen[i] > seen[j]
        )
        sign = -1 if inv % 2 else 1
        prod = 1
        for i, j in enumerate(perm):
            prod *= rows[i][j]
        total += sign * prod
    return total


def random_01(rng, n, m):
    return [[rng.randint(0, 1) for _ in range(m)] for _ in range(n)]


CYCLE3 = ZeroOneMatrix(
    rows=("r1", "r2", "r3"),
    cols=("c1", "c2", "c3"),
    entries=((1, 1, 0), (0, 1, 1), (1, 0, 1)),
)

CYCLE4 = ZeroOneMatrix(
    rows=("r1", "r2", "r3", "r4"),
    cols=("c1", "c2", "c3", "c4"),
    entries=((1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1), (1, 0, 0, 1)),
)


class TestDeterminant:
    def test_matches_leibniz_expansion(self):
        rng = random.Random(1)
        for _ in range(300):
            n = rng.randint(1, 5)
            rows = random_01(rng, n, n)
            assert integer_determinant(rows) == permanent_style_det(rows)

    def test_empty_matrix(self):
        assert integer_determinant([]) == 1

    def test_cycle3_det(self):
        assert integer_determinant([list(r) for r in CYCLE3.entries]) == 2


class TestZeroOneMatrix:
    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            ZeroOneMatrix(rows=("r",), cols=("c",), entries=((2,),))

    def test_rejects_ragged(self):
        with pytest.raises(ValueError):
            ZeroOneMatrix(rows=("r",), cols=("c", "d"), entries=((1,),))

    def test_matrix_of_sets_layout(self):
        m = matrix_of_sets([{"a", "b"}, {"b"}], ["a", "b", "c"])
        assert m.rows == ("a", "b", "c")
        assert m.cols == ("{a,b}", "{b}")
        assert m.entries == ((1, 0), (1, 1), (0, 0))

    def test_matrix_of_sets_rejects_stray_element(self):
        with pytest.raises(ValueError):
            matrix_of_sets([{"z"}], ["a"])


class TestBalanced:
    def test_odd_cycle_fails(self):
        cert = is_balanced(CYCLE3)
        assert cert.verdict == FAIL
        assert cert.witness_rows == (0, 1, 2)
        assert cert.witness_cols == (0, 1, 2)

    def test_even_cycle_passes(self):
        assert is_balanced(CYCLE4).verdict == PASS

    def test_witness_recheck(self):
        rng = random.Random(2)
        for _ in range(200):
            n, m = rng.randint(1, 6), rng.randint(1, 6)
            mat = ZeroOneMatrix(
                rows=tuple(f"r{i}" for i in range(n)),
                cols=tuple(f"c{j}" for j in range(m)),
                entries=tuple(tuple(row) for row in random_01(rng, n, m)),
            )
            cert = is_balanced(mat)
            if cert.verdict != FAIL:
                continue
            sub = mat.submatrix(cert.witness_rows, cert.witness_cols)
            k = len(cert.witness_rows)
            assert k % 2 == 1 and k >= 3
            assert all(sum(row) == 2 for row in sub.entries)
            assert all(sum(col) == 2 for col in zip(*sub.entries))

    def test_cap_gives_inconclusive(self):
        big = matrix_of_sets(
            [{f"x{i}", f"x{(i + 1) % 14}"} for i in range(14)],
            [f"x{i}" for i in range(14)],
        )
        assert is_balanced(big, cap=12).verdict == INCONCLUSIVE
        assert is_balanced(big, cap=14).verdict == PASS

    def test_reduction_drops_thin_lines(self):
        # a pendant column cannot hide or create a two-per-line witness
        padded = ZeroOneMatrix(
            rows=CYCLE3.rows + ("r4",),
            cols=CYCLE3.cols + ("c4",),
            entries=tuple(row + (0,) for row in CYCLE3.entries) + ((0, 0, 0, 1),),
        )
        assert is_balanced(padded).verdict == FAIL

    def test_permutation_invariance(self):
        rng = random.Random(3)
        for _ in range(100):
            n, m = rng.randint(2, 5), rng.randint(2, 5)
            entries = random_01(rng, n, m)
            mat = ZeroOneMatrix(
                rows=tuple(f"r{i}" for i in range(n)),
                cols=tuple(f"c{j}" for j in range(m)),
                entries=tuple(tuple(r) for r in entries),
            )
            rp = rng.sample(range(n), n)
            cp = rng.sample(range(m), m)
            perm = mat.submatrix(rp, cp)
            assert is_balanced(mat).verdict == is_balanced(perm).verdict
            assert is_totally_balanced(mat).verdict == is_totally_balanced(perm).verdict
            assert (
                is_totally_unimodular(mat).verdict
                == is_totally_unimodular(perm).verdict
            )


class TestTotallyBalanced:
    def test_even_cycle_also_fails(self):
        cert = is_totally_balanced(CYCLE4)
        assert cert.verdict == FAIL
        assert len(cert.witness_rows) == 4

    def test_interval_matrix_passes(self):
        intervals = matrix_of_sets(
            [{"a", "b"}, {"b", "c"}, {"a", "b", "c"}, {"c"}], ["a", "b", "c"]
        )
        assert is_totally_balanced(intervals).verdict == PASS

    def test_disconnected_two_regular_is_not_a_witness(self):
        # two disjoint 3-cycles side by side: 6x6, two per line, but any
        # size-6 selection is not a single cycle; the 3x3 blocks still fail
        entries = [
            [1, 1, 0, 0, 0, 0],
            [0, 1, 1, 0, 0, 0],
            [1, 0, 1, 0, 0, 0],
            [0, 0, 0, 1, 1, 0],
            [0, 0, 0, 0, 1, 1],
            [0, 0, 0, 1, 0, 1],
        ]
        mat = ZeroOneMatrix(
            rows=tuple(f"r{i}" for i in range(6)),
            cols=tuple(f"c{j}" for j in range(6)),
            entries=tuple(tuple(r) for r in entries),
        )
        cert = is_totally_balanced(mat)
        assert cert.verdict == FAIL
        assert len(cert.witness_rows) == 3


class TestTotallyUnimodular:
    def test_cycle3_witness(self):
        cert = is_totally_unimodular(CYCLE3)
        assert cert.verdict == FAIL
        assert abs(cert.determinant) == 2
        sub = CYCLE3.submatrix(cert.witness_rows, cert.witness_cols)
        assert integer_determinant([list(r) for r in sub.entries]) == cert.determinant

    def test_interval_matrix_is_tu(self):
        intervals = matrix_of_sets(
            [{"a", "b"}, {"b", "c"}, {"a", "b", "c"}], ["a", "b", "c"]
        )
        assert is_totally_unimodular(intervals).verdict == PASS

    def test_tu_implies_balanced(self):
        rng = random.Random(4)
        for _ in range(200):
            n, m = rng.randint(1, 5), rng.randint(1, 5)
            mat = ZeroOneMatrix(
                rows=tuple(f"r{i}" for i in range(n)),
                cols=tuple(f"c{j}" for j in range(m)),
                entries=tuple(tuple(r) for r in random_01(rng, n, m)),
            )
            if is_totally_unimodular(mat).ok:
                assert is_balanced(mat).ok

    def test_totally_balanced_implies_balanced(self):
        rng = random.Random(6)
        for _ in range(200):
            n, m = rng.randint(1, 5), rng.randint(1, 5)
            mat = ZeroOneMatrix(
                rows=tuple(f"r{i}" for i in range(n)),
                cols=tuple(f"c{j}" for j in range(m)),
                entries=tuple(tuple(r) for r in random_01(rng, n, m)),
            )
            if is_totally_balanced(mat).ok:
                assert is_balanced(mat).ok


def brute_balanced(entries):
    """Reference balancedness: scan every odd-order square submatrix."""
    n, m = len(entries), len(entries[0]) if entries else 0
    for k in range(3, min(n, m) + 1, 2):
        for rsub in itertools.combinations(range(n), k):
            for csub in itertools.combinations(range(m), k):
                sub = [[entries[i][j] for j in csub] for i in rsub]
                if all(sum(r) == 2 for r in sub) and all(
                    sum(c) == 2 for c in zip(*sub)
                ):
                    return False
    return True


@given(st.integers(min_value=0, max_value=10**9))
@settings(max_examples=150, deadline=None)
def test_balanced_matches_brute_force(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 5), rng.randint(1, 5)
    entries = random_01(rng, n, m)
    mat = ZeroOneMatrix(
        rows=tuple(f"r{i}" for i in range(n)),
        cols=tuple(f"c{j}" for j in range(m)),
        entries=tuple(tuple(r) for r in entries),
    )
    assert is_balanced(mat).ok == brute_balanced(entries)

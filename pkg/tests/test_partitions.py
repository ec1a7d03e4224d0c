from math import comb, factorial

import pytest

from pmscheme.partitions import (
    Partition,
    branch_down,
    dimension,
    double,
    enumerate_partitions,
    even_census_below,
    fixed_point_count,
    hook_lengths,
    partition_count,
    z_factor,
)


def oracle_partitions(n: int, max_part: int | None = None) -> list[tuple[int, ...]]:
    """Independent generator: largest part first, bounded recursion."""
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in oracle_partitions(n - first, first):
            out.append((first,) + rest)
    return out


def oracle_tableau_count(shape: tuple[int, ...]) -> int:
    """Count standard fillings by walking down the lattice of subshapes."""
    if sum(shape) == 0:
        return 1
    total = 0
    for i in range(len(shape)):
        below = shape[i + 1] if i + 1 < len(shape) else 0
        if shape[i] > below:
            child = list(shape)
            child[i] -= 1
            if child[-1] == 0:
                child.pop()
            total += oracle_tableau_count(tuple(child))
    return total


class TestPartitionType:
    def test_canonical_form(self):
        assert Partition((3, 2, 2)).parts == (3, 2, 2)
        assert Partition([]).n == 0
        with pytest.raises(ValueError):
            Partition((1, 2))
        with pytest.raises(ValueError):
            Partition((2, 0))

    def test_equality_and_hashing(self):
        assert Partition((2, 1)) == Partition([2, 1])
        assert len({Partition((2, 1)), Partition((2, 1)), Partition((3,))}) == 2

    def test_text_roundtrip(self):
        for parts in [(5, 3, 1), (1,), ()]:
            lam = Partition(parts)
            assert Partition.from_text(lam.to_text()) == lam

    def test_conjugate(self):
        assert Partition((4, 2)).conjugate() == Partition((2, 2, 1, 1))
        assert Partition((3,)).conjugate() == Partition((1, 1, 1))


class TestEnumeration:
    def test_small_orders(self):
        assert [p.parts for p in enumerate_partitions(1)] == [(1,)]
        assert [p.parts for p in enumerate_partitions(3)] == [(3,), (2, 1), (1, 1, 1)]

    def test_zero(self):
        assert [p.parts for p in enumerate_partitions(0)] == [()]

    def test_against_independent_generator(self):
        for n in range(11):
            got = [p.parts for p in enumerate_partitions(n)]
            assert sorted(got) == sorted(oracle_partitions(n))
            assert len(got) == len(set(got)) == partition_count(n)

    def test_count_ten(self):
        assert len(list(enumerate_partitions(10))) == 42

    def test_reverse_lexicographic(self):
        for n in range(1, 9):
            seq = [p.parts for p in enumerate_partitions(n)]
            assert seq == sorted(seq, reverse=True)


class TestSmallOperations:
    def test_double(self):
        assert double(Partition((1, 1))) == Partition((2, 2))
        assert double(Partition((3,))) == Partition((6,))
        assert double(Partition((2, 1))) == Partition((4, 2))

    def test_z_factor(self):
        assert z_factor(Partition((1, 1, 1))) == 6
        assert z_factor(Partition((2, 1))) == 2
        assert z_factor(Partition((3,))) == 3

    def test_fixed_points(self):
        assert fixed_point_count(Partition((1, 1, 1))) == 3
        assert fixed_point_count(Partition((3,))) == 0
        assert fixed_point_count(Partition((2, 1))) == 1


class TestDimension:
    def test_one_row(self):
        for k in (1, 4, 9):
            assert dimension(Partition((k,))) == 1

    def test_hook_product_worked_example(self):
        assert [h for row in hook_lengths(Partition((4, 2))) for h in row] == [
            5, 4, 2, 1, 2, 1,
        ]
        assert dimension(Partition((4, 2))) == 720 // 80 == 9

    def test_two_rows_catalan(self):
        # f^{(k,k)} is the Catalan number, f^{(2,2,2)} its conjugate twin
        assert dimension(Partition((2, 2, 2))) == 5
        for k in range(1, 7):
            cat = comb(2 * k, k) // (k + 1)
            assert dimension(Partition((k, k))) == cat

    def test_against_tableau_count(self):
        for n in range(1, 8):
            for lam in enumerate_partitions(n):
                assert dimension(lam) == oracle_tableau_count(lam.parts)

    def test_burnside(self):
        for m in range(1, 11):
            assert sum(dimension(p) ** 2 for p in enumerate_partitions(m)) == factorial(m)


class TestBranching:
    def test_goldens(self):
        assert branch_down(Partition((3,))) == {Partition((2,))}
        assert branch_down(Partition((2, 1))) == {Partition((1, 1)), Partition((2,))}
        assert branch_down(Partition((4, 2))) == {Partition((3, 2)), Partition((4, 1))}

    def test_corner_count(self):
        for n in range(1, 10):
            for lam in enumerate_partitions(n):
                assert len(branch_down(lam)) == len(set(lam.parts))

    def test_dimension_consistency(self):
        for m in range(2, 11):
            for lam in enumerate_partitions(m):
                assert dimension(lam) == sum(dimension(mu) for mu in branch_down(lam))

    def test_empty_errors(self):
        with pytest.raises(ValueError):
            branch_down(Partition())


class TestEvenCensus:
    def test_worked_example(self):
        threshold = dimension(Partition((12, 4)))
        assert threshold == comb(16, 4) - comb(16, 3)
        hits = even_census_below(8, threshold)
        assert [(p.parts, d) for p, d in hits] == [((16,), 1), ((14, 2), 104)]
        assert 104 == comb(16, 2) - 16

    def test_tiny_thresholds(self):
        assert even_census_below(3, 1) == []
        assert [(p.parts, d) for p, d in even_census_below(3, 2)] == [((6,), 1)]

    def test_census_range(self):
        # only the two largest even shapes fall below the (2n-4,4) dimension
        for n in range(8, 13):
            threshold = dimension(Partition((2 * n - 4, 4)))
            hits = even_census_below(n, threshold)
            assert [p.parts for p, _ in hits] == [(2 * n,), (2 * n - 2, 2)]
            assert [d for _, d in hits] == [1, dimension(Partition((2 * n - 2, 2)))]

    def test_alternative_binomial_expression_differs(self):
        # the low-binomial variant does not reproduce the hook value; the
        # census must use the hook rule (cf. the verification report note)
        n = 8
        assert comb(2 * n - 4, 4) - comb(2 * n - 4, 3) != dimension(
            Partition((2 * n - 4, 4))
        )
        assert comb(4, 4) - comb(4, 3) == -3  # degenerate already at 2n = 8
        assert dimension(Partition((4, 4))) == 14

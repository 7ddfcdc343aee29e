from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crdeform.exact import QuadExt
from crdeform.linalg import Eliminator, InconsistentSystem, LinearSystem, kernel, rank, solve

entries = st.builds(
    lambda a, b: QuadExt(a, b, 2),
    st.fractions(min_value=-3, max_value=3, max_denominator=3),
    st.sampled_from([0, 0, 0, 1, -1, Fraction(1, 2)]),
)


@st.composite
def matrices(draw):
    m = draw(st.integers(1, 5))
    n = draw(st.integers(1, 5))
    # sparse-ish entries so that rank deficiency is common
    pick = st.one_of(st.just(QuadExt(0)), entries)
    rows = [[draw(pick) for _ in range(n)] for _ in range(m)]
    if m > 1 and draw(st.booleans()):
        k = draw(st.integers(0, m - 1))
        c = draw(entries)
        rows[-1] = [x + c * y for x, y in zip(rows[-1], rows[k])] if k != m - 1 else rows[-1]
    return rows


def laplace(a):
    if not a:
        return QuadExt(1)
    total = QuadExt(0)
    for j, x in enumerate(a[0]):
        if x:
            minor = [row[:j] + row[j + 1:] for row in a[1:]]
            term = x * laplace(minor)
            total = total + term if j % 2 == 0 else total - term
    return total


def minor_rank(a):
    """Largest size of a nonzero minor, by cofactor expansion."""
    m, n = len(a), len(a[0])
    for k in range(min(m, n), 0, -1):
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                if laplace([[a[i][j] for j in cols] for i in rows]):
                    return k
    return 0


def matvec(a, x):
    out = []
    for row in a:
        acc = QuadExt(0)
        for p, q in zip(row, x):
            acc = acc + p * q
        out.append(acc)
    return out


def test_spec_kernel_examples():
    assert kernel(LinearSystem(((1, 1), (2, 2)))) == [[1, -1]]
    assert kernel(LinearSystem(((1, 0, 0), (0, 1, 0), (0, 0, 1)))) == []
    r2 = QuadExt(0, 1, 2)
    ker = kernel(LinearSystem(((1, r2), (r2, 2))))
    assert len(ker) == 1 and matvec([[1, r2], [r2, 2]], ker[0]) == [0, 0]


def test_solve_and_inconsistency():
    res = solve(LinearSystem(((1, 1), (1, -1)), rhs=(3, 1)))
    assert res.particular == [2, 1]
    with pytest.raises(InconsistentSystem) as info:
        solve(LinearSystem(((1, 1), (2, 2)), rhs=(1, 3)))
    assert any(info.value.residual)


def test_ragged_matrix_rejected():
    with pytest.raises(ValueError):
        LinearSystem(((1, 2), (3,)))


def test_transform_handles_many_right_hand_sides():
    a = [[1, 2, 0], [0, 1, 1], [1, 3, 1]]
    el = Eliminator([{j: QuadExt(x) for j, x in enumerate(r) if x} for r in a], 3)
    assert el.rank == 2
    for b in ([1, 1, 2], [0, 0, 0], [5, -1, 4]):
        res = el.solve(b)
        assert res.consistent and matvec(a, res.particular) == b
    assert not el.solve([1, 0, 0]).consistent


@settings(max_examples=1000)
@given(matrices())
def test_kernel_matches_minor_expansion(a):
    r = minor_rank(a)
    n = len(a[0])
    ker = kernel(LinearSystem(tuple(tuple(row) for row in a)))
    assert rank(a) == r
    assert len(ker) == n - r
    for v in ker:
        assert all(x == 0 for x in matvec(a, v))
    if ker:
        # the kernel vectors are independent
        assert minor_rank(ker) == len(ker)

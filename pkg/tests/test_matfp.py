import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nullhom.matfp import (
    LinearAlgebraError,
    Mat,
    MatFp,
    affine_solutions,
    compose,
    enumerate_matrices,
    eye,
    kernel,
    mat,
    rank,
    rref,
    solve,
    zeros,
)
from nullhom.oracles import naive_kernel_dimension


@st.composite
def matrices(draw, p=None, rows=None, cols=None):
    p = draw(st.sampled_from([2, 3, 5])) if p is None else p
    r = draw(st.integers(0, 4)) if rows is None else rows
    c = draw(st.integers(0, 4)) if cols is None else cols
    ents = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c),
                         min_size=r, max_size=r))
    return MatFp(p, r, c, tuple(map(tuple, ents)))


def as_np(m: MatFp):
    return np.array(m.entries, dtype=np.int64).reshape(m.rows, m.cols)


def test_entries_must_be_reduced():
    with pytest.raises(ValueError):
        MatFp(2, 1, 1, ((2,),))
    assert mat(3, [[4, -1]]) == MatFp(3, 1, 2, ((1, 2),))


def test_mat_rejects_composite_field_size():
    with pytest.raises(ValueError):
        Mat(4)


@given(matrices(), st.data())
def test_matmul_agrees_with_numpy(a, data):
    b = data.draw(matrices(p=a.p, rows=a.cols))
    assert np.array_equal(as_np(a @ b), (as_np(a) @ as_np(b)) % a.p)


def test_compose_is_diagrammatic():
    x, y = mat(2, [[1, 1]]), mat(2, [[1], [0]])
    # x: 2 -> 1, then y: 1 -> 2
    assert compose(x, y) == y @ x


@pytest.mark.parametrize("m, k", [
    (mat(2, [[1, 0]]), mat(2, [[0], [1]])),
    (eye(2, 2), zeros(2, 2, 0)),
    (zeros(2, 1, 2), eye(2, 2)),
])
def test_kernel_examples(m, k):
    assert kernel(m) == k


@given(matrices(p=2))
def test_kernel_dimension_matches_counting_oracle(m):
    k = kernel(m)
    assert (m @ k).is_zero()
    assert rank(k) == k.cols
    assert k.cols == (naive_kernel_dimension([list(r) for r in m.entries]) if m.rows
                      else m.cols)


@given(matrices())
def test_rref_is_reduced(m):
    r, pivots = rref(m)
    assert rank(m) == len(pivots)
    for i, j in enumerate(pivots):
        assert r[i, j] == 1
        assert all(r[k, j] == 0 for k in range(r.rows) if k != i)


@given(matrices(), st.data())
def test_solve_recovers_the_unique_solution(a, data):
    x = data.draw(matrices(p=a.p, rows=a.cols))
    b = a @ x
    if rank(a) == a.cols:
        assert solve(a, b) == x
    else:
        with pytest.raises(LinearAlgebraError):
            solve(a, b)


def test_solve_reports_inconsistency():
    with pytest.raises(LinearAlgebraError):
        solve(zeros(2, 1, 1), eye(2, 1))


def test_affine_solutions_match_brute_force():
    # the centralizer of a Jordan block over F_3, as an affine system vs. by enumeration
    p = 3
    a = mat(p, [[1, 1], [0, 1]])

    def residual(xs):
        (x,) = xs
        return [x @ a - a @ x]

    got = affine_solutions(p, [(2, 2)], residual)
    brute = [m for m in enumerate_matrices(p, 2, 2) if (m @ a - a @ m).is_zero()]
    assert sorted(s[0].entries for s in got) == sorted(m.entries for m in brute)


def test_enumerate_matrices_counts():
    assert len(enumerate_matrices(2, 2, 2)) == 16
    assert len(enumerate_matrices(3, 1, 2)) == 9
    assert enumerate_matrices(2, 0, 3) == (zeros(2, 0, 3),)


def test_pushout_of_matrices_is_universal():
    s = Mat(2)
    for f, g in itertools.product(enumerate_matrices(2, 1, 1), enumerate_matrices(2, 2, 1)):
        po = s.pushout(f, g)
        assert compose(f, po.leg_from_B) == compose(g, po.leg_from_C)
        for d in range(3):
            for x in s.hom(1, d):
                for y in s.hom(2, d):
                    if compose(f, x) != compose(g, y):
                        continue
                    hits = [u for u in s.hom(po.apex, d)
                            if compose(po.leg_from_B, u) == x and compose(po.leg_from_C, u) == y]
                    assert hits == [s.copair(po, x, y)]

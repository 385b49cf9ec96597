import itertools
import random

import pytest
from hypothesis import given, strategies as st

from ncsets import unitriangular as ut
from ncsets.errors import DimensionMismatch, MixedFields, TooLarge, ZeroSuperdiagonal
from ncsets.gf import field_of_order


def dense_mul(F, A, B):
    n = len(A)
    out = [[0] * n for _ in range(n)]
    for i, j, k in itertools.product(range(n), repeat=3):
        out[i][j] = F.add(out[i][j], F.mul(A[i][k], B[k][j]))
    return out


def dense_commute(a, b):
    F = a.field
    return dense_mul(F, a.dense(), b.dense()) == dense_mul(F, b.dense(), a.dense())


def matrices(n, q):
    F = field_of_order(q)
    return st.tuples(*[st.integers(0, q - 1)] * ut.num_entries(n)).map(lambda e: ut.UTMatrix(n, F, e))


@pytest.mark.parametrize("n,q", [(3, 2), (3, 3), (4, 2), (4, 4), (5, 3), (6, 5)])
def test_mul_matches_dense(n, q):
    F = field_of_order(q)
    rng = random.Random(n * 100 + q)
    for _ in range(200):
        a, b = ut.random_matrix(n, F, rng), ut.random_matrix(n, F, rng)
        assert ut.mul(a, b).dense() == dense_mul(F, a.dense(), b.dense())


def test_commutes_iff_products_equal_exhaustive_uu4_f2():
    G = ut.enumerate_group(4, field_of_order(2))
    assert len(G) == 64
    for a, b in itertools.product(G, repeat=2):
        assert ut.commutes(a, b) == (ut.mul(a, b) == ut.mul(b, a)) == dense_commute(a, b)


def test_commutes_iff_products_equal_random_uu4_f3():
    F = field_of_order(3)
    rng = random.Random(2024)
    for _ in range(10_000):
        a, b = ut.random_matrix(4, F, rng), ut.random_matrix(4, F, rng)
        assert ut.commutes(a, b) == (ut.mul(a, b) == ut.mul(b, a))


@given(st.data())
def test_group_laws(data):
    n = data.draw(st.integers(2, 5))
    q = data.draw(st.sampled_from([2, 3, 4, 5, 9]))
    a, b, c = (data.draw(matrices(n, q)) for _ in range(3))
    e = ut.identity(n, a.field)
    assert ut.mul(ut.mul(a, b), c) == ut.mul(a, ut.mul(b, c))
    assert ut.mul(a, e) == a == ut.mul(e, a)
    assert ut.mul(a, ut.inverse(a)) == e == ut.mul(ut.inverse(a), a)
    assert ut.commutes(a, a) and ut.commutes(a, e)
    assert ut.commutes(a, b) == ut.commutes(b, a)


@pytest.mark.parametrize("n,q", [(3, 3), (4, 3), (5, 2), (5, 5)])
def test_phi_is_involutive_anti_automorphism(n, q):
    F = field_of_order(q)
    rng = random.Random(7)
    for _ in range(10_000 if (n, q) == (4, 3) else 1000):
        a, b = ut.random_matrix(n, F, rng), ut.random_matrix(n, F, rng)
        assert ut.phi(ut.phi(a)) == a
        assert ut.phi(ut.mul(a, b)) == ut.mul(ut.phi(b), ut.phi(a))
        assert ut.commutes(a, b) == ut.commutes(ut.phi(a), ut.phi(b))


@pytest.mark.parametrize("n,q", [(4, 2), (4, 3)])
def test_centralizer_order_for_nonzero_superdiagonal(n, q):
    F = field_of_order(q)
    G = ut.enumerate_group(n, F)
    s0 = [a for a in G if ut.has_nonzero_superdiagonal(a)]
    assert len(s0) == (q - 1) ** (n - 1) * q ** ((n - 1) * (n - 2) // 2)
    for a in s0:
        assert len(ut.centralizer(a, G)) == q ** (n - 1)


@pytest.mark.parametrize("n,q", [(4, 2), (4, 3), (5, 2)])
def test_abelian_centralizer_theorem(n, q):
    F = field_of_order(q)
    for x in ut.s0_set(n, F):
        assert ut.assert_abelian_centralizer(x)


def test_abelian_centralizer_large_sampled():
    F = field_of_order(5)
    rng = random.Random(3)
    for _ in range(5):
        x = ut.random_matrix(6, F, rng)
        x = ut.UTMatrix.from_dict(6, F, {**{(i, j): x[i, j] for i in range(1, 7) for j in range(i + 1, 7)},
                                         **{(i, i + 1): rng.randrange(1, 5) for i in range(1, 6)}})
        assert ut.assert_abelian_centralizer(x, sample=200, seed=1)


@given(st.data())
def test_conjugation_to_superdiagonal_form(data):
    n = data.draw(st.integers(2, 6))
    q = data.draw(st.sampled_from([2, 3, 4, 5, 7]))
    F = field_of_order(q)
    diag = [data.draw(st.integers(1, q - 1)) for _ in range(n - 1)]
    x = data.draw(matrices(n, q))
    x = ut.UTMatrix.from_dict(n, F, {**{(i, j): x[i, j] for i in range(1, n + 1) for j in range(i + 2, n + 1)},
                                     **{(i, i + 1): d for i, d in enumerate(diag, 1)}})
    xt, u = ut.conjugate_to_superdiagonal_form(x)
    assert xt.superdiagonal() == x.superdiagonal()
    assert ut.mul(ut.mul(ut.inverse(u), x), u) == xt


def test_zero_superdiagonal_rejected():
    F = field_of_order(3)
    x = ut.UTMatrix.from_superdiagonal(F, [1, 0, 2])
    with pytest.raises(ZeroSuperdiagonal):
        ut.conjugate_to_superdiagonal_form(x)
    with pytest.raises(ZeroSuperdiagonal):
        ut.assert_abelian_centralizer(x)


def test_centralizer_classes_partition():
    F = field_of_order(2)
    G = ut.enumerate_group(4, F)
    classes = ut.centralizer_classes(G, G)
    assert sum(len(c.members) for c in classes) == 64
    for c in classes:
        cent = set(ut.centralizer(c.representative, G))
        assert all(set(ut.centralizer(m, G)) == cent for m in c.members)


def test_text_roundtrip_and_errors():
    F3, F5 = field_of_order(3), field_of_order(5)
    a = ut.UTMatrix.from_dict(4, F3, {(1, 2): 1, (2, 4): 2})
    assert a.to_text() == "4;3;1,0,0,0,2,0"
    assert ut.parse_matrix(a.to_text()) == a
    with pytest.raises(MixedFields):
        ut.parse_matrix(a.to_text(), F5)
    with pytest.raises(MixedFields):
        ut.mul(a, ut.identity(4, F5))
    with pytest.raises(DimensionMismatch):
        ut.commutes(a, ut.identity(3, F3))
    with pytest.raises(TooLarge):
        ut.enumerate_group(6, F5)
    assert ut.group_order(4, F3) == 729

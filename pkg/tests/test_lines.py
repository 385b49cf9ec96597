import itertools
import random

import pytest
from hypothesis import given, strategies as st

from ncsets import lines as Ln
from ncsets import structures as S
from ncsets.clique import is_noncommuting_set
from ncsets.errors import (BadTriple, CommutingLineInput, FactorizabilityFailed, MinusThreeNotSquare,
                           SingularMatrix, UnsupportedField)
from ncsets.gf import field_of_order


def brute_kind(F, L):
    pts = Ln.points(F, L)
    flags = {S.cc(F, a, b) for a, b in itertools.combinations(pts, 2)}
    assert len(flags) == 1, "mixed line"
    return "Commuting" if flags.pop() else "NonCommuting"


def brute_cross(F, Li, Lj):
    return {(s, t) for s in F.elements() for t in F.elements()
            if S.cc(F, Ln.point_at(F, Li, s), Ln.point_at(F, Lj, t))}


def lines_st(q):
    el = st.integers(0, q - 1)
    vec = st.tuples(el, el, el)
    return st.tuples(vec, vec.filter(lambda d: d != (0, 0, 0))).map(lambda bd: Ln.Line(*bd))


def noncommuting_pair(q):
    F = field_of_order(q)
    return st.tuples(lines_st(q), lines_st(q)).filter(
        lambda p: not Ln.is_commuting_line(F, p[0]) and not Ln.is_commuting_line(F, p[1])
        and not Ln.same_line(F, p[0], p[1]))


@pytest.mark.parametrize("q", [2, 3])
def test_line_counts(q):
    F = field_of_order(q)
    all_lines = Ln.enumerate_lines(F)
    assert len(all_lines) == q**2 * (q**2 + q + 1)
    kinds = [brute_kind(F, L) for L in all_lines]
    assert kinds.count("NonCommuting") == q**4
    assert kinds.count("Commuting") == (q + 1) * q**2
    assert all(Ln.classify_line(F, L) == k for L, k in zip(all_lines, kinds))


def test_every_line_is_pure_exhaustive_q2():
    F = field_of_order(2)
    for base in itertools.product(range(2), repeat=3):
        for d in itertools.product(range(2), repeat=3):
            if d != (0, 0, 0):
                L = Ln.Line(base, d)
                assert brute_kind(F, L) == Ln.classify_line(F, L)


@pytest.mark.parametrize("q", [3, 5])
def test_every_line_is_pure_random(q):
    F = field_of_order(q)
    rng = random.Random(q)
    for _ in range(10_000):
        d = (0, 0, 0)
        while d == (0, 0, 0):
            d = tuple(rng.randrange(q) for _ in range(3))
        L = Ln.Line(tuple(rng.randrange(q) for _ in range(3)), d)
        assert brute_kind(F, L) == Ln.classify_line(F, L)


def test_classify_examples():
    F = field_of_order(3)
    assert Ln.classify_line(F, Ln.line_from_ints(F, (0, 1, 0), (1, 1, 1))) == "Commuting"
    assert Ln.classify_line(F, Ln.line_from_ints(F, (1, 1, 0), (1, 1, 2))) == "NonCommuting"
    assert Ln.classify_line(F, Ln.line_from_ints(F, (0, 1, 0), (0, 0, 1))) == "NonCommuting"


def test_gl2_preserves_cc_exhaustive_q2():
    F = field_of_order(2)
    Q = S.structure_Q(F).points
    for A in Ln.gl2_elements(F):
        for a, b in itertools.product(Q, repeat=2):
            assert S.cc(F, a, b) == S.cc(F, Ln.gl2_act(F, A, a), Ln.gl2_act(F, A, b))
        for L in Ln.enumerate_lines(F):
            assert Ln.classify_line(F, L) == Ln.classify_line(F, Ln.gl2_act_line(F, A, L))
            img = sorted(Ln.gl2_act(F, A, p) for p in Ln.points(F, L))
            assert img == sorted(Ln.points(F, Ln.gl2_act_line(F, A, L)))


def _mat_mul(F, A, B):
    return tuple(tuple(F.add(F.mul(A[i][0], B[0][j]), F.mul(A[i][1], B[1][j])) for j in range(2)) for i in range(2))


def test_gl2_is_group_action_and_preserves_cc_q5():
    F = field_of_order(5)
    mats = list(Ln.gl2_elements(F))
    rng = random.Random(5)
    I = ((1, 0), (0, 1))
    for _ in range(2000):
        A, B = rng.choice(mats), rng.choice(mats)
        p, r = (S.Point3(*(rng.randrange(5) for _ in range(3))) for _ in range(2))
        assert Ln.gl2_act(F, I, p) == p
        assert Ln.gl2_act(F, _mat_mul(F, A, B), p) == Ln.gl2_act(F, A, Ln.gl2_act(F, B, p))
        assert S.cc(F, p, r) == S.cc(F, Ln.gl2_act(F, A, p), Ln.gl2_act(F, A, r))


def test_gl2_singular_rejected():
    F = field_of_order(3)
    with pytest.raises(SingularMatrix):
        Ln.gl2_act(F, ((1, 2), (2, 1)), S.Point3(0, 0, 0))
    with pytest.raises(SingularMatrix):
        Ln.gl2_act_line(F, ((0, 0), (0, 0)), Ln.Line((0, 0, 0), (1, 0, 0)))


@given(st.sampled_from([2, 3, 5, 9]), st.data())
def test_translation_preserves_cc(q, data):
    F = field_of_order(q)
    el = st.integers(0, q - 1)
    u, v = data.draw(el), data.draw(el)
    a = S.Point3(data.draw(el), data.draw(el), data.draw(el))
    b = S.Point3(data.draw(el), data.draw(el), data.draw(el))
    assert S.cc(F, a, b) == S.cc(F, Ln.translate(F, u, v, a), Ln.translate(F, u, v, b))


@given(st.sampled_from([3, 4, 5, 7]), st.data())
def test_cross_params_and_exclusions(q, data):
    F = field_of_order(q)
    Li, Lj = data.draw(noncommuting_pair(q))
    cross = brute_cross(F, Li, Lj)
    assert Ln.cross_commuting_params(F, Li, Lj) == cross
    alpha, beta, gamma, delta = Ln.pair_coefficients(F, Li, Lj)
    if delta:
        assert len(cross) in (q - 1, 2 * q - 1)
    if Ln.pair_factorizability(F, Li, Lj):
        assert len(cross) == (2 * q - 1 if delta else 0)
    if Ln.pair_admissible(F, Li, Lj):
        ei, ej = Ln.pair_exclusions(F, Li, Lj)
        assert len(ei) <= 1 and len(ej) <= 1
        assert all(s in ei or t in ej for s, t in cross)
    else:
        with pytest.raises(FactorizabilityFailed):
            Ln.pair_exclusions(F, Li, Lj)


def test_pair_factorizability_examples():
    F = field_of_order(3)
    L1 = Ln.line_from_ints(F, (0, 1, 0), (1, 1, 2))
    L2 = Ln.line_from_ints(F, (0, 2, 1), (1, 1, 1))
    assert Ln.pair_factorizability(F, L1, L2)
    assert len(Ln.cross_commuting_params(F, L1, L2)) in (0, 2, 5)
    # parallel directions where the cross equation has solutions
    F5 = field_of_order(5)
    A = Ln.line_from_ints(F5, (0, 1, 0), (1, 1, 2))
    B = Ln.line_from_ints(F5, (1, 2, 0), (1, 1, 2))
    assert Ln.pair_coefficients(F5, A, B)[3] == 0
    assert Ln.cross_commuting_params(F5, A, B)
    assert not Ln.pair_factorizability(F5, A, B)
    with pytest.raises(ValueError):
        Ln.pair_factorizability(F, L1, L1)
    with pytest.raises(CommutingLineInput):
        Ln.pair_factorizability(F, L1, Ln.line_from_ints(F, (0, 1, 0), (1, 1, 1)))


def test_two_line_constructions():
    for q in (3, 5, 7, 9, 4, 8):
        F = field_of_order(q)
        pts = Ln.build_config_set(F, Ln.two_line_config(F))
        assert len(pts) == 2 * q
        assert is_noncommuting_set(pts, S.relation(F))
    F = field_of_order(5)
    pts = Ln.build_config_set(F, Ln.two_line_config_M(F))
    assert len(pts) == 10 and all(p.y for p in pts)


def test_three_line_config_f5():
    F = field_of_order(5)
    cfg = Ln.three_line_config(F)
    assert cfg.excluded == [{2}, {1}, {4}]
    pts = Ln.build_config_set(F, cfg)
    assert len(pts) == 12
    assert is_noncommuting_set(pts, S.relation(F))


@pytest.mark.parametrize("q,size", [(5, 13), (7, 19), (9, 25), (11, 31), (13, 37)])
def test_three_lines_plus_point(q, size):
    F = field_of_order(q)
    pts = Ln.construct_3line_plus_point(F)
    assert len(set(pts)) == size == 3 * q - 2
    assert is_noncommuting_set(pts, S.relation(F))


def test_three_lines_plus_point_unsupported():
    for q in (3, 4, 8):
        with pytest.raises(UnsupportedField):
            Ln.construct_3line_plus_point(field_of_order(q))


def test_single_line_config():
    F = field_of_order(5)
    L = Ln.line_from_ints(F, (1, 1, 0), (1, 1, 1))
    assert len(Ln.build_config_set(F, Ln.config_from_lines(F, [L]))) == 5


def test_build_config_set_rejects_bad_pairs():
    F = field_of_order(5)
    A = Ln.line_from_ints(F, (0, 1, 0), (1, 1, 2))
    B = Ln.line_from_ints(F, (1, 2, 0), (1, 1, 2))
    with pytest.raises(FactorizabilityFailed) as e:
        Ln.config_from_lines(F, [A, B])
    assert e.value.pair == (0, 1)
    cfg = Ln.LineConfig([A, B], [set(), set()])
    with pytest.raises(FactorizabilityFailed):
        Ln.build_config_set(F, cfg)


def test_four_line_q7_example():
    F = field_of_order(7)
    cfg = Ln.construct_4line(F, 1, 2, 3)
    assert cfg.info["b"][3] == 5 and cfg.info["z4"] == 6 and cfg.info["x4"] == 0
    eqs = [Ln.format_line_equations(F, L) for L in cfg.lines]
    assert eqs == ["x=5+t,y=1+t,z=5", "x=1+t,y=1+2t,z=1", "x=4+t,y=1+3t,z=4", "x=t,y=1+5t,z=6"]
    pts = Ln.build_config_set(F, cfg)
    assert len(pts) >= 4 * 7 - 12
    assert is_noncommuting_set(pts, S.relation(F))


@pytest.mark.parametrize("q", [13, 19, 25, 31])
def test_four_line_auto_triple(q):
    F = field_of_order(q)
    cfg = Ln.construct_4line(F)
    pts = Ln.build_config_set(F, cfg)
    assert len(pts) >= 4 * q - 12
    assert is_noncommuting_set(pts, S.relation(F))
    assert all(len(ex) <= 3 for ex in cfg.excluded)


def test_four_line_errors():
    with pytest.raises(MinusThreeNotSquare):
        Ln.construct_4line(field_of_order(5))
    with pytest.raises(UnsupportedField):
        Ln.construct_4line(field_of_order(9))
    with pytest.raises(BadTriple):
        Ln.construct_4line(field_of_order(7), 1, 1, 3)
    with pytest.raises(BadTriple):
        Ln.construct_4line(field_of_order(7), 0, 1, 3)


def test_size_floor():
    assert Ln.size_floor(4, 7) == 28 - 12 - 24
    assert Ln.size_floor(1, 5) == 5


def test_vm_and_om_membership():
    F = field_of_order(7)
    cfg = Ln.construct_4line(F, 1, 2, 3)
    w = Ln.assemble_vm_witness(F, cfg.lines)
    assert Ln.vm_membership(F, w)
    assert Ln.om_membership(F, w.lines)
    # make line 0 commuting: c = a y0 - b x0
    a, b, c, x, y, z = w.lines[0]
    bad = Ln.VmWitness([(a, b, F.det2(a, b, x, y), x, y, z)] + w.lines[1:], w.U, w.aux)
    assert not Ln.vm_membership(F, bad)
    assert not Ln.om_membership(F, bad.lines)
    single = Ln.assemble_vm_witness(F, cfg.lines[:1])
    assert Ln.vm_membership(F, single)
    # GL_2 moves O_m to itself
    A = ((2, 1), (1, 1))
    assert Ln.om_membership(F, [Ln.gl2_act_data(F, A, d) for d in w.lines])


def test_restrict_to_M():
    F = field_of_order(7)
    pts = Ln.construct_3line_plus_point(F)
    out, info = Ln.restrict_to_M(F, pts)
    assert all(p.kind == "M" and p.y for p in out)
    assert len(out) == len(pts) - info["dropped"]
    assert is_noncommuting_set(out, S.relation(F))
    plain, _ = Ln.restrict_to_M(F, pts, optimize=False)
    assert len(out) >= len(plain)


def test_search_m_lines():
    F5, F7 = field_of_order(5), field_of_order(7)
    cfg = Ln.search_m_lines(F5, 2, 2000, seed=1)
    assert cfg is not None and cfg.m == 2
    assert is_noncommuting_set(Ln.build_config_set(F5, cfg), S.relation(F5))
    cfg3 = Ln.search_m_lines(F7, 3, 20000, seed=1)
    assert cfg3 is not None
    assert is_noncommuting_set(Ln.build_config_set(F7, cfg3), S.relation(F7))
    again = Ln.search_m_lines(F7, 3, 20000, seed=1)
    assert again.lines == cfg3.lines and again.info == cfg3.info
    with pytest.raises(ValueError):
        Ln.search_m_lines(F5, 1, 10)


def test_config_text_roundtrip():
    F = field_of_order(5)
    cfg = Ln.three_line_config(F)
    G, back = Ln.read_config(cfg.to_text(F))
    assert G is F and back.lines == cfg.lines and back.excluded == cfg.excluded
    assert Ln.parse_line("1,2,3|0,0,1") == Ln.Line((1, 2, 3), (0, 0, 1))
    with pytest.raises(ValueError):
        Ln.Line((0, 0, 0), (0, 0, 0))

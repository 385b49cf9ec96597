import json

import pytest

from ncsets import clique as C
from ncsets import structures as S
from ncsets import unitriangular as ut
from ncsets import verify as V
from ncsets.gf import field_of_order


def bron_kerbosch_max(vertices, nbrs):
    """Plain Bron-Kerbosch with pivoting on Python sets; an independent oracle."""
    best = 0

    def expand(r, p, x):
        nonlocal best
        if not p and not x:
            best = max(best, r)
            return
        if r + len(p) <= best:
            return
        u = max(p | x, key=lambda w: len(nbrs[w] & p))
        for v in list(p - nbrs[u]):
            expand(r + 1, p & nbrs[v], x & nbrs[v])
            p = p - {v}
            x = x | {v}

    expand(0, set(vertices), set())
    return best


def omega_uu4_by_products(q):
    """Centralizer classes and edges taken from AB != BA, never from ut.commutes."""
    F = field_of_order(q)
    G = ut.enumerate_group(4, F)

    def comm(a, b):
        return ut.mul(a, b) == ut.mul(b, a)

    classes = {}
    for a in G:
        key = frozenset(k for k, b in enumerate(G) if comm(a, b))
        classes.setdefault(key, a)
    reps = list(classes.values())
    nbrs = {i: {j for j in range(len(reps)) if j != i and not comm(reps[i], reps[j])} for i in range(len(reps))}
    return len(reps), bron_kerbosch_max(range(len(reps)), nbrs)


def test_omega_uu4_f2_oracle():
    assert omega_uu4_by_products(2) == (23, 11)


@pytest.mark.slow
def test_omega_uu4_f3_oracle():
    assert omega_uu4_by_products(3) == (66, 32)


@pytest.mark.parametrize("q,expected", [(2, 2), (3, 6), (4, 12), (5, 16)])
def test_omega_M_values(q, expected):
    F = field_of_order(q)
    r = V.omega_M(F)
    assert r.exact and r.omega == expected
    assert V._check_clique_result(F, r)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_omega_M_anchor_matches_plain_search(q):
    F = field_of_order(q)
    plain = C.max_clique(C.build_graph(S.structure_M(F).points, S.relation(F)))
    assert plain.omega == V.omega_M(F).omega


@pytest.mark.parametrize("q,expected", [(2, 5), (3, 7)])
def test_omega_W3_anchor_matches_plain_search(q, expected):
    F = field_of_order(q)
    pts = S.t2_points(F, avoid_line=False)
    plain = C.max_clique(C.build_graph(pts, ut.commutes))
    r = V.omega_W3(F)
    assert r.exact and r.omega == plain.omega == expected


def test_uu4_bounds_q3_is_tight():
    F = field_of_order(3)
    b = V.uu4_bounds(F)
    assert b.lower == b.upper == 32
    assert b.a23_part == 25
    assert C.is_noncommuting_set(b.witness, ut.commutes)


def test_uu4_bounds_q5():
    F = field_of_order(5)
    b = V.uu4_bounds(F)
    assert b.w3 == 18 and b.upper == 139 and b.lower == 139
    assert C.is_noncommuting_set(b.witness, ut.commutes)


def test_block_conflict():
    for q in (2, 3, 5):
        a, b = V.block_conflict(field_of_order(q))
        assert ut.commutes(a, b)
        assert {S.classify_uu4(a), S.classify_uu4(b)} == {"N3", "N3anti"}


def test_theorem_A_q2_is_observe_only():
    rep = V.verify_theorem_A(field_of_order(2))
    assert rep.computed["omega_UU4"] == 11
    assert rep.observe and not rep.failed


def test_theorem_A_q3_direct():
    rep = V.verify_theorem_A(field_of_order(3))
    assert rep.computed["method"] == "direct"
    assert rep.computed["omega_UU4"] == 32 and rep.computed["omega_M"] == 6
    assert rep.verdict == V.REFUTED and rep.failed
    ce = rep.counterexample
    assert len(ce["maximum_set"]) == 32
    json.loads(rep.to_json())


def test_theorem_B():
    for q in (2, 3, 4, 5):
        rep = V.verify_theorem_B(field_of_order(q))
        assert rep.verdict == V.CONFIRMED, rep.to_json()


def test_theorem_B_q7_lower_bound_only():
    rep = V.verify_theorem_B(field_of_order(7), time_cap=2)
    assert rep.verdict == V.CONFIRMED
    assert rep.computed["omega_M_lower"] >= 14 and not rep.computed["omega_M_exact"]


@pytest.mark.parametrize("n,q", [(3, 2), (3, 3), (3, 5), (4, 2), (4, 3)])
def test_S0(n, q):
    rep = V.verify_S0(field_of_order(q), n)
    assert rep.verdict == V.CONFIRMED
    assert rep.computed["omega_S0"] == V.s0_formula(n, q) == (q - 1) ** (n - 2) * q ** ((n - 2) * (n - 3) // 2)


def test_T1_q2():
    rep = V.verify_T1(field_of_order(2))
    assert rep.verdict == V.CONFIRMED
    assert rep.computed["omega_T1"] == 5 and rep.computed["omega_T1_union_anti"] == 9


def test_is_ac_group():
    F = field_of_order(2)
    ok, _ = V.is_ac_group(S.t1_set(F))
    assert ok
    ok, witness = V.is_ac_group(ut.enumerate_group(4, F))
    assert not ok and witness is not None


def test_split_assembly_is_valid():
    F = field_of_order(5)
    asm = V.assemble_split_set(F, Ln_three_line_q(F))
    assert C.is_noncommuting_set(asm.elements, ut.commutes)
    assert asm.blocks["a23!=0"] == 121


def Ln_three_line_q(F):
    from ncsets import lines as Ln

    return Ln.build_config_set(F, Ln.three_line_config(F))


def test_blockwise_assembly_is_invalid():
    F = field_of_order(5)
    asm = V.assemble_uu4_set(F, S.construct_2q_set_M(F))
    assert C.first_commuting_pair(asm.elements, ut.commutes) is not None


def test_report_serialisation_and_suite():
    reps = V.run_suite("S0", [field_of_order(2), field_of_order(3)])
    assert [(r.theorem, r.q) for r in reps] == [("S0(n=3)", 2), ("S0(n=4)", 2), ("S0(n=3)", 3), ("S0(n=4)", 3)]
    tsv = V.to_tsv(reps)
    assert tsv.splitlines()[0].split("\t")[:4] == ["theorem", "q", "modulus", "verdict"]
    assert len(tsv.splitlines()) == 5
    for r in reps:
        d = json.loads(r.to_json())
        assert d["verdict"] == "Confirmed" and d["modulus"] == r.modulus
    skipped = V.run_suite("bounds", [field_of_order(3)])
    assert skipped[0].verdict == V.SKIPPED

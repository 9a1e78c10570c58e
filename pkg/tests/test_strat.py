import json

import pytest
from hypothesis import given, strategies as st

from tamestrat.errors import BadCliques, EmptyU, PartialClique, SingleBlock
from tamestrat.quiver import KRONECKER, builtin_types, parse_quiver, tube_ranks
from tamestrat.rings import (
    Adele, BaseField, Dedekind, Gamma, LaurentSeriesRing, LowerTriangular, Matrix, PowerSeriesRing,
    TameHereditary, TiltingEnd, UpperTriangular, ZeroRing, descriptor_from_json, triangular_k,
)
from tamestrat.strat import (
    Engine, StratReport, all_full_selections, expand_tilting, parse_cliques, rule_gamma,
    rule_hereditary, rule_tilting, rule_triangular, select_cliques, stratify_A, stratify_B,
    verify_report,
)

D4 = parse_quiver("D~4")
E8 = parse_quiver("E~8")


def leaf_keys(node):
    return sorted(leaf.label() for leaf in node.leaves())


def test_kronecker_counts():
    sel = parse_cliques("1", KRONECKER)
    a, b = stratify_A(KRONECKER, sel), stratify_B(KRONECKER, sel)
    assert a.length == 3 and a.factors == {"k": 2, "k[[x]]": 0, "k((x))": 1, "dedekind": 0}
    assert b.length == 2 and b.factors == {"k": 0, "k[[x]]": 1, "k((x))": 0, "dedekind": 1}
    assert verify_report(a) == [] and verify_report(b) == []


def test_d4_all_rank2():
    sel = parse_cliques("[2,2,2]", D4)
    a, b = stratify_A(D4, sel), stratify_B(D4, sel)
    assert a.length == 8 and a.factors["k"] == 5 and a.factors["k((x))"] == 3
    assert b.length == 7 and b.factors == {"k": 3, "k[[x]]": 3, "k((x))": 0, "dedekind": 1}


def test_e8_rank5():
    b = stratify_B(E8, parse_cliques("[5]", E8))
    assert b.length == 9 and b.factors == {"k": 7, "k[[x]]": 1, "k((x))": 0, "dedekind": 1}


def test_empty_and_partial():
    with pytest.raises(EmptyU):
        stratify_A(KRONECKER, parse_cliques("0", KRONECKER))
    sel = parse_cliques("[2:1]", D4)
    with pytest.raises(PartialClique):
        stratify_B(D4, sel)
    tree = expand_tilting(D4, sel)
    adele = tree.children[0]
    assert adele.ring == Adele(())
    assert adele.children[0].status == "zero"


def test_clique_parsing():
    assert parse_cliques("3", KRONECKER).full == (1, 1, 1)
    assert parse_cliques("2,2", D4).full == (2, 2)
    assert parse_cliques("[2, 1, 2:1]", D4).partial == ((2, 1),)
    with pytest.raises(BadCliques):
        parse_cliques("[2]", KRONECKER)
    with pytest.raises(BadCliques):
        parse_cliques("[2,2,2,2]", D4)
    with pytest.raises(BadCliques):
        parse_cliques("2:2", D4)
    with pytest.raises(BadCliques):
        parse_cliques("x", D4)


def test_rule_examples():
    left, right = rule_tilting(TiltingEnd("kronecker", (1,)))
    assert left == Adele((LaurentSeriesRing(),)) and right == TameHereditary("kronecker")
    left, _ = rule_tilting(TiltingEnd("D~4", (2, 2)))
    assert len(left.components) == 2
    with pytest.raises(EmptyU):
        rule_tilting(TiltingEnd("kronecker", ()))
    assert rule_triangular(UpperTriangular((BaseField(), PowerSeriesRing()), ("M",))) == (BaseField(), PowerSeriesRing())
    with pytest.raises(SingleBlock):
        rule_triangular(LowerTriangular((BaseField(),)))
    assert triangular_k(1) == BaseField()
    assert leaf_keys(Engine("A").expand(triangular_k(3))) == ["k"] * 3
    assert rule_gamma(Gamma(1)) == PowerSeriesRing()
    assert leaf_keys(Engine("B").expand(Gamma(3))) == sorted(["k[[x]]", "k", "k"])
    assert leaf_keys(Engine("B").expand(Gamma(2))) == sorted(["k[[x]]", "k"])
    assert rule_hereditary(TameHereditary("kronecker")) == triangular_k(2)
    assert len(Engine("A").expand(TameHereditary("D~4")).leaves()) == 5
    assert len(Engine("A").expand(TameHereditary("E~6")).leaves()) == 7


def test_morita_normalization():
    node = Engine("B").expand(Matrix(2, Dedekind("{x}")))
    assert node.status == "normalized" and node.children[0].ring == Dedekind("{x}")
    assert Engine("B").expand(Matrix(1, BaseField())).children[0].ring == BaseField()


def _expected(Q, s):
    return (
        {"k": Q.r, "k[[x]]": 0, "k((x))": s, "dedekind": 0},
        {"k": Q.r - 2, "k[[x]]": s, "k((x))": 0, "dedekind": 1},
    )


@pytest.mark.parametrize("Q", builtin_types(), ids=lambda Q: Q.name)
def test_all_types_all_selections(Q):
    assert sum(c - 1 for c in tube_ranks(Q)) == Q.r - 2
    for sel in all_full_selections(Q, 2):
        a, b = stratify_A(Q, sel), stratify_B(Q, sel)
        want_a, want_b = _expected(Q, sel.s)
        assert (a.factors, b.factors) == (want_a, want_b)
        assert a.length - b.length == 1
        assert verify_report(a) == verify_report(b) == []


def test_json_roundtrip_and_tamper():
    rep = stratify_B(D4, parse_cliques("[2,1]", D4))
    obj = json.loads(rep.dumps())
    back = StratReport.from_json(obj)
    assert back.dumps() == rep.dumps()
    assert verify_report(back) == []
    obj["length"] += 1
    assert any("length" in f for f in verify_report(StratReport.from_json(obj)))
    obj = json.loads(rep.dumps())
    obj["tree"]["children"][0]["children"].append({"ring": BaseField().to_json(), "status": "leaf"})
    assert verify_report(StratReport.from_json(obj))


@given(st.sampled_from([TiltingEnd("kronecker", (1, 1)), Gamma(4), triangular_k(3), Adele((LaurentSeriesRing(),)),
                        Matrix(2, Dedekind("{x}")), ZeroRing()]))
def test_descriptor_json(ring):
    assert descriptor_from_json(json.loads(json.dumps(ring.to_json()))) == ring


def test_select_unlimited_homogeneous():
    assert select_cliques(KRONECKER, [1] * 7).s == 7

import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from tamestrat.errors import NotAffine, NotRegular, ParseError
from tamestrat.quiver import (
    KRONECKER, builtin_types, classify, coxeter_matrix, defect, delta_bound, delta_multiplicity,
    euler_form, exceptional_ranks, parse_dim_vector, parse_quiver, quadratic_form, radical_vector,
    simple_regular_vectors, tube_ranks,
)

TYPES = builtin_types()


def test_euler_examples():
    assert euler_form((1, 1), (1, 1), KRONECKER) == 0
    assert euler_form((1, 0), (1, 0), KRONECKER) == 1
    for Q in TYPES:
        z = (0,) * Q.r
        assert euler_form(z, radical_vector(Q), Q) == 0


def test_radical_examples():
    assert radical_vector(KRONECKER) == (1, 1)
    h = radical_vector(parse_quiver("D~4"))
    assert sorted(h) == [1, 1, 1, 1, 2]
    e8 = radical_vector(parse_quiver("E~8"))
    assert sum(e8) == 30
    assert sorted(e8) == sorted([1, 2, 3, 4, 5, 6, 4, 2, 3])


@pytest.mark.parametrize("Q", TYPES, ids=lambda Q: Q.name)
def test_radical_spans_kernel_of_symmetrized_form(Q):
    """Independent check: sympy nullspace of C + C^T is spanned by h."""
    C = sympy.eye(Q.r)
    for a, b in Q.arrows:
        C[a - 1, b - 1] -= 1
    ker = (C + C.T).nullspace()
    assert len(ker) == 1
    v = ker[0] / min(abs(e) for e in ker[0] if e != 0)
    v = v * sympy.sign(v[0])
    assert tuple(int(e) for e in v) == radical_vector(Q)
    assert quadratic_form(radical_vector(Q), Q) == 0
    assert min(radical_vector(Q)) >= 1


def test_defect_examples():
    assert defect((1, 0), KRONECKER) == -1
    assert defect((1, 1), KRONECKER) == 0
    assert defect((0, 1), KRONECKER) == 1
    assert classify((1, 0), KRONECKER) == "preprojective"
    assert classify((0, 1), KRONECKER) == "preinjective"


@pytest.mark.parametrize("text,ranks", [
    ("kronecker", ()), ("D~4", (2, 2, 2)), ("E~6", (2, 3, 3)), ("E~7", (2, 3, 4)),
    ("E~8", (2, 3, 5)), ("A~(2,3)", (2, 3)), ("D~6", (2, 2, 4)),
])
def test_tube_ranks(text, ranks):
    Q = parse_quiver(text)
    assert tuple(sorted(tube_ranks(Q))) == ranks
    assert sum(c - 1 for c in tube_ranks(Q)) == Q.r - 2


def test_delta_examples():
    assert delta_multiplicity((1, 1), KRONECKER) == 2
    assert delta_bound(KRONECKER) == 4
    assert delta_bound(parse_quiver("D~4")) == 30
    assert delta_bound(parse_quiver("E~8")) == 270
    with pytest.raises(NotRegular):
        delta_multiplicity((0, 0), KRONECKER)
    with pytest.raises(NotRegular):
        delta_multiplicity((1, 0), KRONECKER)


@pytest.mark.parametrize("Q", TYPES, ids=lambda Q: Q.name)
def test_simple_regulars_within_bound(Q):
    srv = simple_regular_vectors(Q)
    assert len(srv["exceptional"]) == sum(exceptional_ranks(Q))
    for u in srv["homogeneous"] + srv["exceptional"]:
        assert defect(u, Q) == 0
        assert 0 < delta_multiplicity(u, Q) <= delta_bound(Q)


@pytest.mark.parametrize("Q", TYPES, ids=lambda Q: Q.name)
def test_coxeter_fixes_radical(Q):
    Phi = np.array(coxeter_matrix(Q))
    h = np.array(radical_vector(Q))
    assert (Phi @ h == h).all()


@pytest.mark.parametrize("Q", TYPES, ids=lambda Q: Q.name)
def test_euler_matches_arrow_formula(Q):
    """<d,e> = sum d_i e_i - sum over arrows i->j of d_i e_j, evaluated on unit vectors."""
    for i, j in itertools.product(range(1, Q.r + 1), repeat=2):
        d = [0] * Q.r
        e = [0] * Q.r
        d[i - 1], e[j - 1] = 1, 1
        expected = (i == j) - sum(1 for a, b in Q.arrows if (a, b) == (i, j))
        assert euler_form(d, e, Q) == expected


@given(st.sampled_from(TYPES), st.data())
def test_euler_bilinear(Q, data):
    vec = st.lists(st.integers(-5, 5), min_size=Q.r, max_size=Q.r)
    d, d2, e = data.draw(vec), data.draw(vec), data.draw(vec)
    s = [a + b for a, b in zip(d, d2)]
    assert euler_form(s, e, Q) == euler_form(d, e, Q) + euler_form(d2, e, Q)
    assert quadratic_form(d, Q) == euler_form(d, d, Q)
    h = radical_vector(Q)
    assert quadratic_form([a + b for a, b in zip(d, h)], Q) == quadratic_form(d, Q)


def test_parse_errors():
    with pytest.raises((ParseError, NotAffine)):
        parse_quiver("A5")
    with pytest.raises((ParseError, NotAffine)):
        parse_quiver("D~3")
    assert parse_dim_vector("(3,1)") == (3, 1)
    with pytest.raises(ParseError):
        parse_dim_vector("3;1")

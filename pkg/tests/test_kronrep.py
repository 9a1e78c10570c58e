import itertools
import random

import pytest
import sympy
from hypothesis import given, strategies as st

from tamestrat import kronrep as kr
from tamestrat.errors import FieldMismatch, LevelZero, NotIrreducible, ParseError
from tamestrat.fields import QQ, PrimeField
from tamestrat.poly import companion_matrix, parse_poly
from tamestrat.quiver import KRONECKER, defect, euler_form

F2, F3 = PrimeField(2), PrimeField(3)


def _mats(F, rows, cols):
    for vals in itertools.product(list(F.elements()), repeat=rows * cols):
        yield [list(vals[i * cols:(i + 1) * cols]) for i in range(rows)]


def _mul(F, A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), F.zero) for j in range(len(B[0]) if B else 0)]
            for i in range(len(A))]


def brute_hom_count(X, Y):
    """Count pairs (f1, f2) with f1 A_X = A_Y f2 and f1 B_X = B_Y f2 by enumeration."""
    F = X.field
    count = 0
    for f1 in _mats(F, Y.d1, X.d1):
        for f2 in _mats(F, Y.d2, X.d2):
            ok = True
            for MX, MY in ((X.A, Y.A), (X.B, Y.B)):
                lhs = _mul(F, f1, [list(r) for r in MX]) if X.d1 else [[F.zero] * X.d2 for _ in range(Y.d1)]
                rhs = _mul(F, [list(r) for r in MY], f2) if Y.d2 else [[F.zero] * X.d2 for _ in range(Y.d1)]
                if lhs != rhs:
                    ok = False
                    break
            if ok:
                count += 1
    return count


def test_spec_examples():
    V = kr.simple_regular_V(F3)
    Vx = kr.functor_F([[0]], F3)
    assert Vx == kr.KronRep(F3, 1, 1, [[1]], [[0]])
    assert kr.hom_space(V, V).dimension == 1
    assert kr.hom_space(V, Vx).dimension == 0
    assert kr.hom_space(V, kr.zero_rep(F3)).dimension == 0
    assert kr.ext_dim(V, V) == 1
    assert kr.ext_dim(V, Vx) == 0
    assert defect(V.dim, KRONECKER) == 0
    P1, P2 = kr.projective(F3, 1), kr.projective(F3, 2)
    for Y in (P1, P2, kr.regular_module_R(F3)):
        assert kr.ext_dim(P1, Y) == 0
        assert kr.ext_dim_oracle(P1, Y) == 0


def test_regular_module_dimension():
    assert kr.regular_module_R(F3).dim == (3, 1)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        kr.hom_space(kr.simple_regular_V(F2), kr.simple_regular_V(F3))


@pytest.mark.parametrize("seed", range(12))
def test_hom_matches_enumeration_f2(seed):
    r = random.Random(seed)
    X, Y = kr.random_rep(F2, r, 2), kr.random_rep(F2, r, 2)
    assert 2 ** kr.hom_space(X, Y).dimension == brute_hom_count(X, Y)


def test_hom_basis_elements_are_morphisms(rng):
    for _ in range(30):
        X, Y = kr.random_rep(F3, rng, 3), kr.random_rep(F3, rng, 3)
        for f in kr.hom_space(X, Y).basis:
            assert kr.is_morphism(f, X, Y)


def test_hom_over_q_matches_sympy(rng):
    """Intertwiner nullspace over Q vs sympy's rank."""
    for _ in range(15):
        d1, d2 = rng.randint(1, 3), rng.randint(1, 3)
        mk = lambda: [[rng.randint(-2, 2) for _ in range(d2)] for _ in range(d1)]  # noqa: E731
        X = kr.KronRep(QQ, d1, d2, mk(), mk())
        Y = kr.KronRep(QQ, d1, d2, mk(), mk())
        f1 = sympy.Matrix(d1, d1, sympy.symbols(f"a0:{d1 * d1}"))
        f2 = sympy.Matrix(d2, d2, sympy.symbols(f"b0:{d2 * d2}"))
        unknowns = list(f1) + list(f2)
        eqs = []
        for MX, MY in ((X.A, Y.A), (X.B, Y.B)):
            mx = sympy.Matrix([[v.value for v in row] for row in MX])
            my = sympy.Matrix([[v.value for v in row] for row in MY])
            eqs += list(f1 * mx - my * f2)
        system = sympy.Matrix([[sympy.diff(e, u) for u in unknowns] for e in eqs])
        assert kr.hom_space(X, Y).dimension == len(unknowns) - system.rank()


@given(st.integers(0, 2**32))
def test_hom_minus_ext_is_euler(seed):
    r = random.Random(seed)
    X, Y = kr.random_rep(F3, r), kr.random_rep(F3, r)
    assert kr.hom_space(X, Y).dimension - kr.ext_dim_oracle(X, Y) == euler_form(X.dim, Y.dim, KRONECKER)
    assert kr.ext_dim(X, Y) == kr.ext_dim_oracle(X, Y) >= 0


def test_delta_of_V():
    V, R = kr.simple_regular_V(F3), kr.regular_module_R(F3)
    assert kr.hom_space(V, R).dimension == 0
    assert kr.ext_dim_oracle(V, R) == 2


def test_functor_companion_of_x_squared():
    X = kr.functor_F(companion_matrix(parse_poly("x^2", F2)), F2)
    assert X == kr.p_ray(parse_poly("x", F2), 2)
    assert kr.hom_space(X, X).dimension == 2
    assert kr.is_indecomposable(X) is True
    assert kr.is_indecomposable(kr.direct_sum(kr.simple_regular_V(F2), kr.simple_regular_V(F2))) is False
    assert kr.is_indecomposable(kr.simple_regular_V(QQ)) is True  # End = k decides it
    assert kr.is_indecomposable(kr.v_ray(QQ, 2)) is None


def _subspaces(F, n):
    vecs = [tuple(v) for v in itertools.product(list(F.elements()), repeat=n)]
    spaces = set()
    for k in range(n + 1):
        for gens in itertools.combinations(vecs, k):
            span = {tuple(F.zero for _ in range(n))}
            for g in gens:
                span |= {tuple(a + c * b for a, b in zip(s, g)) for s in span for c in F.elements()}
            spaces.add(frozenset(span))
    return spaces


def test_companion_x2_x_1_is_simple_regular():
    """No subrepresentation of dimension (1, 1); (U1, 0) is always a sub since the sink simple is projective."""
    X = kr.functor_F(companion_matrix(parse_poly("x^2+x+1", F2)), F2)
    assert X.dim == (2, 2)
    subs = _subspaces(F2, 2)
    proper = 0
    for U1 in subs:
        for U2 in subs:
            closed = all(
                tuple(sum((M[i][j] * v[j] for j in range(2)), F2.zero) for i in range(2)) in U1
                for v in U2 for M in (X.A, X.B)
            )
            if closed and len(U1) == len(U2) == 2:
                proper += 1
    assert proper == 0


def test_functor_fully_faithful(rng):
    for _ in range(40):
        a, b = rng.randint(1, 2), rng.randint(1, 2)
        M = [[F2.random_element(rng) for _ in range(a)] for _ in range(a)]
        N = [[F2.random_element(rng) for _ in range(b)] for _ in range(b)]
        intertwiners = sum(
            1 for f in _mats(F2, b, a) if _mul(F2, f, M) == _mul(F2, N, f)
        )
        assert 2 ** kr.hom_space(kr.functor_F(M, F2), kr.functor_F(N, F2)).dimension == intertwiners


@pytest.mark.parametrize("text,p,n", [("x", 2, 3), ("x^2+x+1", 2, 2), ("x+1", 2, 4), ("x^2+1", 3, 3)])
def test_prufer_truncation(text, p, n):
    poly = parse_poly(text, PrimeField(p))
    rep = kr.prufer_end_truncation(poly, n)
    assert rep.ok
    assert rep.end_dimension == n * poly.degree
    assert rep.nilpotent_index == n


def test_prufer_V_marker():
    rep = kr.prufer_end_truncation("V", 1, F3)
    assert rep.ok and rep.end_dimension == 1
    assert kr.prufer_end_truncation("V", 4, F2).end_dimension == 4


def test_prufer_errors():
    with pytest.raises(LevelZero):
        kr.prufer_end_truncation(parse_poly("x", F2), 0)
    with pytest.raises(NotIrreducible):
        kr.prufer_end_truncation(parse_poly("x^2+1", F2), 2)


def test_json_roundtrip(tmp_path, rng):
    X = kr.random_rep(F3, rng)
    path = tmp_path / "x.json"
    X.dump(path)
    assert kr.KronRep.load(path) == X
    with pytest.raises(ParseError):
        kr.KronRep.from_json({"field": "Fp(3)"})

"""Finite-dimensional representations of the Kronecker quiver 2 ⇉ 1.

A representation is a pair of d1 x d2 matrices ``A`` (arrow α) and ``B``
(arrow β) mapping the space at the source 2 to the space at the sink 1.
Hom is computed as the nullspace of the intertwiner equations; Ext^1 both by
the Euler form and, independently, as the cokernel of
Hom(P_0, Y) -> Hom(P_1, Y) for the standard projective presentation of X.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Optional, Union

from . import linalg as la
from .errors import FieldMismatch, LevelZero, NotIrreducible, ParseError
from .extfield import make_ext_field, parse_field
from .fields import Field, FieldElement
from .poly import Poly, companion_matrix, is_irreducible
from .quiver import KRONECKER, euler_form


@dataclass(frozen=True, eq=False)
class KronRep:
    field: Field
    d1: int
    d2: int
    A: tuple
    B: tuple

    def __post_init__(self):
        for name in ("A", "B"):
            M = getattr(self, name)
            if len(M) != self.d1 or any(len(row) != self.d2 for row in M):
                raise ValueError(f"{name} must be {self.d1}x{self.d2}")
            object.__setattr__(self, name, tuple(tuple(self.field(v) for v in row) for row in M))

    @property
    def dim(self) -> tuple[int, int]:
        """Dimension vector (sink, source)."""
        return (self.d1, self.d2)

    def __eq__(self, other):
        return (
            isinstance(other, KronRep)
            and (self.field, self.d1, self.d2, self.A, self.B) == (other.field, other.d1, other.d2, other.A, other.B)
        )

    def __hash__(self):
        return hash((self.field, self.d1, self.d2, self.A, self.B))

    def to_json(self) -> dict:
        enc = lambda M: [[v.to_json() for v in row] for row in M]  # noqa: E731
        return {"field": str(self.field), "d1": self.d1, "d2": self.d2, "A": enc(self.A), "B": enc(self.B)}

    @classmethod
    def from_json(cls, obj: dict) -> "KronRep":
        try:
            F = parse_field(obj["field"])
            d1, d2 = int(obj["d1"]), int(obj["d2"])
            A = [[F.from_json(v) for v in row] for row in obj["A"]]
            B = [[F.from_json(v) for v in row] for row in obj["B"]]
            return cls(F, d1, d2, A, B)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad representation JSON: {exc}") from exc

    @classmethod
    def load(cls, path) -> "KronRep":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def dump(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=2)


def direct_sum(X: KronRep, Y: KronRep) -> KronRep:
    _same_field(X, Y)
    F = X.field

    def block(M, N):
        top = [list(r) + [F.zero] * Y.d2 for r in M]
        bot = [[F.zero] * X.d2 + list(r) for r in N]
        return top + bot

    return KronRep(F, X.d1 + Y.d1, X.d2 + Y.d2, block(X.A, Y.A), block(X.B, Y.B))


def _same_field(X, Y):
    if X.field != Y.field:
        raise FieldMismatch(f"{X.field} vs {Y.field}")


@dataclass(frozen=True)
class HomBasis:
    """Basis of Hom(X, Y); each element is a pair (f1: d1(Y)xd1(X), f2: d2(Y)xd2(X))."""

    dimension: int
    basis: tuple


def _intertwiner_system(X: KronRep, Y: KronRep):
    """Rows of the linear system f1 M_X = M_Y f2 (M = A, B) in unknowns vec(f1), vec(f2)."""
    F = X.field
    n1 = Y.d1 * X.d1
    nvars = n1 + Y.d2 * X.d2
    rows = []
    for MX, MY in ((X.A, Y.A), (X.B, Y.B)):
        for a in range(Y.d1):
            for b in range(X.d2):
                row = [F.zero] * nvars
                for c in range(X.d1):
                    row[a * X.d1 + c] = row[a * X.d1 + c] + MX[c][b]
                for c in range(Y.d2):
                    row[n1 + c * X.d2 + b] = row[n1 + c * X.d2 + b] - MY[a][c]
                rows.append(row)
    return rows, nvars


def hom_space(X: KronRep, Y: KronRep) -> HomBasis:
    _same_field(X, Y)
    rows, nvars = _intertwiner_system(X, Y)
    vecs = la.nullspace(X.field, rows, nvars)
    n1 = Y.d1 * X.d1
    basis = []
    for v in vecs:
        f1 = tuple(tuple(v[a * X.d1:(a + 1) * X.d1]) for a in range(Y.d1))
        f2 = tuple(tuple(v[n1 + c * X.d2:n1 + (c + 1) * X.d2]) for c in range(Y.d2))
        basis.append((f1, f2))
    return HomBasis(len(basis), tuple(basis))


def is_morphism(f, X: KronRep, Y: KronRep) -> bool:
    F = X.field
    f1, f2 = [list(map(list, m)) for m in f]
    for MX, MY in ((X.A, Y.A), (X.B, Y.B)):
        lhs = la.matmul(F, f1, [list(r) for r in MX]) if f1 else []
        rhs = la.matmul(F, [list(r) for r in MY], f2) if MY else []
        if Y.d1 and X.d2 and lhs != rhs:
            return False
    return True


def ext_dim(X: KronRep, Y: KronRep) -> int:
    """dim Ext^1(X, Y) = dim Hom(X, Y) - <dim X, dim Y>."""
    return hom_space(X, Y).dimension - euler_form(X.dim, Y.dim, KRONECKER)


def ext_dim_oracle(X: KronRep, Y: KronRep) -> int:
    """dim Ext^1(X, Y) as the cokernel of Hom(P_0, Y) -> Hom(P_1, Y).

    Presentation 0 -> P_1^(2 d2) -> P_1^(d1) + P_2^(d2) -> X -> 0, one P_1
    summand per (arrow, basis vector at vertex 2).  Hom(P_i, Y) = Y_i, so the
    map sends generator images (y_1c, y_2b) to  sum_c X_a[c][b] y_1c - Y_a y_2b.
    """
    _same_field(X, Y)
    F = X.field
    # columns: images y_{1,c} in Y_1 (c < d1X) then y_{2,b} in Y_2 (b < d2X)
    ncols = X.d1 * Y.d1 + X.d2 * Y.d2
    target_dim = 2 * X.d2 * Y.d1
    cols = []
    for c in range(X.d1):
        for k in range(Y.d1):
            col = [F.zero] * target_dim
            for ai, MX in enumerate((X.A, X.B)):
                for b in range(X.d2):
                    col[(ai * X.d2 + b) * Y.d1 + k] = MX[c][b]
            cols.append(col)
    for b in range(X.d2):
        for k in range(Y.d2):
            col = [F.zero] * target_dim
            for ai, MY in enumerate((Y.A, Y.B)):
                for j in range(Y.d1):
                    col[(ai * X.d2 + b) * Y.d1 + j] = -MY[j][k]
            cols.append(col)
    if not cols or target_dim == 0:
        return target_dim
    return target_dim - la.rank(F, cols)


def hom_dim_oracle(X: KronRep, Y: KronRep) -> int:
    """dim Hom(X, Y) as the kernel dimension of the same presentation map."""
    return X.d1 * Y.d1 + X.d2 * Y.d2 - (2 * X.d2 * Y.d1 - ext_dim_oracle(X, Y))


def functor_F(xact, field: Field) -> KronRep:
    """F(M) = (M ⇉ M with maps 1 and x) for the k[x]-module k^n with x acting by ``xact``."""
    n = len(xact)
    return KronRep(field, n, n, la.identity(field, n), [[field(v) for v in row] for row in xact])


def simple_regular_V(field: Field) -> KronRep:
    """V = (k ⇉ k with maps 0 and 1): the simple regular module outside the image of F."""
    return KronRep(field, 1, 1, [[0]], [[1]])


def v_ray(field: Field, n: int) -> KronRep:
    """V[n]: A = nilpotent Jordan block, B = identity, so V[1] = V."""
    if n < 1:
        raise LevelZero("ray level must be >= 1")
    J = [[field.one if j == i + 1 else field.zero for j in range(n)] for i in range(n)]
    return KronRep(field, n, n, J, la.identity(field, n))


def p_ray(p: Poly, n: int) -> KronRep:
    """V_p[n] = F(k[x]/(p^n)) via the companion matrix of p^n."""
    if n < 1:
        raise LevelZero("ray level must be >= 1")
    return functor_F(companion_matrix(p**n), p.field)


def projective(field: Field, vertex: int) -> KronRep:
    if vertex == 1:
        return KronRep(field, 1, 0, [[]], [[]])
    return KronRep(field, 2, 1, [[1], [0]], [[0], [1]])


def regular_module_R(field: Field) -> KronRep:
    """The algebra as a left module: P_1 + P_2, dimension vector (3, 1)."""
    return direct_sum(projective(field, 1), projective(field, 2))


def zero_rep(field: Field) -> KronRep:
    return KronRep(field, 0, 0, [], [])


def random_rep(field: Field, rng: random.Random, max_dim: int = 4) -> KronRep:
    d1, d2 = rng.randint(0, max_dim), rng.randint(0, max_dim)
    mk = lambda: [[field.random_element(rng) for _ in range(d2)] for _ in range(d1)]  # noqa: E731
    return KronRep(field, d1, d2, mk(), mk())


# -- endomorphism rings ----------------------------------------------------

def _compose(f, g, F):
    """g ∘ f for pairs of matrices (apply f first)."""
    return tuple(
        tuple(tuple(r) for r in la.matmul(F, [list(r) for r in gm], [list(r) for r in fm]))
        for fm, gm in zip(f, g)
    )


def _is_zero_pair(f) -> bool:
    return all(v.is_zero() for m in f for row in m for v in row)


def end_elements(X: KronRep):
    """Enumerate End(X) over a finite field (use only at desk scale)."""
    F = X.field
    H = hom_space(X, X)
    for coeffs in itertools.product(list(F.elements()), repeat=H.dimension):
        yield _combine(coeffs, H.basis, X, F)


def _combine(coeffs, basis, X, F):
    f1 = [[F.zero] * X.d1 for _ in range(X.d1)]
    f2 = [[F.zero] * X.d2 for _ in range(X.d2)]
    for c, (b1, b2) in zip(coeffs, basis):
        for i in range(X.d1):
            for j in range(X.d1):
                f1[i][j] = f1[i][j] + c * b1[i][j]
        for i in range(X.d2):
            for j in range(X.d2):
                f2[i][j] = f2[i][j] + c * b2[i][j]
    return (tuple(map(tuple, f1)), tuple(map(tuple, f2)))


def is_indecomposable(X: KronRep, max_end_size: int = 6561) -> Optional[bool]:
    """Decide indecomposability by scanning End(X) for nontrivial idempotents.

    Exhaustive over finite fields when |End| <= ``max_end_size``; over Q (or
    past the size bound) only End of dimension 1 is decided, else ``None``.
    """
    if X.d1 + X.d2 == 0:
        return False
    H = hom_space(X, X)
    if H.dimension == 1:
        return True
    F = X.field
    if not F.is_finite or F.order ** H.dimension > max_end_size:
        return None
    ident = (tuple(map(tuple, la.identity(F, X.d1))), tuple(map(tuple, la.identity(F, X.d2))))
    for e in end_elements(X):
        if _is_zero_pair(e) or e == ident:
            continue
        if _compose(e, e, F) == e:
            return False
    return True


def _pair_mat(f):
    return [list(r) for r in f[0]]


@dataclass
class PruferEndReport:
    """End(U[n]) for U = V_p (or V) and the structure witness k_p[t]/(t^n)."""

    label: str
    level: int
    residue_degree: int
    end_dimension: int
    nilpotent_index: int
    residue_lift_ok: bool
    basis_ok: bool
    compatible_with_lower_level: bool

    @property
    def ok(self) -> bool:
        return (
            self.end_dimension == self.level * self.residue_degree
            and self.nilpotent_index == self.level
            and self.residue_lift_ok
            and self.basis_ok
            and self.compatible_with_lower_level
        )


def _nilpotent_index(N, F, bound: int) -> int:
    P = la.identity(F, len(N))
    for k in range(1, bound + 2):
        P = la.matmul(F, P, N)
        if la.is_zero_matrix(P):
            return k
    return -1


def _in_span(F, vec, basis_vecs) -> bool:
    return la.rank(F, basis_vecs + [vec]) == la.rank(F, basis_vecs)


def prufer_end_truncation(p: Union[Poly, str], n: int, field: Optional[Field] = None) -> PruferEndReport:
    """Truncated shadow of End(U[∞]) ≅ k_p[[t]]: End(U[n]) ≅ k_p[t]/(t^n).

    ``p`` is a monic irreducible polynomial (U = V_p) or the marker ``"V"``
    (then ``field`` is required).  The report records dim End(U[n]), a
    nilpotent generator N of index n, a Hensel lift y of a root of p inside
    End (so k_p embeds), that {y^a N^b} is a basis, and that restriction to
    level n-1 is compatible (dim drops by deg p).
    """
    if n < 1:
        raise LevelZero("level must be >= 1")
    if isinstance(p, str):
        if p != "V" or field is None:
            raise ValueError("marker must be 'V' with an explicit field")
        F, deg = field, 1
        X = v_ray(F, n)
        x_act = [list(r) for r in X.A]  # endomorphisms commute with the Jordan block
        N = x_act
        label = "V"
        min_poly = None
    else:
        if is_irreducible(p) is not True:
            raise NotIrreducible(f"{p.compact()} is not known to be irreducible")
        F, deg = p.field, p.degree
        X = p_ray(p, n)
        x_act = [list(r) for r in X.B]
        N = _poly_at_matrix(p, x_act, F)
        label = p.compact()
        min_poly = p
    H = hom_space(X, X)
    size = len(x_act)
    # End(U[n]) acts on the sink space faithfully: f = (f1, f2) with f1 = f2
    end_vecs = [la.flatten([list(r) for r in b[0]]) for b in H.basis]
    nil = _nilpotent_index(N, F, size)
    if min_poly is None:
        y = la.zeros(F, size, size)
        lift_ok = True
    else:
        y = _hensel_root(min_poly, x_act, F, n)
        lift_ok = la.is_zero_matrix(_poly_at_matrix(min_poly, y, F))
    prods = []
    ya = la.identity(F, size)
    for a in range(deg):
        Nb = la.identity(F, size)
        for b in range(n):
            prods.append(la.flatten(la.matmul(F, ya, Nb)))
            Nb = la.matmul(F, Nb, N)
        ya = la.matmul(F, ya, y)
    in_end = all(_in_span(F, v, end_vecs) for v in prods) if end_vecs else not prods
    basis_ok = in_end and la.rank(F, prods) == H.dimension
    if n > 1:
        lower = hom_space(v_ray(F, n - 1) if min_poly is None else p_ray(min_poly, n - 1),
                          v_ray(F, n - 1) if min_poly is None else p_ray(min_poly, n - 1))
        compatible = H.dimension - lower.dimension == deg
    else:
        compatible = True
    return PruferEndReport(label, n, deg, H.dimension, nil, lift_ok, basis_ok, compatible)


def _poly_at_matrix(p: Poly, M, F):
    size = len(M)
    acc = la.zeros(F, size, size)
    for c in reversed(p.coeffs):
        acc = la.matmul(F, acc, M)
        for i in range(size):
            acc[i][i] = acc[i][i] + c
    return acc


def _hensel_root(p: Poly, C, F, n: int):
    """Newton iteration y <- y - p(y) p'(y)^{-1} in k[C]; converges to a root of p."""
    dp = p.derivative()
    y = [list(r) for r in C]
    steps = max(1, n.bit_length() + 1)
    for _ in range(steps):
        val = _poly_at_matrix(p, y, F)
        if la.is_zero_matrix(val):
            break
        y = la.matsub(y, la.matmul(F, val, la.inverse(F, _poly_at_matrix(dp, y, F))))
    return y


def residue_field_of(p: Poly) -> Field:
    return make_ext_field(p)

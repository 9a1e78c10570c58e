"""Extended Dynkin quivers: Euler form, radical vector, defect, tubes and δ.

Each type carries one canonical acyclic orientation:

* ``kronecker`` and ``A~(p,q)``: vertex 1 is the unique sink, vertex 2 the
  unique source; the two branches 2 -> ... -> 1 have p and q arrows.
  ``A~(1,1)`` has the same arrows as the Kronecker quiver.
* ``D~n``, ``E~6|7|8``: trees, every edge oriented toward vertex 1.

The Euler form depends on the orientation; q, h and the tube data do not.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import LengthMismatch, NotAffine, NotRegular, ParseError
from .fields import QQ
from .linalg import inverse, matmul, nullspace, to_matrix

DimVector = tuple  # tuple[int, ...], one entry per vertex 1..r


@dataclass(frozen=True)
class AffineQuiver:
    """An extended Dynkin quiver of kind ``kronecker``, ``A``, ``D`` or ``E``."""

    kind: str
    p: int = 0
    q: int = 0
    n: int = 0

    def __post_init__(self):
        if self.kind == "A" and (self.p < 1 or self.q < 1):
            raise ValueError("A~(p,q) needs p, q >= 1")
        if self.kind == "D" and self.n < 4:
            raise ValueError("D~n needs n >= 4")
        if self.kind == "E" and self.n not in (6, 7, 8):
            raise ValueError("E~n needs n in 6, 7, 8")
        if self.kind not in ("kronecker", "A", "D", "E"):
            raise ValueError(f"unknown kind {self.kind!r}")

    @property
    def name(self) -> str:
        return {
            "kronecker": "kronecker",
            "A": f"A~({self.p},{self.q})",
            "D": f"D~{self.n}",
            "E": f"E~{self.n}",
        }[self.kind]

    def __str__(self):
        return self.name

    @property
    def r(self) -> int:
        """Number of vertices (= number of simple modules)."""
        if self.kind == "kronecker":
            return 2
        if self.kind == "A":
            return self.p + self.q
        return self.n + 1

    @cached_property
    def arrows(self) -> tuple[tuple[int, int], ...]:
        if self.kind == "kronecker":
            return ((2, 1), (2, 1))
        if self.kind == "A":
            out = []
            nxt = 3
            for length in (self.p, self.q):
                path = [2] + list(range(nxt, nxt + length - 1)) + [1]
                nxt += length - 1
                out += list(zip(path, path[1:]))
            return tuple(out)
        return _orient_toward(self._tree_edges(), sink=1)

    def _tree_edges(self) -> list[tuple[int, int]]:
        if self.kind == "D":
            # leaves 1,2 on chain vertex 3; chain 3..n-1; leaves n, n+1 on n-1
            n = self.n
            chain = list(range(3, n))
            edges = [(1, 3), (2, 3)] + list(zip(chain, chain[1:])) + [(n, n - 1), (n + 1, n - 1)]
            return edges
        arms = {6: (2, 2, 2), 7: (3, 3, 1), 8: (5, 2, 1)}[self.n]
        # vertex 1 is the tip of the first arm; the centre comes after it
        first = list(range(1, arms[0] + 1))
        centre = arms[0] + 1
        edges = list(zip(first, first[1:])) + [(first[-1], centre)]
        nxt = centre + 1
        for length in arms[1:]:
            arm = [centre] + list(range(nxt, nxt + length))
            nxt += length
            edges += list(zip(arm, arm[1:]))
        return edges

    @cached_property
    def euler_matrix(self) -> np.ndarray:
        """E with <d, e> = d^T E e."""
        E = np.eye(self.r, dtype=np.int64)
        for s, t in self.arrows:
            E[s - 1, t - 1] -= 1
        return E

    @cached_property
    def path_counts(self) -> np.ndarray:
        """P[i, j] = number of paths from vertex i+1 to vertex j+1 (incl. trivial)."""
        A = np.zeros((self.r, self.r), dtype=np.int64)
        for s, t in self.arrows:
            A[s - 1, t - 1] += 1
        P = np.eye(self.r, dtype=np.int64)
        term = np.eye(self.r, dtype=np.int64)
        for _ in range(self.r):
            term = term @ A
            P = P + term
        return P


def _orient_toward(edges, sink: int) -> tuple[tuple[int, int], ...]:
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    arrows, seen, frontier = [], {sink}, [sink]
    while frontier:
        nxt = []
        for v in frontier:
            for w in sorted(adj[v]):
                if w not in seen:
                    seen.add(w)
                    arrows.append((w, v))
                    nxt.append(w)
        frontier = nxt
    return tuple(sorted(arrows))


KRONECKER = AffineQuiver("kronecker")


def parse_quiver(text: str) -> AffineQuiver:
    """Parse ``kronecker``, ``A~(p,q)``, ``D~n`` or ``E~6|7|8``."""
    s = text.replace(" ", "")
    if s.lower() == "kronecker":
        return KRONECKER
    m = re.match(r"^A~?\((\d+),(\d+)\)$", s)
    try:
        if m:
            return AffineQuiver("A", p=int(m.group(1)), q=int(m.group(2)))
        m = re.match(r"^([DE])~?(\d+)$", s)
        if m:
            return AffineQuiver(m.group(1), n=int(m.group(2)))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown quiver type {text!r}")


def builtin_types(max_a: int = 6) -> list[AffineQuiver]:
    """Kronecker, A~(p,q) with p >= q and p+q <= max_a, D~4..D~6, E~6..E~8."""
    out = [KRONECKER]
    out += [AffineQuiver("A", p=p, q=q) for total in range(2, max_a + 1) for q in range(1, total // 2 + 1)
            for p in [total - q]]
    out += [AffineQuiver("D", n=n) for n in (4, 5, 6)]
    out += [AffineQuiver("E", n=n) for n in (6, 7, 8)]
    return out


def _check(d: Sequence[int], Q: AffineQuiver) -> np.ndarray:
    if len(d) != Q.r:
        raise LengthMismatch(f"vector of length {len(d)} for {Q} with r = {Q.r}")
    return np.asarray(d, dtype=np.int64)


def euler_form(d: Sequence[int], e: Sequence[int], Q: AffineQuiver) -> int:
    """<d, e> = sum_i d_i e_i - sum_{arrows i->j} d_i e_j."""
    dv, ev = _check(d, Q), _check(e, Q)
    return int(dv @ Q.euler_matrix @ ev)


def quadratic_form(d: Sequence[int], Q: AffineQuiver) -> int:
    return euler_form(d, d, Q)


def radical_vector(Q: AffineQuiver) -> DimVector:
    """Minimal positive radical vector h of the quadratic form.

    Computed exactly as the positive primitive generator of the kernel of the
    symmetrized Euler matrix.
    """
    S = Q.euler_matrix + Q.euler_matrix.T
    basis = nullspace(QQ, to_matrix(QQ, S.tolist()), Q.r)
    if len(basis) != 1:
        raise NotAffine(f"radical of {Q} has dimension {len(basis)}")
    v = [c.value for c in basis[0]]
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise NotAffine(f"radical generator of {Q} is not sincere: {ints}")
    return tuple(ints)


def defect(d: Sequence[int], Q: AffineQuiver) -> int:
    """<h, d>: negative for preprojective, zero for regular, positive for preinjective."""
    return euler_form(radical_vector(Q), d, Q)


def classify(d: Sequence[int], Q: AffineQuiver) -> str:
    x = defect(d, Q)
    return "preprojective" if x < 0 else "preinjective" if x > 0 else "regular"


def tube_ranks(Q: AffineQuiver) -> tuple[int, ...]:
    """Ranks of the exceptional tubes (all other tubes have rank one)."""
    if Q.kind == "kronecker":
        return ()
    if Q.kind == "A":
        return tuple(sorted((Q.p, Q.q), reverse=True))
    if Q.kind == "D":
        return (Q.n - 2, 2, 2)
    return {6: (3, 3, 2), 7: (4, 3, 2), 8: (5, 3, 2)}[Q.n]


def exceptional_ranks(Q: AffineQuiver) -> tuple[int, ...]:
    """Tube ranks that exceed one."""
    return tuple(c for c in tube_ranks(Q) if c > 1)


def projective_dims(Q: AffineQuiver) -> list[DimVector]:
    """dim P_i for i = 1..r, by counting paths starting at i."""
    return [tuple(int(x) for x in Q.path_counts[i]) for i in range(Q.r)]


def dim_algebra(Q: AffineQuiver) -> DimVector:
    """Dimension vector of R as a left module over itself (sum of dim P_i)."""
    return tuple(int(x) for x in Q.path_counts.sum(axis=0))


def coxeter_matrix(Q: AffineQuiver) -> list[list[int]]:
    """Phi = -E^{-1} E^T, so that dim(tau X) = Phi dim X for non-projective X."""
    E = to_matrix(QQ, Q.euler_matrix.tolist())
    Et = to_matrix(QQ, Q.euler_matrix.T.tolist())
    Phi = matmul(QQ, inverse(QQ, E), Et)
    return [[-int(c.value) for c in row] for row in Phi]


def _apply(M, v):
    return tuple(sum(M[i][j] * v[j] for j in range(len(v))) for i in range(len(v)))


def tau_orbit(d: Sequence[int], Q: AffineQuiver) -> list[DimVector]:
    Phi = coxeter_matrix(Q)
    orbit = [tuple(d)]
    while True:
        nxt = _apply(Phi, orbit[-1])
        if nxt == orbit[0]:
            return orbit
        if len(orbit) > 2 * Q.r or any(x < 0 for x in nxt):
            raise NotRegular(f"{tuple(d)} does not have a finite positive tau-orbit")
        orbit.append(nxt)


def simple_regular_vectors(Q: AffineQuiver) -> dict[str, list[DimVector]]:
    """Dimension vectors of simple regular modules.

    Returns ``{"homogeneous": [h], "exceptional": [...]}`` where the
    exceptional ones are the real roots d <= h of defect zero whose tau-orbit
    sums to h (the simple regulars of the non-homogeneous tubes).
    """
    h = np.asarray(radical_vector(Q), dtype=np.int64)
    grids = np.array(list(itertools.product(*[range(x + 1) for x in h])), dtype=np.int64)
    E = Q.euler_matrix
    q = np.einsum("ni,ij,nj->n", grids, E, grids)
    dfc = grids @ (h @ E)
    mask = (q == 1) & (dfc == 0)
    found = []
    for cand in grids[mask]:
        v = tuple(int(x) for x in cand)
        orbit = tau_orbit(v, Q)
        if tuple(int(x) for x in np.sum(orbit, axis=0)) == tuple(int(x) for x in h):
            found.append(v)
    return {"homogeneous": [tuple(int(x) for x in h)], "exceptional": sorted(found)}


def delta_multiplicity(u: Sequence[int], Q: AffineQuiver) -> int:
    """δ_U = dim_k Ext^1(U, R) = -<dim U, dim R> for a simple regular U.

    Uses Hom(U, R) = 0 for regular U and End(U) = k (algebraically closed k).
    """
    if not any(u):
        raise NotRegular("zero vector is not a simple regular module")
    if defect(u, Q) != 0:
        raise NotRegular(f"{tuple(u)} has nonzero defect")
    return -euler_form(u, dim_algebra(Q), Q)


def delta_bound(Q: AffineQuiver) -> int:
    """d = (sum h_i)(sum_j dim S_j) with every simple one-dimensional."""
    return sum(radical_vector(Q)) * Q.r


def parse_dim_vector(text: str) -> DimVector:
    try:
        return tuple(int(x) for x in text.replace("(", "").replace(")", "").split(","))
    except ValueError as exc:
        raise ParseError(f"bad dimension vector {text!r}") from exc

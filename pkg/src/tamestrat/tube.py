"""Symbolic calculus inside a tube of rank m.

Canonical epimorphisms between Prüfer modules of a clique are recorded by
their normal form (source, total shift); composition adds shifts.  The
matrix ring Γ(m) over k[[x]] and the element J with J^m = x·I give the
concrete picture of the Prüfer endomorphism ring and its localization.
"""
from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import BadLevel, FieldMismatch, NotComposable, OutOfRange, PrecisionTooLow
from .fields import Field, PrimeField, Rationals
from .series import DEFAULT_PRECISION, TruncatedSeries

INFINITE = None  # length marker for Prüfer modules


def _wrap(i: int, m: int) -> int:
    """Reduce an index to 1..m."""
    return (i - 1) % m + 1


@dataclass(frozen=True)
class Clique:
    rank: int
    name: str = "U"

    def __post_init__(self):
        if self.rank < 1:
            raise OutOfRange("clique rank must be >= 1")

    @property
    def labels(self) -> list[str]:
        return [f"{self.name}{i}" for i in range(1, self.rank + 1)]

    def tau_inverse(self, i: int) -> int:
        return _wrap(i + 1, self.rank)

    def tau(self, i: int) -> int:
        return _wrap(i - 1, self.rank)


@dataclass(frozen=True)
class RayModule:
    """U_start[length]; ``length=None`` stands for the Prüfer module U_start[∞]."""

    start: int
    length: Optional[int]
    m: int

    def __post_init__(self):
        if not 1 <= self.start <= self.m:
            raise OutOfRange(f"start {self.start} not in 1..{self.m}")
        if self.length is not None and self.length < 1:
            raise BadLevel("ray length must be >= 1")

    def composition_factors(self) -> list[int]:
        if self.length is None:
            raise BadLevel("Prüfer module has infinite length")
        return [_wrap(self.start + k, self.m) for k in range(self.length)]

    def __str__(self):
        n = "∞" if self.length is None else self.length
        return f"U{self.start}[{n}]"


@dataclass(frozen=True)
class PruferMapSymbol:
    """ε_{r, r+n}: U_r[∞] → U_{r+n}[∞], kernel U_r[n]."""

    source: int
    shift: int
    m: int

    def __post_init__(self):
        if not 1 <= self.source <= self.m:
            raise OutOfRange(f"source {self.source} not in 1..{self.m}")
        if self.shift < 1:
            raise OutOfRange("shift must be >= 1")

    @property
    def target(self) -> int:
        return _wrap(self.source + self.shift, self.m)

    @property
    def kernel(self) -> RayModule:
        return RayModule(self.source, self.shift, self.m)

    @property
    def is_endomorphism(self) -> bool:
        return self.target == self.source

    def __str__(self):
        return f"eps({self.source},{self.source + self.shift})"


def epsilon(i: int, j: int, m: int) -> PruferMapSymbol:
    """ε_{i,j} for integers i < j; indices are read mod m, so ε_{i,j} = ε_{i+m,j+m}."""
    if j <= i:
        raise OutOfRange("epsilon needs i < j")
    return PruferMapSymbol(_wrap(i, m), j - i, m)


def epsilon_compose(f: PruferMapSymbol, g: PruferMapSymbol) -> PruferMapSymbol:
    """Apply f, then g."""
    if f.m != g.m:
        raise NotComposable("symbols live in tubes of different rank")
    if f.target != g.source:
        raise NotComposable(f"target of {f} is {f.target}, source of {g} is {g.source}")
    return PruferMapSymbol(f.source, f.shift + g.shift, f.m)


def delta(r: int, s: int) -> int:
    return 0 if r < s else 1


def _check_index(m: int, *idx: int):
    if m < 1:
        raise OutOfRange("rank must be >= 1")
    for i in idx:
        if not 1 <= i <= m:
            raise OutOfRange(f"index {i} not in 1..{m}")


def pi(r: int, s: int, m: int) -> PruferMapSymbol:
    """π_{r,s} = ε_{r, s + Δ(r,s)·m}; π_{r,r} winds once around the tube."""
    _check_index(m, r, s)
    return PruferMapSymbol(r, s - r + delta(r, s) * m, m)


def pi_law_check(r: int, s: int, t: int, m: int) -> str:
    """'Direct' if π_{r,s}π_{s,t} = π_{r,t}, 'Wound' if it equals π_{r,r}π_{r,t}."""
    _check_index(m, r, s, t)
    prod = epsilon_compose(pi(r, s, m), pi(s, t, m))
    direct = prod == pi(r, t, m)
    wound = prod == epsilon_compose(pi(r, r, m), pi(r, t, m))
    if direct == wound:  # pragma: no cover - the shift arithmetic rules this out
        raise AssertionError(f"law dichotomy failed for {(r, s, t, m)}")
    return "Direct" if direct else "Wound"


def loop_conjugate(i: int, j: int, m: int) -> PruferMapSymbol:
    """Transport π_{i,i} along ε_{i,j}: the loop at the target has shift m again."""
    path = epsilon(i, j, m)
    # ε_{i,j} π_{j,j} = π_{i,i} ε_{i+m, j+m}: compare shifts to read off the loop at j
    left = epsilon_compose(path, pi(path.target, path.target, m))
    right = epsilon_compose(pi(path.source, path.source, m), epsilon(i + m, j + m, m))
    if left != right:  # pragma: no cover
        raise AssertionError("loop transport failed")
    return pi(path.target, path.target, m)


def ray_exact_sequence(i: int, j: int, n: int, m: int):
    """0 → U_i[j−i] → U_i[n] → U_j[n−(j−i)] → 0 (indices mod m)."""
    if j <= i:
        raise OutOfRange("need i < j")
    if n <= j - i:
        raise BadLevel(f"level n={n} must exceed j-i={j - i}")
    start = _wrap(i, m)
    kernel = RayModule(start, j - i, m)
    middle = RayModule(start, n, m)
    image = RayModule(_wrap(j, m), n - (j - i), m)
    return kernel, {"map": f"eps({i},{j}) restricted", "from": str(middle), "to": str(image)}, image


# -- Γ(m) --------------------------------------------------------------------
#
# Coefficients live in a numpy array of shape (m, m, N): int64 residues over
# F_p, Python ints/Fractions (dtype=object) over Q.

@dataclass(frozen=True)
class GammaRing:
    """m×m matrices over k[[x]] whose strictly-lower entries lie in (x)."""

    field: Field
    m: int
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.m < 1 or self.precision < 1:
            raise OutOfRange("need m >= 1 and precision >= 1")
        if not isinstance(self.field, (PrimeField, Rationals)):
            raise FieldMismatch("Γ(m) is implemented over prime fields and Q")

    @property
    def _modulus(self) -> Optional[int]:
        return self.field.characteristic if isinstance(self.field, PrimeField) else None

    @property
    def _int64(self) -> bool:
        """Residues fit int64 through a full product (m·N·p² < 2^63); else use Python ints."""
        p = self._modulus
        return bool(p) and self.m * self.precision * (p - 1) ** 2 < 2**63

    def _empty(self) -> np.ndarray:
        shape = (self.m, self.m, self.precision)
        if self._int64:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(0)  # integral rationals stay Python ints, which is much faster than Fraction
        return out

    def _raw(self, v):
        v = self.field(v).value
        if isinstance(v, Fraction) and v.denominator == 1:
            return v.numerator
        return v

    def is_member(self, data: np.ndarray) -> bool:
        lower = np.tril_indices(self.m, -1)
        return bool(np.all(data[lower[0], lower[1], 0] == 0))

    def matrix(self, rows) -> "GammaMatrix":
        """Build from rows of series, scalars or coefficient lists."""
        data = self._empty()
        for a, row in enumerate(rows):
            for b, v in enumerate(row):
                if isinstance(v, TruncatedSeries):
                    cs = v.coeffs
                elif isinstance(v, (list, tuple)):
                    cs = v
                else:
                    cs = [v]
                for e, c in enumerate(list(cs)[: self.precision]):
                    data[a, b, e] = self._raw(c)
        return GammaMatrix(self, data)

    def unit(self, i: int, j: int, power: int = 0) -> "GammaMatrix":
        """E_{i,j}(x^power), 1-based."""
        data = self._empty()
        if power < self.precision:
            data[i - 1, j - 1, power] = 1
        return GammaMatrix(self, data)

    def identity(self) -> "GammaMatrix":
        acc = self.zero()
        for i in range(1, self.m + 1):
            acc = acc + self.unit(i, i)
        return acc

    def zero(self) -> "GammaMatrix":
        return GammaMatrix(self, self._empty())

    def x_identity(self) -> "GammaMatrix":
        acc = self.zero()
        for i in range(1, self.m + 1):
            acc = acc + self.unit(i, i, 1)
        return acc

    def generators(self) -> list["GammaMatrix"]:
        """Images of π_{r,r+1}: E_{r,r+1} for r < m and E_{m,1}(x)."""
        if self.m == 1:
            return [self.unit(1, 1, 1)]
        gens = [self.unit(r, r + 1) for r in range(1, self.m)]
        gens.append(self.unit(self.m, 1, 1))
        return gens

    def J(self) -> "GammaMatrix":
        acc = self.zero()
        for g in self.generators():
            acc = acc + g
        return acc

    def random_member(self, rng: random.Random, degree: Optional[int] = None) -> "GammaMatrix":
        """Random member; ``degree`` caps the number of nonzero low coefficients (default: all)."""
        data = self._empty()
        top = self.precision if degree is None else min(degree, self.precision)
        p = self._modulus
        for a in range(self.m):
            for b in range(self.m):
                for e in range(1 if a > b else 0, top):
                    data[a, b, e] = rng.randrange(p) if p else self._raw(self.field.random_element(rng))
        return GammaMatrix(self, data)


@functools.lru_cache(maxsize=None)
def _fold_matrix(N: int) -> np.ndarray:
    """0/1 matrix S with S[p*N + q, r] = 1 iff p + q = r < N."""
    S = np.zeros((N * N, N), dtype=np.int64)
    for p in range(N):
        for q in range(N - p):
            S[p * N + q, p + q] = 1
    return S


@dataclass(frozen=True, eq=False)
class GammaMatrix:
    ring: GammaRing
    data: np.ndarray

    @property
    def m(self) -> int:
        return self.ring.m

    @property
    def entries(self) -> tuple:
        F, N = self.ring.field, self.ring.precision
        return tuple(
            tuple(TruncatedSeries(F, [F(v.item() if hasattr(v, 'item') else v) for v in self.data[a, b]], N)
                  for b in range(self.m))
            for a in range(self.m)
        )

    def _wrap(self, data) -> "GammaMatrix":
        p = self.ring._modulus
        return GammaMatrix(self.ring, data % p if p else data)

    def is_member(self) -> bool:
        return self.ring.is_member(self.data)

    def __add__(self, other: "GammaMatrix") -> "GammaMatrix":
        return self._wrap(self.data + other.data)

    def __neg__(self):
        return self._wrap(-self.data)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, GammaMatrix):
            if isinstance(other, TruncatedSeries):
                return self * self.ring.matrix(
                    [[other if a == b else 0 for b in range(self.m)] for a in range(self.m)]
                )
            return self._wrap(self.data * self.ring._raw(other))
        A, B, N = self.data, other.data, self.ring.precision
        if self.ring._int64:
            # all coefficient products at once, then fold x^p * x^q onto x^(p+q)
            full = np.einsum("ikp,kjq->ijpq", A, B).reshape(self.m, self.m, N * N)
            return self._wrap(full @ _fold_matrix(N))
        out = self.ring._empty()
        live = [f for f in range(N) if np.any(B[:, :, f] != 0)]
        top = live[-1] + 1 if live else 0
        for e in range(N):
            if not live or not np.any(A[:, :, e] != 0):
                continue
            # terms x^e * x^f with e + f < N, f below the last nonzero slice of B
            width = min(top, N - e)
            out[:, :, e:e + width] += np.einsum("ik,kjq->ijq", A[:, :, e], B[:, :, :width])
        return self._wrap(out)

    def __pow__(self, n: int) -> "GammaMatrix":
        result = self.ring.identity()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        return isinstance(other, GammaMatrix) and self.ring == other.ring and bool(np.all(self.data == other.data))

    def __hash__(self):
        return hash(tuple(self.data.flatten().tolist()))

    def __str__(self):
        return "[" + "; ".join(", ".join(str(e) for e in row) for row in self.entries) + "]"

    def to_json(self):
        return [[e.to_json() for e in row] for row in self.entries]


def gamma_ring(m: int, N: int = DEFAULT_PRECISION, field: Optional[Field] = None) -> GammaRing:
    from .fields import QQ

    return GammaRing(field or QQ, m, N)


@dataclass
class LocalizationWitness:
    m: int
    precision: int
    J_power_is_x_identity: bool
    J_inverse_ok: bool
    # (i, j, d, e): E_ii J^d E_jj = E_ij(x^e); multiply by J^{-m} = x^{-1} to reach any x^z
    witnesses: list = dc_field(default_factory=list)
    witnesses_ok: bool = True

    @property
    def ok(self) -> bool:
        return self.J_power_is_x_identity and self.J_inverse_ok and self.witnesses_ok

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "precision": self.precision,
            "J^m == x*I": self.J_power_is_x_identity,
            "J^-1 == x^-1 * J^(m-1)": self.J_inverse_ok,
            "witnesses": [
                {"i": i, "j": j, "J_power": d, "x_power": e} for i, j, d, e in self.witnesses
            ],
            "ok": self.ok,
        }


def gamma_localization_witness(m: int, N: int = DEFAULT_PRECISION, field: Optional[Field] = None) -> LocalizationWitness:
    """Check J^m = x·I in Γ(m) and that J, the idempotents and J^{-1} generate every E_ij(x^z)."""
    if m < 1:
        raise OutOfRange("m must be >= 1")
    if N < m:
        raise PrecisionTooLow(f"precision {N} < m = {m}")
    G = gamma_ring(m, N, field)
    J = G.J()
    xI = G.x_identity()
    Jm = J**m
    power_ok = Jm == xI
    # J · (x^{-1} J^{m-1}) = 1  <=>  J · J^{m-1} = x·I, checked as a separate product
    inv_ok = (J * J ** (m - 1)) == xI and (J ** (m - 1) * J) == xI
    wit = []
    ok = True
    powers = [G.identity()]
    for _ in range(1, m):
        powers.append(powers[-1] * J)
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            d = (j - i) % m
            e = 1 if i > j else 0
            got = G.unit(i, i) * powers[d] * G.unit(j, j)
            ok = ok and got == G.unit(i, j, e)
            wit.append((i, j, d, e))
    return LocalizationWitness(m, N, power_ok, inv_ok, wit, ok)

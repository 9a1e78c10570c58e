"""Symbolic ring descriptors.

Descriptors are immutable, hashable and round-trip through JSON as
``{"kind": ..., <fields>}`` with nested descriptors inlined.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import ClassVar

_KINDS: dict[str, type] = {}


@dataclass(frozen=True)
class RingDescriptor:
    kind: ClassVar[str] = "Ring"

    def __init_subclass__(cls, **kw):
        super().__init_subclass__(**kw)
        _KINDS[cls.kind] = cls

    def label(self) -> str:
        """Short human name, also the factor-multiset key for leaves."""
        return self.kind

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        for f in dataclasses.fields(self):
            out[f.name] = _enc(getattr(self, f.name))
        return out

    def __str__(self):
        return self.label()


def _enc(v):
    if isinstance(v, RingDescriptor):
        return v.to_json()
    if isinstance(v, tuple):
        return [_enc(x) for x in v]
    return v


def _dec(v):
    if isinstance(v, dict) and "kind" in v:
        return descriptor_from_json(v)
    if isinstance(v, list):
        return tuple(_dec(x) for x in v)
    return v


def descriptor_from_json(obj: dict) -> RingDescriptor:
    cls = _KINDS.get(obj.get("kind"))
    if cls is None:
        raise ValueError(f"unknown ring kind {obj.get('kind')!r}")
    return cls(**{k: _dec(v) for k, v in obj.items() if k != "kind"})


@dataclass(frozen=True)
class BaseField(RingDescriptor):
    kind: ClassVar[str] = "BaseField"
    field: str = "k"

    def label(self):
        return self.field


@dataclass(frozen=True)
class ExtFieldRing(RingDescriptor):
    kind: ClassVar[str] = "ExtField"
    modulus: str = "x"

    def label(self):
        return f"k[x]/({self.modulus})"


@dataclass(frozen=True)
class PowerSeriesRing(RingDescriptor):
    kind: ClassVar[str] = "PowerSeriesRing"
    field: str = "k"

    def label(self):
        return f"{self.field}[[x]]"


@dataclass(frozen=True)
class LaurentSeriesRing(RingDescriptor):
    kind: ClassVar[str] = "LaurentSeriesRing"
    field: str = "k"

    def label(self):
        return f"{self.field}((x))"


@dataclass(frozen=True)
class Dedekind(RingDescriptor):
    """k[x] with the inverses of the members of Δ adjoined; Δ kept as a tag."""

    kind: ClassVar[str] = "Dedekind"
    delta: str = "Δ"

    def label(self):
        return f"D({self.delta})"


@dataclass(frozen=True)
class FractionField(RingDescriptor):
    kind: ClassVar[str] = "FractionField"
    field: str = "k"

    def label(self):
        return f"{self.field}(x)"


@dataclass(frozen=True)
class PolynomialRing(RingDescriptor):
    kind: ClassVar[str] = "PolynomialRing"
    field: str = "k"

    def label(self):
        return f"{self.field}[x]"


@dataclass(frozen=True)
class Matrix(RingDescriptor):
    kind: ClassVar[str] = "Matrix"
    n: int = 1
    inner: RingDescriptor = BaseField()

    def label(self):
        return f"M{self.n}({self.inner.label()})"


@dataclass(frozen=True)
class UpperTriangular(RingDescriptor):
    """Diagonal blocks with off-diagonal bimodules kept as opaque names."""

    kind: ClassVar[str] = "UpperTriangular"
    diagonal: tuple = ()
    bimodules: tuple = ()

    def label(self):
        return "UT(" + ", ".join(d.label() for d in self.diagonal) + ")"


@dataclass(frozen=True)
class LowerTriangular(RingDescriptor):
    kind: ClassVar[str] = "LowerTriangular"
    diagonal: tuple = ()

    def label(self):
        return "LT(" + ", ".join(d.label() for d in self.diagonal) + ")"


@dataclass(frozen=True)
class Product(RingDescriptor):
    kind: ClassVar[str] = "Product"
    factors: tuple = ()

    def label(self):
        return " x ".join(f.label() for f in self.factors) or "0"


@dataclass(frozen=True)
class Gamma(RingDescriptor):
    """m×m matrices over k[[x]] with strictly-lower entries in (x)."""

    kind: ClassVar[str] = "Gamma"
    m: int = 1

    def label(self):
        return f"Gamma({self.m})"


@dataclass(frozen=True)
class Adele(RingDescriptor):
    kind: ClassVar[str] = "Adele"
    components: tuple = ()

    def label(self):
        return "Adele[" + ", ".join(c.label() for c in self.components) + "]"


@dataclass(frozen=True)
class TameHereditary(RingDescriptor):
    kind: ClassVar[str] = "TameHereditary"
    quiver: str = "kronecker"

    def label(self):
        return f"kQ[{self.quiver}]"


@dataclass(frozen=True)
class TiltingEnd(RingDescriptor):
    """End of the tilting module R_U + R_U/R; ``cliques`` are ranks of full cliques in U."""

    kind: ClassVar[str] = "TiltingEnd"
    quiver: str = "kronecker"
    cliques: tuple = ()
    partial: tuple = ()

    def label(self):
        return f"End(T_U)[{self.quiver}; {list(self.cliques)}]"


@dataclass(frozen=True)
class UniversalLocalization(RingDescriptor):
    """R_U: the algebra universally localized at the projective resolutions of U."""

    kind: ClassVar[str] = "UniversalLocalization"
    quiver: str = "kronecker"
    cliques: tuple = ()
    outside: tuple = ()

    def label(self):
        return f"R_U[{self.quiver}; {list(self.cliques)}]"


@dataclass(frozen=True)
class QuotientEnd(RingDescriptor):
    """End(R_U/R) over the algebra; one Prüfer block per chosen clique."""

    kind: ClassVar[str] = "QuotientEnd"
    cliques: tuple = ()

    def label(self):
        return f"End(R_U/R)[{list(self.cliques)}]"


@dataclass(frozen=True)
class RelativeQuotientEnd(RingDescriptor):
    """End_{R_U}(R_W/R_U) for the cliques outside U that are only partly in W."""

    kind: ClassVar[str] = "RelativeQuotientEnd"
    cliques: tuple = ()

    def label(self):
        return f"End(R_W/R_U)[{list(self.cliques)}]"


@dataclass(frozen=True)
class DivisionRingSymbol(RingDescriptor):
    kind: ClassVar[str] = "DivisionRingSymbol"
    tag: str = "Q(C)"

    def label(self):
        return self.tag


@dataclass(frozen=True)
class ZeroRing(RingDescriptor):
    kind: ClassVar[str] = "ZeroRing"

    def label(self):
        return "0"


def triangular_k(n: int, field: str = "k") -> RingDescriptor:
    """T_n(k); T_1(k) is just k."""
    if n == 1:
        return BaseField(field)
    return UpperTriangular(tuple(BaseField(field) for _ in range(n)))

"""Recollement rewrite trees and the two stratifications of End(T_U).

A tree node holds a ring descriptor and either
  * ``expanded``: a recollement with two children (rule id + citation),
  * ``normalized``: replaced by one equivalent ring (rule id + citation),
  * ``leaf``: a derived-simple ring, with the registry reason,
  * ``zero``: the zero ring, which contributes nothing.
Expansion is deterministic: children are expanded left to right and each
descriptor kind has exactly one applicable rule (per route).
"""
from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import BadCliques, EmptyU, PartialClique, SingleBlock
from .quiver import AffineQuiver, parse_quiver, tube_ranks
from .rings import (
    Adele, BaseField, Dedekind, DivisionRingSymbol, ExtFieldRing, FractionField, Gamma,
    LaurentSeriesRing, LowerTriangular, Matrix, PolynomialRing, PowerSeriesRing, Product,
    QuotientEnd, RelativeQuotientEnd, RingDescriptor, TameHereditary, TiltingEnd,
    UniversalLocalization, UpperTriangular, ZeroRing, descriptor_from_json, triangular_k,
)

SCHEMA = "tamestrat/1"

RULES = {
    "tilting": "recollement of D(End T_U) by the adele ring of the full cliques and the algebra",
    "end_decomposition": "End(T_U) is triangular with diagonal R_U and End(R_U/R)",
    "localization_decomposition": "R_U is triangular with diagonal R_W and End_{R_U}(R_W/R_U)",
    "two_simple": "R_W is the 2x2 matrix ring over a Dedekind domain",
    "quotient_end": "End(R_U/R) is Morita equivalent to the product of the rings Gamma(C)",
    "relative_quotient_end": "End_{R_U}(R_W/R_U) is the product of the rings T_{c-1}(k)",
    "triangular": "a triangular matrix ring is glued from its diagonal blocks",
    "morita": "Morita equivalence strips a full matrix ring",
    "product": "a product of two rings is a trivial recollement",
    "gamma": "Gamma(m) is derived equivalent to a lower-triangular ring with corner k[[x]]",
    "hereditary": "the path algebra of an acyclic quiver is iterated triangular over k",
    "adele": "the adele ring over a finite index set is the product of its components",
}

LEAF_REGISTRY = {
    "BaseField": ("field", "fields are derived simple"),
    "ExtField": ("field", "fields are derived simple"),
    "LaurentSeriesRing": ("field", "fields are derived simple"),
    "FractionField": ("field", "fields are derived simple"),
    "DivisionRingSymbol": ("division ring", "division rings are derived simple"),
    "Dedekind": ("Dedekind domain", "Dedekind domains are derived simple"),
    "PolynomialRing": ("Dedekind domain", "Dedekind domains are derived simple"),
    "PowerSeriesRing": ("local Dedekind domain", "Dedekind domains are derived simple"),
}

SCOPE_NOTES = (
    "leaves are checked against the rules implemented here; other composition factors are not ruled out",
    "bimodules of triangular nodes are labels and are never computed",
    "the generic module and its endomorphism dimension are not modelled",
)

FACTOR_KEYS = ("k", "k[[x]]", "k((x))", "dedekind")


def factor_key(ring: RingDescriptor) -> str:
    if isinstance(ring, BaseField):
        return "k"
    if isinstance(ring, PowerSeriesRing):
        return "k[[x]]"
    if isinstance(ring, LaurentSeriesRing):
        return "k((x))"
    if isinstance(ring, (Dedekind, PolynomialRing)):
        return "dedekind"
    if isinstance(ring, FractionField):
        return "k(x)"
    if isinstance(ring, ExtFieldRing):
        return "k_p"
    return ring.label()


# -- clique selections ---------------------------------------------------------

@dataclass(frozen=True)
class CliqueSelection:
    """Full cliques (by rank) and partial ones as (rank, number of simples taken)."""

    full: tuple = ()
    partial: tuple = ()

    @property
    def s(self) -> int:
        return len(self.full)

    def is_empty(self) -> bool:
        return not self.full and not self.partial

    def to_json(self):
        return {"full": list(self.full), "partial": [list(p) for p in self.partial]}


def parse_cliques(text: str, Q: AffineQuiver) -> CliqueSelection:
    """``"3"`` = three homogeneous cliques; ``"[2,2]"`` or ``"2,2"`` = explicit ranks;
    ``"2:1"`` inside a list = one simple of a rank-2 clique (partial)."""
    s = text.strip()
    if re.fullmatch(r"\d+", s):
        return select_cliques(Q, [1] * int(s))
    body = s.strip("[]")
    full, partial = [], []
    for tok in filter(None, (t.strip() for t in body.split(","))):
        m = re.fullmatch(r"(\d+)(?::(\d+))?", tok)
        if not m:
            raise BadCliques(f"bad clique token {tok!r}")
        if m.group(2) is None:
            full.append(int(m.group(1)))
        else:
            partial.append((int(m.group(1)), int(m.group(2))))
    return select_cliques(Q, full, partial)


def select_cliques(Q: AffineQuiver, full, partial=()) -> CliqueSelection:
    """Validate ranks against the tubes of Q; rank-1 (homogeneous) cliques are unlimited."""
    avail = Counter(c for c in tube_ranks(Q) if c > 1)
    used = Counter()
    for c in full:
        if c < 1:
            raise BadCliques("clique rank must be >= 1")
        if c > 1:
            used[c] += 1
    for c, taken in partial:
        if c < 2 or not 1 <= taken < c:
            raise BadCliques(f"partial clique ({c}:{taken}) must take 1..{c - 1} simples of a rank >= 2 tube")
        used[c] += 1
    for c, n in used.items():
        if n > avail[c]:
            raise BadCliques(f"{Q.name} has {avail[c]} tube(s) of rank {c}, {n} requested")
    return CliqueSelection(tuple(sorted(full, reverse=True)), tuple(sorted(partial, reverse=True)))


def all_full_selections(Q: AffineQuiver, homogeneous: int = 1) -> list[CliqueSelection]:
    """Every subset of the exceptional tubes, combined with 0..``homogeneous`` rank-1 cliques."""
    ex = [c for c in tube_ranks(Q) if c > 1]
    out = set()
    for mask in range(1 << len(ex)):
        chosen = [c for b, c in enumerate(ex) if mask >> b & 1]
        for h in range(homogeneous + 1):
            sel = select_cliques(Q, chosen + [1] * h)
            if not sel.is_empty():
                out.add(sel)
    return sorted(out, key=lambda x: (x.s, x.full))


def outside_exceptional(Q: AffineQuiver, sel: CliqueSelection) -> tuple:
    """Ranks > 1 of tubes not fully contained in U."""
    rest = Counter(c for c in tube_ranks(Q) if c > 1)
    rest.subtract(c for c in sel.full if c > 1)
    return tuple(sorted(rest.elements(), reverse=True))


# -- trees -----------------------------------------------------------------

@dataclass
class TreeNode:
    ring: RingDescriptor
    status: str
    rule: Optional[str] = None
    citation: Optional[str] = None
    children: list = dc_field(default_factory=list)

    def leaves(self) -> list[RingDescriptor]:
        if self.status == "leaf":
            return [self.ring]
        return [x for c in self.children for x in c.leaves()]

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def to_json(self) -> dict:
        out = {"ring": self.ring.to_json(), "status": self.status}
        if self.rule is not None:
            out["rule"] = self.rule
        if self.citation is not None:
            out["citation"] = self.citation
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "TreeNode":
        return cls(
            descriptor_from_json(obj["ring"]),
            obj["status"],
            obj.get("rule"),
            obj.get("citation"),
            [cls.from_json(c) for c in obj.get("children", [])],
        )

    def render(self, indent: int = 0) -> list[str]:
        tag = {"leaf": "leaf", "zero": "zero"}.get(self.status, self.rule)
        lines = ["  " * indent + f"{self.ring.label()}  [{tag}]"]
        for c in self.children:
            lines += c.render(indent + 1)
        return lines


def _split(blocks: tuple, cls) -> tuple[RingDescriptor, RingDescriptor]:
    if len(blocks) < 2:
        raise SingleBlock("triangular ring with fewer than two diagonal blocks")
    rest = blocks[1:]
    return blocks[0], rest[0] if len(rest) == 1 else cls(rest)


def rule_triangular(ring) -> tuple[RingDescriptor, RingDescriptor]:
    if isinstance(ring, UpperTriangular):
        first, rest = ring.diagonal[0], ring.diagonal[1:]
        if not rest:
            raise SingleBlock("triangular ring with one diagonal block")
        right = rest[0] if len(rest) == 1 else UpperTriangular(rest, ring.bimodules[1:])
        return first, right
    return _split(ring.diagonal, LowerTriangular)


def rule_gamma(ring: Gamma) -> RingDescriptor:
    if ring.m == 1:
        return PowerSeriesRing()
    return LowerTriangular((PowerSeriesRing(),) + tuple(BaseField() for _ in range(ring.m - 1)))


def rule_hereditary(ring: TameHereditary) -> RingDescriptor:
    r = parse_quiver(ring.quiver).r
    return triangular_k(r)


def rule_tilting(ring: TiltingEnd, alg_closed: bool = True) -> tuple[RingDescriptor, RingDescriptor]:
    if not ring.cliques and not ring.partial:
        raise EmptyU("U must contain at least one simple regular module")
    if alg_closed:
        comps = tuple(LaurentSeriesRing() for _ in ring.cliques)
    else:
        comps = tuple(DivisionRingSymbol(f"Q(C{j + 1})") for j in range(len(ring.cliques)))
    return Adele(comps), TameHereditary(ring.quiver)


class Engine:
    """Deterministic rewrite of a descriptor into a recollement tree."""

    def __init__(self, route: str, alg_closed: bool = True, delta_tag: str = "Δ"):
        self.route = route
        self.alg_closed = alg_closed
        self.delta_tag = delta_tag

    def _exp(self, ring, rule, left, right):
        return TreeNode(ring, "expanded", rule, RULES[rule], [self.expand(left), self.expand(right)])

    def _norm(self, ring, rule, child):
        return TreeNode(ring, "normalized", rule, RULES[rule], [self.expand(child)])

    def expand(self, ring: RingDescriptor) -> TreeNode:
        if ring.kind in LEAF_REGISTRY:
            reason, cite = LEAF_REGISTRY[ring.kind]
            return TreeNode(ring, "leaf", None, f"{reason}: {cite}")
        if isinstance(ring, ZeroRing):
            return TreeNode(ring, "zero")
        if isinstance(ring, TiltingEnd):
            if self.route == "A":
                return self._exp(ring, "tilting", *rule_tilting(ring, self.alg_closed))
            outside = outside_exceptional(parse_quiver(ring.quiver), CliqueSelection(ring.cliques))
            return self._norm(ring, "end_decomposition", UpperTriangular(
                (UniversalLocalization(ring.quiver, ring.cliques, outside), QuotientEnd(ring.cliques)),
                ("Hom(R_U, R_U/R)",),
            ))
        if isinstance(ring, UniversalLocalization):
            if any(c > 1 for c in ring.outside):
                return self._norm(ring, "localization_decomposition", UpperTriangular(
                    (Matrix(2, Dedekind(self.delta_tag)), RelativeQuotientEnd(ring.outside)),
                    ("Hom(R_W, R_W/R_U)",),
                ))
            return self._norm(ring, "two_simple", Matrix(2, Dedekind(self.delta_tag)))
        if isinstance(ring, QuotientEnd):
            return self._norm(ring, "quotient_end", _product(tuple(Gamma(c) for c in ring.cliques)))
        if isinstance(ring, RelativeQuotientEnd):
            return self._norm(ring, "relative_quotient_end",
                              _product(tuple(triangular_k(c - 1) for c in ring.cliques if c > 1)))
        if isinstance(ring, Adele):
            if not ring.components:
                return self._norm(ring, "adele", ZeroRing())
            return self._norm(ring, "adele", _product(ring.components))
        if isinstance(ring, Product):
            if len(ring.factors) == 1:
                return self._norm(ring, "product", ring.factors[0])
            rest = ring.factors[1:]
            return self._exp(ring, "product", ring.factors[0], rest[0] if len(rest) == 1 else Product(rest))
        if isinstance(ring, Matrix):
            return self._norm(ring, "morita", ring.inner)
        if isinstance(ring, (UpperTriangular, LowerTriangular)):
            if len(ring.diagonal) == 1:
                return self._norm(ring, "triangular", ring.diagonal[0])
            return self._exp(ring, "triangular", *rule_triangular(ring))
        if isinstance(ring, Gamma):
            return self._norm(ring, "gamma", rule_gamma(ring))
        if isinstance(ring, TameHereditary):
            return self._norm(ring, "hereditary", rule_hereditary(ring))
        raise ValueError(f"no rule for {ring.kind}")


def _product(factors: tuple) -> RingDescriptor:
    if not factors:
        return ZeroRing()
    return factors[0] if len(factors) == 1 else Product(factors)


# -- reports -------------------------------------------------------------------

@dataclass
class StratReport:
    quiver: str
    r: int
    cliques: CliqueSelection
    route: str
    tree: TreeNode
    delta_tag: Optional[str] = None

    @property
    def leaves(self) -> list[RingDescriptor]:
        return self.tree.leaves()

    @property
    def length(self) -> int:
        return len(self.leaves)

    @property
    def factors(self) -> dict[str, int]:
        counts = {k: 0 for k in FACTOR_KEYS}
        for leaf in self.leaves:
            key = factor_key(leaf)
            counts[key] = counts.get(key, 0) + 1
        return counts

    @property
    def citations(self) -> list[str]:
        return sorted({n.citation for n in self.tree.walk() if n.citation})

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "type": self.quiver,
            "r": self.r,
            "cliques": list(self.cliques.full),
            "partial": [list(p) for p in self.cliques.partial],
            "route": self.route,
            "length": self.length,
            "factors": self.factors,
            "tree": self.tree.to_json(),
            "citations": self.citations,
            "scope": list(SCOPE_NOTES),
        }
        if self.delta_tag is not None:
            out["dedekind_choice"] = self.delta_tag
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, obj: dict) -> "StratReport":
        """Rebuild a report; stored length/factors are checked against the tree by verify_report."""
        rep = cls(
            obj["type"], obj["r"],
            CliqueSelection(tuple(obj["cliques"]), tuple(tuple(p) for p in obj.get("partial", []))),
            obj["route"], TreeNode.from_json(obj["tree"]), obj.get("dedekind_choice"),
        )
        rep.claimed = {"length": obj.get("length"), "factors": obj.get("factors")}
        return rep

    def render(self) -> str:
        head = f"{self.quiver}  r={self.r}  cliques={list(self.cliques.full)}  route {self.route}"
        facs = ", ".join(f"{k}:{v}" for k, v in self.factors.items() if v)
        return "\n".join([head, f"length {self.length}: {{{facs}}}"] + self.tree.render())


def _dedekind_tag(Q: AffineQuiver, sel: CliqueSelection) -> str:
    # canonical choice of the simples adjoined outside U: all but the last in each exceptional tube
    return f"Δ({Q.name}; U={list(sel.full)})"


def _check_full(sel: CliqueSelection):
    if sel.partial:
        raise PartialClique("this stratification needs U to be a union of full cliques")
    if not sel.full:
        raise EmptyU("U must contain at least one clique")


def expand_tilting(Q: AffineQuiver, sel: CliqueSelection, alg_closed: bool = True) -> TreeNode:
    """The general recollement for any U, partial cliques allowed (only full ones index the adèles)."""
    root = TiltingEnd(Q.name, sel.full, sel.partial)
    return Engine("A", alg_closed).expand(root)


def stratify_A(Q: AffineQuiver, sel: CliqueSelection) -> StratReport:
    _check_full(sel)
    tree = Engine("A").expand(TiltingEnd(Q.name, sel.full))
    return StratReport(Q.name, Q.r, sel, "A", tree)


def stratify_B(Q: AffineQuiver, sel: CliqueSelection) -> StratReport:
    _check_full(sel)
    tag = _dedekind_tag(Q, sel)
    tree = Engine("B", delta_tag=tag).expand(TiltingEnd(Q.name, sel.full))
    return StratReport(Q.name, Q.r, sel, "B", tree, tag)


def clique_defect_sum(Q: AffineQuiver) -> int:
    """Σ over all tubes of (rank − 1)."""
    return sum(c - 1 for c in tube_ranks(Q))


def verify_report(rep: StratReport) -> list[str]:
    """Return the list of failed checks (empty when the report is consistent)."""
    failed = []
    leaves = rep.leaves
    claimed = getattr(rep, "claimed", None)
    if claimed:
        if claimed["length"] is not None and claimed["length"] != len(leaves):
            failed.append(f"length: claimed {claimed['length']}, tree has {len(leaves)} leaves")
        if claimed["factors"] is not None and claimed["factors"] != rep.factors:
            failed.append("factors: claimed multiset differs from the tree leaves")
    Q = parse_quiver(rep.quiver)
    if Q.r != rep.r:
        failed.append(f"r: report says {rep.r}, quiver has {Q.r}")
    s = rep.cliques.s
    f = rep.factors
    if rep.route == "A":
        want = {"k": Q.r, "k[[x]]": 0, "k((x))": s, "dedekind": 0}
        if len(leaves) != Q.r + s:
            failed.append(f"route A length {len(leaves)} != r+s = {Q.r + s}")
    else:
        want = {"k": Q.r - 2, "k[[x]]": s, "k((x))": 0, "dedekind": 1}
        if len(leaves) != Q.r + s - 1:
            failed.append(f"route B length {len(leaves)} != r+s-1 = {Q.r + s - 1}")
    if f != want:
        failed.append(f"factors {f} != expected {want}")
    if clique_defect_sum(Q) != Q.r - 2:
        failed.append(f"sum of (c-1) over tubes is {clique_defect_sum(Q)}, r-2 = {Q.r - 2}")
    for node in rep.tree.walk():
        if node.status == "leaf":
            entry = LEAF_REGISTRY.get(node.ring.kind)
            if entry is None or node.citation != f"{entry[0]}: {entry[1]}":
                failed.append(f"leaf {node.ring.label()} is not a registered derived-simple ring")
        elif node.status in ("expanded", "normalized"):
            if RULES.get(node.rule) != node.citation:
                failed.append(f"node {node.ring.label()} cites unknown rule {node.rule!r}")
            want_children = 2 if node.status == "expanded" else 1
            if len(node.children) != want_children:
                failed.append(f"node {node.ring.label()} has {len(node.children)} children")
        elif node.status != "zero":
            failed.append(f"unknown node status {node.status!r}")
    return failed

"""Seeded invariant suites, one per module.

Each suite returns a :class:`CheckResult`; ``verify-all`` runs them all.
Sample counts scale with ``n`` so ``--quick`` can shrink them.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field as dc_field

from . import kronrep as kr
from . import linalg as la
from .adele import (
    AdeleElem, IndexFamily, UpsilonElem, localize_to_adele, random_adele, random_integral,
    upsilon_denominator_check,
)
from .extfield import make_ext_field
from .fields import QQ, PrimeField
from .localize import DeltaSet, d_member, iterated_localization_check, random_fraction
from .poly import Poly, is_irreducible, monic_polys, parse_poly
from .quiver import (
    KRONECKER, builtin_types, classify, defect, delta_bound, delta_multiplicity, euler_form,
    exceptional_ranks, radical_vector, simple_regular_vectors,
)
from .series import LaurentElem, TruncatedSeries
from .strat import all_full_selections, clique_defect_sum, stratify_A, stratify_B, verify_report
from .tube import delta, epsilon_compose, gamma_localization_witness, gamma_ring, pi, pi_law_check, PruferMapSymbol


@dataclass
class CheckResult:
    name: str
    passed: bool
    samples: int = 0
    failures: list = dc_field(default_factory=list)
    seconds: float = 0.0

    def to_json(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "samples": self.samples,
            "failures": self.failures[:10],
            "seconds": round(self.seconds, 3),
        }


def _run(name, fn, *args):
    t0 = time.perf_counter()
    samples, failures = fn(*args)
    return CheckResult(name, not failures, samples, failures, time.perf_counter() - t0)


def fields_suite(rng: random.Random, n: int):
    fields = [PrimeField(2), PrimeField(3), PrimeField(5), QQ,
              make_ext_field(parse_poly("x^2+1", PrimeField(3)))]
    count, bad = 0, []
    for F in fields:
        for _ in range(n):
            a, b, c = (F.random_element(rng) for _ in range(3))
            count += 1
            if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c:
                bad.append(f"axioms over {F}")
            if not a.is_zero() and a * a.inverse() != F.one:
                bad.append(f"inverse over {F}")
    # irreducibility vs roots + trial division by every product of two monics
    for p in (2, 3):
        F = PrimeField(p)
        for d in range(1, 5):
            for f in monic_polys(F, d):
                count += 1
                has_root = any(f(x).is_zero() for x in F.elements())
                reducible = has_root or any(
                    g * h == f
                    for e in range(2, d // 2 + 1)
                    for g in monic_polys(F, e)
                    for h in monic_polys(F, d - e)
                )
                if is_irreducible(f) == reducible and d > 1:
                    bad.append(f"irreducible? {f.compact()} over {F}")
    return count, bad


def series_suite(rng: random.Random, n: int):
    F = PrimeField(3)
    bad = []
    for _ in range(n):
        a, b, c = (TruncatedSeries(F, [F.random_element(rng) for _ in range(8)], 8) for _ in range(3))
        if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c:
            bad.append("series ring axioms")
        if a.is_unit() and a * a.inverse() != TruncatedSeries.one(F, 8):
            bad.append("series inverse")
        la_ = LaurentElem(F, rng.randint(-3, 3), [F.random_nonzero(rng)] + [F.random_element(rng) for _ in range(7)])
        if not (la_ * la_.inverse()).agrees_with(LaurentElem.constant(F, 1, 8)):
            bad.append("laurent inverse")
    return n, bad


def quiver_suite(rng: random.Random, n: int):
    bad, count = [], 0
    for Q in builtin_types():
        count += 1
        h = radical_vector(Q)
        if euler_form(h, h, Q) != 0 or defect(h, Q) != 0:
            bad.append(f"radical {Q.name}")
        srv = simple_regular_vectors(Q)
        if len(srv["exceptional"]) != sum(exceptional_ranks(Q)):
            bad.append(f"simple regulars {Q.name}")
        for u in srv["homogeneous"] + srv["exceptional"]:
            if classify(u, Q) != "regular":
                bad.append(f"{u} not regular in {Q.name}")
            d = delta_multiplicity(u, Q)
            if not 0 < d <= delta_bound(Q):
                bad.append(f"delta {u} in {Q.name}")
        if clique_defect_sum(Q) != Q.r - 2:
            bad.append(f"sum (c-1) {Q.name}")
    return count, bad


def homext_suite(rng: random.Random, n: int):
    F = PrimeField(3)
    bad = []
    for _ in range(n):
        X, Y = kr.random_rep(F, rng), kr.random_rep(F, rng)
        lhs = kr.hom_space(X, Y).dimension - kr.ext_dim_oracle(X, Y)
        if lhs != euler_form(X.dim, Y.dim, KRONECKER):
            bad.append({"X": X.dim, "Y": Y.dim})
    return n, bad


def delta_suite(rng: random.Random, n: int):
    F = PrimeField(3)
    V, R = kr.simple_regular_V(F), kr.regular_module_R(F)
    bad = []
    by_euler = delta_multiplicity((1, 1), KRONECKER)
    by_oracle = kr.ext_dim_oracle(V, R) - kr.hom_space(V, R).dimension
    if by_euler != 2 or by_oracle != 2:
        bad.append({"euler": by_euler, "oracle": by_oracle})
    return 1, bad


def functor_suite(rng: random.Random, n: int):
    """F is fully faithful: Hom(F M, F N) = k[x]-intertwiners of the x-actions."""
    F = PrimeField(2)
    bad = []
    for _ in range(n):
        a, b = rng.randint(0, 3), rng.randint(0, 3)
        M = [[F.random_element(rng) for _ in range(a)] for _ in range(a)]
        N = [[F.random_element(rng) for _ in range(b)] for _ in range(b)]
        # f (b x a) with f M = N f
        rows = []
        for i in range(b):
            for j in range(a):
                row = [F.zero] * (a * b)
                for k in range(a):
                    row[i * a + k] = row[i * a + k] + M[k][j]
                for k in range(b):
                    row[k * a + j] = row[k * a + j] - N[i][k]
                rows.append(row)
        want = len(la.nullspace(F, rows, a * b)) if a * b else 0
        got = kr.hom_space(kr.functor_F(M, F), kr.functor_F(N, F)).dimension
        if got != want:
            bad.append({"a": a, "b": b, "hom": got, "intertwiners": want})
    return n, bad


def prufer_suite(rng: random.Random, n: int):
    cases = [("x", 2), ("x+1", 2), ("x", 3), ("x^2+1", 3)]
    bad, count = [], 0
    for text, p in cases:
        F = PrimeField(p)
        poly = parse_poly(text, F)
        for level in range(1, 5):
            count += 1
            rep = kr.prufer_end_truncation(poly, level)
            if not rep.ok or rep.end_dimension != level * poly.degree:
                bad.append({"p": text, "field": p, "n": level})
    return count, bad


def tube_suite(rng: random.Random, n: int):
    bad, count = [], 0
    for m in range(1, 7):
        for r, s, t in itertools.product(range(1, m + 1), repeat=3):
            count += 1
            direct = delta(r, s) + delta(s, t) == delta(r, t)
            if (pi_law_check(r, s, t, m) == "Direct") != direct:
                bad.append((r, s, t, m))
        syms = [PruferMapSymbol(r, k, m) for r in range(1, m + 1) for k in range(1, 2 * m + 1)]
        for f in syms:
            for g in (x for x in syms if x.source == f.target):
                for h in (x for x in syms if x.source == g.target):
                    if epsilon_compose(epsilon_compose(f, g), h) != epsilon_compose(f, epsilon_compose(g, h)):
                        bad.append(("assoc", f, g, h))
    return count, bad


def gamma_suite(rng: random.Random, n: int):
    bad = []
    for m in range(1, 9):
        if not gamma_localization_witness(m, 16).ok:
            bad.append(("J^m", m))
        G = gamma_ring(m, 16, PrimeField(3))
        for _ in range(n):
            A, B = G.random_member(rng), G.random_member(rng)
            if not ((A + B).is_member() and (A * B).is_member()):
                bad.append(("closure", m))
    return 8 * n, bad


def localize_suite(rng: random.Random, n: int):
    bad, count = [], 0
    pairs = {
        2: [(["x"], ["x+1"]), (["x^2+x+1"], ["x"]), (["x", "x+1"], ["x^2+x+1"]),
            (["x^3+x+1"], ["x+1"]), ([], ["x"])],
        3: [(["x"], ["x+1"]), (["x^2+1"], ["x+2"]), (["x", "x+1"], ["x+2"]),
            (["x^2+x+2"], ["x"]), (["x+1"], [])],
    }
    for p, ps in pairs.items():
        F = PrimeField(p)
        for d1, d2 in ps:
            D1, D2 = DeltaSet.of(F, d1), DeltaSet.of(F, d2)
            samples = [random_fraction(F, rng, 4, D1 | D2) for _ in range(n)]
            count += len(samples)
            rep = iterated_localization_check(D1, D2, samples)
            bad += rep.counterexamples
        full = DeltaSet.all(F)
        for _ in range(n):
            f, g = random_fraction(F, rng, 4)
            count += 1
            if not d_member(f, g, full):
                bad.append({"all": (f.compact(), g.compact())})
    return count, bad


def adele_suite(rng: random.Random, n: int):
    bad = []
    F = PrimeField(3)
    fam = IndexFamily.uniform(F, 3, cofinite=True)
    for _ in range(n):
        a, b = random_adele(fam, rng, 16), random_adele(fam, rng, 16)
        for res, bound in ((a + b, a.exceptional_set() | b.exceptional_set()),
                           (a * b, a.exceptional_set() | b.exceptional_set()),
                           (-a, a.exceptional_set())):
            if not res.exceptional_set() <= bound:
                bad.append("exceptional set grew")
        if not (a + (-a)).is_integral():
            bad.append("a - a not integral")
    samples = []
    for _ in range(n // 2 or 1):
        ups = UpsilonElem.make(fam, {i: rng.randint(1, 4) for i in fam.indices if rng.random() < 0.6})
        rep = upsilon_denominator_check([random_integral(fam, rng, 16)], ups, 16)
        samples.append(rep)
        if not rep.ok:
            bad.append(rep.failures)
    loc = localize_to_adele(fam, 16, max(5, n // 10), rng)
    bad += loc.failures
    return n + len(samples), bad


def strat_suite(rng: random.Random, n: int):
    bad, count = [], 0
    for Q in builtin_types():
        for sel in all_full_selections(Q, 2):
            a, b = stratify_A(Q, sel), stratify_B(Q, sel)
            count += 1
            if verify_report(a) or verify_report(b) or a.length - b.length != 1:
                bad.append({"type": Q.name, "cliques": list(sel.full)})
    return count, bad


SUITES = [
    ("algebra_base", fields_suite),
    ("series", series_suite),
    ("quiver", quiver_suite),
    ("kronrep.homext", homext_suite),
    ("kronrep.delta", delta_suite),
    ("kronrep.functor", functor_suite),
    ("kronrep.prufer", prufer_suite),
    ("tube", tube_suite),
    ("tube.gamma", gamma_suite),
    ("localize", localize_suite),
    ("adele", adele_suite),
    ("strat", strat_suite),
]


def run_all(seed: int = 0, quick: bool = False) -> list[CheckResult]:
    n = 20 if quick else 200
    out = []
    for name, fn in SUITES:
        rng = random.Random(f"{seed}:{name}")
        out.append(_run(name, fn, rng, n))
    return out

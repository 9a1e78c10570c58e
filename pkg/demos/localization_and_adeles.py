# Dedekind localizations of k[x] and the adele side of the recollement.
import random

from tamestrat.adele import IndexFamily, UpsilonElem, localize_to_adele, random_adele, random_integral, upsilon_denominator_check
from tamestrat.fields import QQ, PrimeField
from tamestrat.localize import DedekindElem, DeltaSet, d_member, iterated_localization_check, parse_fraction, r_u_presentation, random_fraction
from tamestrat.poly import parse_poly

D = DeltaSet.of(QQ, ["x", "x+1"])
a = DedekindElem.make(D, *parse_fraction("1/x", QQ))
b = DedekindElem.make(D, *parse_fraction("1/(x+1)", QQ))
print("(1/x)(1/(x+1)) =", a * b, " support", sorted(p.compact() for p in (a * b).support()))
print("1/(x^2+1) in D:", d_member(parse_poly("1", QQ), parse_poly("x^2+1", QQ), D))
for delta in (DeltaSet.of(QQ, []), D, DeltaSet.all(QQ)):
    print(f"R_U for Delta={delta.tag():10s} ~", r_u_presentation(delta).label())

F = PrimeField(2)
rng = random.Random(0)
d1, d2 = DeltaSet.of(F, ["x"]), DeltaSet.of(F, ["x+1"])
rep = iterated_localization_check(d1, d2, [random_fraction(F, rng, 4, d1 | d2) for _ in range(100)])
print("one-step vs two-step:", rep.samples, "samples,", len(rep.counterexamples), "disagreements")

fam = IndexFamily.uniform(PrimeField(3), 3)
x, y = random_adele(fam, rng, 8), random_adele(fam, rng, 8)
print("exceptional sets", sorted(x.exceptional_set()), sorted(y.exceptional_set()),
      "-> product", sorted((x * y).exceptional_set()))
ups = UpsilonElem.make(fam, {1: 2, 3: 1})
print("Ore check:", upsilon_denominator_check([random_integral(fam, rng, 16)], ups, 16).ok)
print("localization lands in the adeles:", localize_to_adele(fam, 16, 20, rng).ok)

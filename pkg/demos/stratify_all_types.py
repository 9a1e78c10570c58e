# Both stratifications for every built-in type; prints a small table.
from tamestrat.quiver import builtin_types
from tamestrat.strat import all_full_selections, parse_cliques, stratify_A, stratify_B, verify_report
from tamestrat.quiver import KRONECKER

sel = parse_cliques("1", KRONECKER)
print(stratify_A(KRONECKER, sel).render())
print()
print(stratify_B(KRONECKER, sel).render())
print()

print(f"{'type':10s} {'r':>2s} {'cliques':14s} {'|A|':>4s} {'|B|':>4s}  ok")
for Q in builtin_types():
    for s in all_full_selections(Q)[:3]:
        a, b = stratify_A(Q, s), stratify_B(Q, s)
        ok = not verify_report(a) and not verify_report(b)
        print(f"{Q.name:10s} {Q.r:2d} {str(list(s.full)):14s} {a.length:4d} {b.length:4d}  {ok}")

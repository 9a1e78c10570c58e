# Kronecker quiver 2 => 1 over F_3: forms, Hom/Ext and the Pruefer rays.
from tamestrat import kronrep as kr
from tamestrat.fields import PrimeField
from tamestrat.poly import parse_poly
from tamestrat.quiver import KRONECKER, defect, delta_multiplicity, euler_form, radical_vector

F = PrimeField(3)

h = radical_vector(KRONECKER)
print("radical vector", h, "defect of (1,0):", defect((1, 0), KRONECKER))

V = kr.simple_regular_V(F)          # k => k with maps 0 and 1
Vx = kr.functor_F([[0]], F)         # k[x]/(x) pushed through F
R = kr.regular_module_R(F)          # P1 + P2, dimension (3,1)

for name, (X, Y) in {"V,V": (V, V), "V,Vx": (V, Vx), "V,R": (V, R)}.items():
    hom = kr.hom_space(X, Y).dimension
    ext = kr.ext_dim_oracle(X, Y)
    print(f"{name:5s} hom={hom} ext={ext} euler={euler_form(X.dim, Y.dim, KRONECKER)}")

# delta of V two ways: Euler form against dim R, and the cokernel oracle
print("delta(V) =", delta_multiplicity((1, 1), KRONECKER), "=", kr.ext_dim_oracle(V, R))

# End(V_p[n]) grows by deg p per level, like k_p[t]/(t^n)
for text in ("x", "x^2+1"):
    p = parse_poly(text, F)
    dims = [kr.prufer_end_truncation(p, n).end_dimension for n in range(1, 5)]
    print(f"End(V_{text}[n]) dims for n=1..4:", dims)

"""Green functors over cyclic groups: box products, the twisted cyclic
nerve, geometric fixed points and finite stages of a tr tower."""

from hhshadow.exact import FGAbGroup
from hhshadow.mackey import (
    box,
    box_unit_iso,
    burnside,
    constant_tower,
    etilde,
    fixed_point_green,
    fixed_point_mackey,
    geometric_fixed_points,
    green_shadow_check,
    mackey_hh,
    matrix_green,
    phi_vs_etilde,
    tr_tower,
)
from hhshadow.ringbimod import automorphism, cyclic_ring, group_ring


def show(label, F):
    print(f"{label:<28}", ", ".join(f"C_{d}: {FGAbGroup(g.n_gens, g.relations).canonical_string()}" for d, g in ((d, F.level(d)) for d in F.divisors)))


for m in (2, 4):
    show(f"Burnside A_{m}", burnside(m).mackey)
Z = fixed_point_mackey(2, FGAbGroup.free(1))
show("fixed points of Z", Z)
show("Z box Z", box(Z, Z))
print("A_2 box Z -> Z is an iso:", box_unit_iso(Z).is_isomorphism())

show("ẼF_2(A_2)", etilde(burnside(2), 2))
show("Φ_2 A_4", geometric_fixed_points(burnside(4), 2))
print("Φ against the ẼF route on A_4:", "PASS" if phi_vs_etilde(burnside(4), 2).passed else "FAIL")

# the sign action on Z[C_2] makes the Weyl action visible
G = group_ring(2)
R = fixed_point_green(2, G, automorphism(G, [[1, 0], [0, -1]]))
for q, H in enumerate(mackey_hh(R, max_degree=1)):
    show(f"HH_{q} of Z[C_2] with sign", H)

S, M, N = matrix_green(R, 2)
print()
print(green_shadow_check(R, S, M, N, 1))

print()
print(tr_tower(constant_tower(2, cyclic_ring(2), 3), 0).table())

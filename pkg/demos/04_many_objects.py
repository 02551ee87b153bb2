"""Many-object Hochschild homology on Free_{<=2}(A) = {A, A^2}.

The cyclic bar over the two-object category has more generators but the
same homology as the cyclic bar of A; the augmented bar construction is
contractible through its extra degeneracy.
"""

from hhshadow.hochschild import hh
from hhshadow.lincat import Functor, agreement_check, augmented_bar_check, cyclic_bar_cat, free_category, hh_cat
from hhshadow.ringbimod import cyclic_ring, integers

for A in (integers(), cyclic_ring(2)):
    F = free_category(A, 2)
    sizes = [cyclic_bar_cat(F, None, 2, verify=False).levels[q].n_gens for q in range(3)]
    print(f"{F.name}: cyclic bar generators in levels 0..2 = {sizes}")
    print("  hh_cat:", hh_cat(F, max_degree=2))
    print("  hh:    ", hh(A, max_degree=2))
    print("  agreement:", "PASS" if agreement_check(A, 2, 2).passed else "FAIL")

F = free_category(integers(), 2)
I = Functor.identity(F)
print()
print(augmented_bar_check(F, I, I, 0, 1, T=3))

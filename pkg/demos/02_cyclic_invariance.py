"""Cyclic invariance HH(A; M⊙N) ≅ HH(B; N⊙M) through the bicyclic object.

X_{p,q} = M ⊗ B^p ⊗ N ⊗ A^q and Y_{q,p} = N ⊗ A^q ⊗ M ⊗ B^p are related by
moving the N-block to the front.  That map commutes with every face and
degeneracy, and its diagonal computes both sides.
"""

import random

from hhshadow.generate import random_pair, random_triple
from hhshadow.hochschild import bicyclic_swap_check, hattori_stallings, shadow_coherence_check
from hhshadow.ringbimod import automorphism, group_ring, integers, matrix_morita_pair

d = matrix_morita_pair(integers(), 2)
rep = bicyclic_swap_check(d.A, d.B, d.M, d.N, T=3)
print(rep)

# shifting the a-block is not simplicial: the outer faces catch it
bad = bicyclic_swap_check(d.B, d.A, d.N, d.M, T=2, shift=1)
print("\nshifted rotation:", "PASS" if bad.passed else "FAIL", "first failures:", bad.data["failures"][:3])

print("\nrandom instances")
for seed in range(5):
    A, B, M, N = random_pair(random.Random(seed), 2)
    r = bicyclic_swap_check(A, B, M, N, T=2)
    print(f"  seed {seed}: {A.name:>18} / {B.name:<18} diag HH = {r.data['diagonal_X']}  {'ok' if r.passed else 'FAIL'}")

print("\ndegree-0 coherence on a random triple:")
print(shadow_coherence_check(*random_triple(random.Random(1), 2)))

# trace of the identity of A^3 is 3[1]; with the sign twist, t on A lands in order 2
print("\nHS(id on Z^3) =", hattori_stallings(integers(), None, [[[int(i == j)] for j in range(3)] for i in range(3)],
                                           [[[int(i == j)] for j in range(3)] for i in range(3)]).normal_form)
G = group_ring(2)
x = hattori_stallings(G, automorphism(G, [[1, 0], [0, -1]]), [[{0: 1}]], [[{1: 1}]])
print("twisted HS(t) =", x.normal_form, "in", x.group.canonical_string(), "; 2·class is zero:", (2 * x).is_zero())

"""Twisted Hochschild homology of Z[t]/(t^2-1) with φ(t) = -t.

HH^φ_0 is A modulo φ(a)b - ba.  With a = t this gives -2tb, so both
-2t (b = 1) and -2 (b = t) are relations, leaving (Z/2)^2.
"""

from hhshadow.ringbimod import automorphism, cyclic_ring, group_ring, product_algebra
from hhshadow.twisted import TwistedAlgebra, hh_twisted, matrix_twisted_pair, twisted_cyclic_iso_check, twisted_morita_check

A = group_ring(2)
TA = TwistedAlgebra(A, automorphism(A, [[1, 0], [0, -1]]))
print("sign twist:", hh_twisted(TA, max_degree=2))

F = product_algebra(cyclic_ring(3), cyclic_ring(3))
TF = TwistedAlgebra(F, automorphism(F, [[0, 1], [1, 0]]))
print("swap on F_3 x F_3:", hh_twisted(TF, max_degree=1))

U = TA.unit()
print()
print(twisted_cyclic_iso_check(TA, TA, U, U, T=3))

d, TB, TM, TN = matrix_twisted_pair(TA, 2)
print()
print(twisted_morita_check(d, TM, TN))

"""Hochschild homology of Z[x]/(x^2), three ways.

The normalized and unnormalized cyclic bar complexes must agree, and both
must match the small 2-periodic complex A <-0- A <-2x- A <-0- ...
"""

from hhshadow.exact import FGAbGroup, IntMatrix, format_canonical
from hhshadow.hochschild import hh
from hhshadow.ringbimod import dual_numbers, matrix_morita_pair, matrix_algebra
from hhshadow.hochschild import morita_hh_check

A = dual_numbers()
print("A =", A.name, "with basis 1, x")

print("normalized:  ", hh(A, max_degree=3))
print("unnormalized:", hh(A, max_degree=3, normalized=False))

# periodic resolution: d_odd = 0, d_even = multiplication by 2x
two_x = IntMatrix.from_rows([[0, 0], [2, 0]])
print("periodic:     HH_0 =", FGAbGroup.free(2).canonical_string(),
      "| HH_odd =", FGAbGroup(2, two_x).canonical_string(),
      "| HH_even>0 = Z (kernel of 2x)")

# Morita: M_2(A) has the same homology
B = matrix_algebra(A, 2)
print(f"M_2(A) has rank {B.n}; its HH:", hh(B, max_degree=1))
rep = morita_hh_check(matrix_morita_pair(A, 2), max_degree=1)
print("row/column pair:", "PASS" if rep.passed else "FAIL")
print(format_canonical(*hh(A, max_degree=1).forms[1]), "is the torsion-bearing degree")

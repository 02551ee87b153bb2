"""Independent reference computations, built on sympy only.

Nothing here imports hhshadow; these are the values the package is checked
against.
"""

from sympy import Matrix, Poly, ZZ, symbols
from sympy.matrices.normalforms import smith_normal_form


def invariant_factors(rows, ncols=None):
    """Nonzero Smith diagonal of an integer matrix, as positive ints."""
    if not rows or ncols == 0:
        return []
    M = Matrix(rows)
    if M.rows == 0 or M.cols == 0:
        return []
    D = smith_normal_form(M, domain=ZZ)
    return [abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0]


def cokernel_form(rows, n):
    """(free rank, torsion) of Z^n / column span of an n×k matrix."""
    inv = invariant_factors(rows) if rows and rows[0] else []
    return n - len(inv), [d for d in inv if d != 1]


def free_homology(d_in, d_out, n):
    """H at a free Z^n with d_in : Z^n -> Z^a and d_out : Z^b -> Z^n (row lists).

    The kernel of d_in is a pure sublattice, so the torsion of the homology
    equals the torsion of Z^n / im d_out."""
    r_in = len(invariant_factors(d_in)) if d_in and d_in[0] else 0
    inv_out = invariant_factors(d_out) if d_out and d_out[0] else []
    return n - r_in - len(inv_out), [d for d in inv_out if d != 1]


def dual_numbers_hh(max_degree, n=2):
    """HH of Z[x]/(x^n) from its 2-periodic resolution.

    The complex is A in every degree, with d_odd = 0 and d_even = n x^{n-1}·."""
    x = symbols("x")
    mult = [[int(c) for c in reversed(_coeffs(Poly(n * x ** (n - 1) * x ** j, x).rem(Poly(x ** n, x)), n))] for j in range(n)]
    # column j of mult is the image of x^j
    mat = [[mult[j][i] for j in range(n)] for i in range(n)]
    zero = [[0] * n for _ in range(n)]
    out = []
    for q in range(max_degree + 1):
        d_in = None if q == 0 else (zero if q % 2 == 1 else mat)
        d_out = zero if q % 2 == 0 else mat
        out.append(free_homology(d_in, d_out, n))
    return out


def _coeffs(p, n):
    c = p.all_coeffs()
    c = [0] * (n - len(c)) + c
    return c


def twisted_hh0_group_ring(n, k, sign=1):
    """A / span{φ(a)b - ba} for A = Z[C_n] and φ(t^i) = sign^i t^{ki}.

    Works on basis monomials t^i directly; the relators are indexed by the
    exponent pairs (i, j)."""
    cols = []
    for i in range(n):
        for j in range(n):
            v = [0] * n
            v[(k * i + j) % n] += sign ** i
            v[(j + i) % n] -= 1
            cols.append(v)
    rows = [[c[r] for c in cols] for r in range(n)]
    return cokernel_form(rows, n)


def group_homology_cyclic(n, q):
    """H_q(C_n; Z): Z, then Z/n in odd degrees and 0 in positive even ones."""
    if q == 0:
        return 1, []
    return (0, [n]) if q % 2 == 1 else (0, [])


def divisor_count(d):
    return sum(1 for e in range(1, d + 1) if d % e == 0)

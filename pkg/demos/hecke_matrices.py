"""
Hecke matrices of the residual parameter
========================================

The parameter unit(t)*sp_n + unit(t^-1)*sp_n gives a Hecke matrix and its
outer twist.  They are conjugate under all sign changes but not under even
ones.
"""

from so2n.hecke import bound_exponent_so2n, conjugate_under_weyl, eigenvalue, satake_minimal, REFINED
from so2n.params import hecke_matrix_of, render, residual_parameter

n = 4
psi = residual_parameter(n)
print(render(psi))

t = hecke_matrix_of(psi)
print("t_pi  =", [str(m) for m in t.entries])
print("t_pi' =", [str(m) for m in t.outer_twist().entries])

print("D-conjugate:       ", conjugate_under_weyl(t, t.outer_twist(), "D"))
print("extended conjugate:", conjugate_under_weyl(t, t.outer_twist(), "Extended"))

# Satake transform of the standard representation, evaluated on t_pi
f = satake_minimal((1, 0, 0, 0))
print("eigenvalue:", eigenvalue(f, t))

exponent = t.max_magnitude_exponent(0)
print(f"largest exponent {exponent} vs refined cuspidal bound {bound_exponent_so2n(n, REFINED)}")

"""
Twisted character identity on a split torus
===========================================

Pick a regular element of SO(2n), push it to GL(2n) through the norm map,
and compare both sides of the character identity term by term.
"""

from fractions import Fraction

from so2n.endoscopy import NormPair, TorusElementSO, char_GL_twisted, char_SO, check_identities, delta_IV

t = TorusElementSO.from_values(3, [3, 27])
pair = NormPair.of(t)
print("GL side:", [str(x) for x in pair.gl_side.full()])
print("transfer factor:", delta_IV(pair))

s = Fraction(1, 4)
print("SO character:  ", char_SO(s, t))
print("SO' character: ", char_SO(s, t, twist_by_outer=True))
print("GL twisted:    ", char_GL_twisted(s, pair.gl_side))

print(check_identities(4, 3, Fraction(1, 3), 100, seed=0))

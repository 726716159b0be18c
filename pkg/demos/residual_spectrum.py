"""
Where the residual representation comes from
============================================

Build the intertwining product for the longest relative Weyl element,
count its poles at the residue point, and check the character is regular.
"""

from so2n.eisenstein import UnramifiedCharacter, kato_report, multiplicity_one_report
from so2n.lfunctions import build_intertwining_product, normalized_order_at_s0, residue_point
from so2n.roots import LeviDescriptor, longest_relative_element, relative_weyl_set

n = 6
M = LeviDescriptor.product_gl2(n)
print("W(M) has", len(relative_weyl_set(M)), "elements")

w0 = longest_relative_element(M)
prod = build_intertwining_product(w0, M, n)
s0 = residue_point(n)
print("s0 =", [str(s) for s in s0])

# raw product: one simple pole per GL2 block
print("order at s0:", prod.order_at(s0))
for term in prod.pole_terms(s0):
    print("  ", term)

# after normalization nothing is left
print("normalized order:", normalized_order_at_s0(prod, n))

r = kato_report(UnramifiedCharacter.residual(n))
print("regular:", r.regular, " spherical cyclic:", r.spherical_cyclic.value)
print("multiplicity one:", multiplicity_one_report(n).multiplicity_one)

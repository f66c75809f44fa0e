# Generic links of determinantal ideals and their orders along the x-variables.

from linklct.detlink import (
    MatrixSpec,
    computed_link_order,
    determinantal_ideal,
    double_link_check,
    generic_link,
    ord_variable_block,
    resolution_data,
)

# 2x2 minors of a generic 3x2 matrix: codimension 2, three generators.
spec = MatrixSpec(3, 2, 2)
I = determinantal_ideal(spec)
print(I.generators)

# Combine the generators with a 2x3 matrix of fresh t-variables and take I_V : I.
link = generic_link(I, "full", c=spec.c)
print(link.ambient.variables)
for g in link.I_Y.groebner():
    print("  ", g)

# The minors vanish to order 2 at the origin; the linked ideal only to order 1.
print(ord_variable_block(I, I.ring.variables), ord_variable_block(link.I_Y, I.ring.variables))
print(double_link_check(I, link))  # linking back recovers I

# Stage data of the resolution and the predicted link orders.
for st in resolution_data(MatrixSpec(4, 3, 3)):
    print(st.as_dict(), "predicted", st.predicted_link_order)

# Larger shapes use random integer t-entries; three seeds must agree.
rep = computed_link_order(MatrixSpec(4, 3, 3), 1, "specialized")
print(rep.per_seed, rep.computed, rep.predicted, rep.agree)

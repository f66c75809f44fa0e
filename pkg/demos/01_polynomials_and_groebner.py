# Exact polynomials and Groebner bases over the rationals.

from linklct.groebner import Ideal, eliminate, ideal_dimension, ideal_intersect, ideal_quotient, reduced_gb
from linklct.polyring import LEX, RingDescriptor

# A ring is a list of named variables; parsing gives exact polynomials.
R = RingDescriptor.simple(["x", "y", "z"])
p = R.parse("3/2*x^2*y - (x + z)^2")
print(p)             # coefficients stay Fractions
print(p.degree())    # total degree
print(p * p - p**2)  # 0

# Reduced Groebner bases are canonical, so they decide ideal equality.
I = Ideal(R, [R.parse("x*y - z^2"), R.parse("x*z - y^2"), R.parse("y*z - x^2")])
print(reduced_gb(I))       # grevlex by default
print(reduced_gb(I, LEX))
print(ideal_dimension(I))  # a curve in 3-space: dimension 1

# Elimination: the twisted-cubic style parametrisation x = u^2, y = u^3.
S = RingDescriptor.simple(["u", "x", "y"])
E = eliminate(Ideal(S, [S.parse("x - u^2"), S.parse("y - u^3")]), ["u"])
print(E.generators)  # the cusp x^3 - y^2

# Colon and intersection.
T = RingDescriptor.simple(["x", "y"])
J = Ideal(T, [T.parse("x^2"), T.parse("x*y")])
print(ideal_quotient(J, Ideal(T, [T.var("x")])).groebner())  # (x, y)
print(ideal_intersect(Ideal(T, [T.parse("x^2"), T.var("y")]), Ideal(T, [T.var("x")])).groebner())

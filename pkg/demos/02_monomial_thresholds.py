# Thresholds of monomial ideals from an exact linear program.

from linklct.groebner import Ideal
from linklct.lct import PUBLISHED_TRIANGLE_LCT, howald_lct, weight_bound
from linklct.polyring import RingDescriptor
from linklct.simplexq import LpProblem, lp_solve

R = RingDescriptor.simple(["x1", "x2", "x3"])


def ideal(*texts):
    return Ideal(R, [R.parse(t) for t in texts])


# maximize sum(beta) with sum_j beta_j v_j <= 1 over the exponent vectors v_j
res = howald_lct(ideal("x1^2*x2", "x3^3"))
print(res.value)                # 5/6
print(res.certificate.primal)   # (1/2, 1/3)
print(res.weights)              # the dual is a weight vector ...
print(weight_bound(ideal("x1^2*x2", "x3^3"), res.weights))  # ... whose bound is tight

print(howald_lct(ideal("x1^2", "x1*x2", "x2^2")).value)  # 1

# The triangle ideal: summing the three constraints gives 2*sum(beta) <= 3.
tri = howald_lct(ideal("x1*x2", "x2*x3", "x3*x1"))
print(tri.value, tri.certificate.primal, tri.certificate.dual)
print("published value", PUBLISHED_TRIANGLE_LCT, "differs from the certified", tri.value)

# The solver underneath works on any LP and always returns a checked certificate.
cert = lp_solve(LpProblem([1], [[1]], [-1]))
print(cert.status, cert.farkas)  # infeasible, with a Farkas vector

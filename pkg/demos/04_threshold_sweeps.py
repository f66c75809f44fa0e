# Closed-form thresholds of determinantal ideals and the arithmetic sweeps.

from linklct import lct
from linklct.detlink import MatrixSpec

for m, n, r in [(3, 2, 2), (4, 4, 2), (5, 5, 5), (6, 4, 3)]:
    spec = MatrixSpec(m, n, r)
    res = lct.lct_determinantal(spec)
    print((m, n, r), "lct", res.value, "at t =", res.certificate, "codim", spec.c)

# Where does the threshold drop below the codimension?
strict = [(m, n, r) for m in range(1, 7) for n in range(1, m + 1) for r in range(1, n + 1)
          if lct.lct_determinantal(MatrixSpec(m, n, r)).value < MatrixSpec(m, n, r).c]
print(len(strict), strict[:5])

for name, rep in [
    ("stage bound", lct.verify_stage_bound(12)),
    ("equal thresholds", lct.verify_equal_thresholds(30)),
    ("degree identity", lct.verify_generating_degree_identity(30)),
]:
    print(name, len(rep.cases), rep.all_pass)
    for note in rep.notes:
        print("  note:", note)

# The strict case (4,4,2) in detail: the first stage attains the threshold.
print(lct.equal_threshold_case(4, 4, 2))

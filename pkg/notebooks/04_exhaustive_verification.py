"""
Checking small instances by enumeration
=======================================

Every coloring is scanned in color-word order; the first failure is
reported with a certificate.
"""

from connmatch import MultipartiteSpec, verify_thm2, verify_thm3

rep = verify_thm2(MultipartiteSpec((2, 1, 1)), 2, 1)
print(rep.outcome, rep.colorings_checked, "colorings")

# K_4 is one vertex short; forcing the run exposes a counterexample
rep = verify_thm2(MultipartiteSpec((1, 1, 1, 1)), 2, 2, force=True)
print(rep.outcome, "word", rep.counterexample["word"], "alpha'_*", rep.counterexample["alpha_star"])

# 3^15 colorings of K_6; takes a few seconds
rep = verify_thm3(2, 2, 2)
print(rep.outcome, rep.colorings_checked, f"{rep.wall_time:.1f}s")

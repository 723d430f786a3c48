"""
Bad partitions and the stability audit
======================================

A bad partition certifies that a coloring looks like one of the extremal
pictures.  Every inequality is evaluated with exact fractions.
"""

from connmatch import MultipartiteSpec, audit_stability, bad_partition_witness, check_bad_partition

host = MultipartiteSpec((10, 10, 10))
for kind in (1, 2):
    g, cert = bad_partition_witness(kind, 10, host)
    check = check_bad_partition(g, 10, cert)
    print(f"kind {kind}: lambda={cert.lam}, passed={check.passed}")
    for clause in check.clauses:
        print(f"   {clause.name:9} {clause.lhs} <= {clause.rhs}")

# desk-scale constants cannot reach the proven regime, so the audit says so
g, _ = bad_partition_witness(2, 10, host)
rep = audit_stability(g, 10, "0.1", "0.01")
print(rep.outcome, "probative:", rep.probative)
for v in rep.regime_violations:
    print("  ", v)

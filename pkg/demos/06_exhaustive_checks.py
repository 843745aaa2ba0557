"""
Exhaustive checks on small grids
================================

Every pattern of a 3x3 grid (a=b=1): regular patterns are recovered by the
constructed code, non-regular ones defeat a generic code. On a 3x3 grid with
a=2 every regular pattern is tested against a generic code; any failure
would be a counterexample candidate for sufficiency beyond a=1.
"""

from prodmrc import Topology
from prodmrc.oracle import explore_conjecture_a2, verify_equivalence_a1, verify_extended_a2, verify_mds_consequences

rep = verify_equivalence_a1(Topology(3, 3, 1, 1))
print("a=1 equivalence:", rep.summary_line(), f"({rep.extra['regular']} regular)")

rep = verify_extended_a2(Topology(3, 3, 1, 1))
print("extended patterns:", rep.summary_line())

rep = explore_conjecture_a2(Topology(3, 3, 2, 1))
print("a=2 generic classification:", rep.summary_line())

rep = verify_mds_consequences(Topology(3, 4, 1, 1))
print("generic code properties:", rep.summary_line())

# first few JSON records
print("\n".join(rep.to_jsonl().splitlines()[:3]))

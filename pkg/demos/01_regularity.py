"""
Regular erasure patterns
========================

A 6x10 grid with one parity per column (a=1) and two per row (b=2). A
pattern is regular when no subgrid U x V holds more than
uv - (u-a)(v-b) erasures.
"""

from prodmrc import ErasurePattern, Topology, enclosing_grid, format_pattern, is_regular, row_profiles
from prodmrc.patterns import is_row_irreducible, reduce_rowwise

t = Topology(6, 10, 1, 2)
E = ErasurePattern.from_rows(t, {1: [7, 8, 9, 10], 2: [6, 7, 8], 3: [3, 9, 10], 4: [4, 5, 6], 5: [3, 4, 5]})
print(format_pattern(E))

# regular, and every row with erasures has more than b of them
print("regular:", bool(is_regular(E)), " row-irreducible:", is_row_irreducible(E))
g = enclosing_grid(E)
print("enclosing grid rows", sorted(g.rows), "cols", sorted(g.cols))
print("excess per row:", [(p.row, p.excess) for p in row_profiles(E)])

# a 2x2 block breaks the bound for a=b=1: 4 erasures where 3 are allowed
block = ErasurePattern.from_rows(Topology(3, 3, 1, 1), {1: [1, 2], 2: [1, 2]})
r = is_regular(block)
print("\n2x2 block regular:", bool(r), "witness", r.witness, f"({r.erased_in_witness} > {r.bound})")

# rows with at most b erasures can be dropped without changing recoverability
light = ErasurePattern.from_rows(t, {1: [1, 2, 3], 2: [4, 5], 3: [6]})
print("\nbefore reduction rows", light.nonempty_rows(), "after", reduce_rowwise(light).nonempty_rows())

"""
Matching certificates
=====================

Two bipartite graphs certify that the worked example can be recovered.
The first pairs the excess erasures of every row but the chosen right rows
with surviving cells of the right rows. The second (a=1 only) joins the
other rows to the columns that one row leaves intact.
"""

from prodmrc import ErasurePattern, Topology, build_erasure_nonerasure_graph, build_rowcol_graph, complete_matching
from prodmrc import neighborhood_check, row_profiles

E = ErasurePattern.from_rows(Topology(6, 10, 1, 2),
                             {1: [7, 8, 9, 10], 2: [6, 7, 8], 3: [3, 9, 10], 4: [4, 5, 6], 5: [3, 4, 5]})

for right in ([5], [1]):
    G = build_erasure_nonerasure_graph(E, right)
    M = complete_matching(G)
    cols = sorted(j for _, j in M.pairs.values())
    print(f"right row {right[0]}: {len(G.left)} excess erasures matched into columns {cols}")

# row 2 removed: left side rows {1,3,4,5}, right side V minus row 2's erasures
G = build_rowcol_graph(E, 2)
print("\nrow/column graph for row 2")
for u in G.left:
    print(f"  row {u} -> columns {list(G.neighbors(u))}")
excess = {p.row: p.excess for p in row_profiles(E)}
print("every subset A has |N(A)| >= sum of excess:", neighborhood_check(G, excess))

# graphviz source, for rendering elsewhere
print()
print(G.to_dot("rowcol"))

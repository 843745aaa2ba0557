"""
Building a code for one pattern
===============================

The row code gets identity rows for columns outside the enclosing grid and
r_i rows per erased row, each supported on b shared columns of that row plus
one more. The column code is a single parity. Their tensor product is
instantiated with random field elements and checked by rank.
"""

from prodmrc import DEFAULT_Q, ErasurePattern, Field, Topology, build_grow, proof_decomposition, sample_code

E = ErasurePattern.from_rows(Topology(6, 10, 1, 2),
                             {1: [7, 8, 9, 10], 2: [6, 7, 8], 3: [3, 9, 10], 4: [4, 5, 6], 5: [3, 4, 5]})

Grow, plan = build_grow(E)
print("symbolic row generator:")
print(Grow.pretty())

code = sample_code(E, Field(DEFAULT_Q), seed=0)
print(f"\nG is {code.G.rows}x{code.G.cols}; rank on surviving cells {code.punctured_rank} "
      f"(needs {E.topology.k}); attempts {code.attempts}")

# the block structure behind the rank argument, with the parity at row 5
print()
print(proof_decomposition(E, plan, parity_row=5).summary())

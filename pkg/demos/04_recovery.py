"""
Erase and recover
=================

Encode a random message, drop the erased cells, and solve for them.
"""

import random

import numpy as np

from prodmrc import DEFAULT_Q, ErasurePattern, Field, Topology, decode, encode, erase, is_recoverable_by, is_regular
from prodmrc import sample_code
from prodmrc.errors import NotACodeword

t = Topology(6, 10, 1, 2)
E = ErasurePattern.from_rows(t, {1: [7, 8, 9, 10], 2: [6, 7, 8], 3: [3, 9, 10], 4: [4, 5, 6], 5: [3, 4, 5]})
field = Field(DEFAULT_Q)
code = sample_code(E, field, seed=0)

rng = random.Random(5)
c = encode(code.G, [rng.randrange(field.q) for _ in range(t.k)], t)
received = erase(c, E)
restored = decode(code.G, received)
print("recovered exactly:", restored == c)

# copying row 1's erasures into row 6 overloads the 2x4 subgrid {1,6} x {7..10}
worse = ErasurePattern(t, E.erased | {(6, j) for j in (7, 8, 9, 10)})
print("heavier pattern regular:", bool(is_regular(worse)),
      " recoverable:", is_recoverable_by(code.G, worse).recoverable)

# a corrupted surviving value is caught
vals = received.values.copy()
vals[5, 0] = (int(vals[5, 0]) + 1) % field.q
try:
    decode(code.G, type(received)(t, vals, E))
except NotACodeword as exc:
    print("inconsistent at cell", exc.cell)
print("codeword row 1:", np.asarray(c.values[0]).tolist())

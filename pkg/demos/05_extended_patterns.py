"""
Two column parities: extended patterns
======================================

Replicating rows of a regular a=1 pattern below it gives a pattern that is
regular for a=2. A column code [Sigma | Lambda] with the same row code
recovers it.

The determinant argument for the top block needs care here. A replicated
row reuses its source's generator rows, so a matching that puts both
copies on the same Sigma column gives two proportional rows. Another
complete matching does give a nonsingular block.
"""

from prodmrc import DEFAULT_Q, ErasurePattern, Field, Topology, extend_pattern, format_pattern, sample_code_a2
from prodmrc.codegen import a2_top_minor
from prodmrc.patterns import check_extended_regular

base = ErasurePattern.from_rows(Topology(3, 4, 1, 1), {1: [1, 2], 2: [2, 3], 3: [3, 4]})
X = extend_pattern(base, [1, 3])
print(format_pattern(X.result))
print("regular for a=2:", check_extended_regular(X))

code = sample_code_a2(X, Field(DEFAULT_Q), seed=0)
print("rank on surviving cells:", code.punctured_rank, "of", X.result.topology.k)

report = a2_top_minor(X)
print("\nfirst matching cells:", report.matched_cells)
print(report.minor.pretty())
print("nonsingular:", report.checks["nonsingular"])
print("nonsingular matching found:", report.alternative)

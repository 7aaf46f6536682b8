"""
Build an LRC and verify it exhaustively
=======================================

(n, k, r) = (8, 4, 3): two repair groups of four columns, each column the
sum of the other three in its group.
"""

from lrcodes import analyze, construct, feasibility, minimum_guaranteed_q, predicted_distance
from lrcodes.construction import verify_selection_property

n, k, r = 8, 4, 3
print(feasibility(n, k, r))
q = minimum_guaranteed_q(n, k)
print("field size with a guaranteed construction:", q)

code = construct(n, k, r, q, seed=0)
print(code.generator)
print("groups:", code.groups)
print("selection property:", verify_selection_property(code))

# brute force and the circuit-union identity must agree; analyze checks that
report = analyze(code)
print(report.summary())
print("predicted:", predicted_distance(n, k, r))

# n = 1 mod (r+1) goes through replication of a column and loses at most one
code = construct(7, 4, 2, 241)
print("(7,4,2) groups:", code.groups)
print(analyze(code).summary())

# some triples are out of reach altogether
print(feasibility(8, 7, 3).reason)

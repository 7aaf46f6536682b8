"""
Erasures, local repair and global decoding
==========================================

A single lost symbol is rebuilt from its repair group. Up to d - 1 losses
are recovered from all surviving symbols.
"""

from lrcodes import construct
from lrcodes.repairsim import decode_global, erase, repair_local, simulate

code = construct(8, 4, 3, 113, seed=0)
y = code.encode([5, 17, 42, 99])
print("codeword:", y)

out = repair_local(code, erase(y, [2]))
print("one erasure:", out.methods, "reads:", out.reads)

# two losses in the same group defeat the group relation ...
out = repair_local(code, erase(y, [0, 1]))
print("same group:", out.methods)
# ... but the whole code still has distance 4
print("global decode:", decode_global(code, erase(y, [0, 1, 2])).unique)
print("four erasures:", decode_global(code, erase(y, [0, 1, 2, 3])))

for e in (1, 3, 4):
    print(simulate(code, 500, e, seed=1))

"""
Operator-matrix codes over F4
=============================

Each entry of the matrix is a map F4 -> F4. Columns of codewords are sums
of the maps applied to the message symbols. beta shifts 00 -> 01 -> 10 -> 11.
"""

from lrcodes.f4family import OPERATORS, encode, family_matrix, fmt_word, verify_family

for name, table in OPERATORS.items():
    print(f"{name:>6}", " ".join(format(v, "02b") for v in table))

M = family_matrix("F1_33", 1)
print(M)
print(fmt_word(encode(M, [1, 2, 3, 0])))

# exhaustive verification of each family at i = 1
for family in ("F1_33", "F2_33", "F1_34"):
    print(family, verify_family(family, 1).summary())

# the printed F2_33 member has two codewords at distance 2
M = family_matrix("F2_33", 1)
print(fmt_word(encode(M, [0, 0, 0, 0, 0])))
print(fmt_word(encode(M, [0, 0, 0, 1, 3])))

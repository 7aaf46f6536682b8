"""
Finite field arithmetic
=======================

Elements are plain integers. Over GF(2^m) an integer is the bit pattern of
the polynomial's coefficients; over GF(p^m) it holds base-p digits.
"""

from lrcodes.gf import F4, field_make, field_of_order

# F4 = GF(2)[x] / (x^2 + x + 1), elements 00, 01, 10, 11
for a in range(4):
    print(F4.fmt(a), [F4.fmt(F4.mul(a, b)) for b in range(4)])

# the class of x generates the multiplicative group
x = F4(2)
print("x, x^2, x^3 =", x, x * x, x * x * x)

# the field size the construction needs for (n, k) = (8, 4) is a prime
GF113 = field_of_order(113)
print("3 / 7 in GF(113) =", GF113.div(3, 7))

# odd-characteristic extensions work too
GF9 = field_make(3, 2)
print("GF(9) modulus digits:", GF9.modulus, "inverse of 4:", GF9.inv(4))

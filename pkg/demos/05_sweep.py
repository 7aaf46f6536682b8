"""
Sweep over small parameters
===========================

Every triple r <= k < n <= 7 is built and measured against its
predicted distance range.
"""

from collections import Counter

from lrcodes import sweep

rows = sweep(7)
print(Counter((row["mode"], row["verdict"]) for row in rows))
print("violations:", [row for row in rows if not row["ok"]])

for row in rows:
    if row["mode"] == "direct" and row["n"] == 7:
        print("({n},{k},{r}) over GF({q}): d = {d_measured}, d_opt = {d_opt}, {rule}".format(**row))

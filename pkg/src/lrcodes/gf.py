"""Finite fields GF(p) and GF(p^m) with integer-encoded elements.

An element of GF(p^m) is stored as the integer whose base-p digits are the
coefficients of its polynomial representative (lowest degree first). For
p = 2 this is the usual coefficient bitmask, so F4 elements 0..3 print as
the two-bit strings "00", "01", "10", "11" and addition is XOR.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

__all__ = [
    "FieldSpec",
    "FieldElement",
    "FieldError",
    "field_make",
    "field_of_order",
    "F4",
    "is_prime",
    "prime_power",
]

# primitive polynomials over GF(2), bitmask incl. leading term
BINARY_MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1011011,
    7: 0b10000011,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10001101111,
    11: 0b100000000101,
    12: 0b1000011101011,
    13: 0b10000000011011,
    14: 0b100000010101001,
    15: 0b1000000000110101,
    16: 0b10000000000101101,
}

TABLE_LIMIT = 1 << 16


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_power(q: int) -> Optional[tuple[int, int]]:
    """Return (p, m) with q = p**m, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        p = q
    m = 0
    while q % p == 0:
        q //= p
        m += 1
    return (p, m) if q == 1 else None


# --- polynomials over GF(p) as digit lists (low degree first) ---

def _digits(v: int, p: int) -> list[int]:
    out = []
    while v:
        v, d = divmod(v, p)
        out.append(d)
    return out


def _undigits(ds, p: int) -> int:
    v = 0
    for d in reversed(ds):
        v = v * p + d
    return v


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _is_irreducible(mod: list[int], p: int) -> bool:
    deg = len(mod) - 1
    # trial division by every monic polynomial of degree 1..deg//2
    for d in range(1, deg // 2 + 1):
        for low in range(p**d):
            cand = _digits(low, p) + [0] * (d - len(_digits(low, p))) + [1]
            if not _poly_mod(mod, cand, p):
                return False
    return True


@lru_cache(maxsize=None)
def _default_modulus(p: int, m: int) -> int:
    if p == 2 and m in BINARY_MODULI:
        return BINARY_MODULI[m]
    # smallest monic primitive polynomial in base-p order
    lead = p**m
    for low in range(1, lead):
        mod = _digits(lead + low, p)
        if not _is_irreducible(mod, p):
            continue
        spec = FieldSpec(p, m, lead + low, _checked=True)
        if spec.q <= TABLE_LIMIT and spec._generator_is_x():
            return lead + low
        if spec.q > TABLE_LIMIT:
            return lead + low
    raise FieldError(f"no irreducible polynomial found for GF({p}^{m})")


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m); immutable and hashable, elements are ints in [0, q)."""

    p: int
    m: int = 1
    modulus: Optional[int] = None
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if self._checked:
            return
        if not is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise FieldError(f"extension degree must be >= 1, got {self.m}")
        if self.m == 1:
            if self.modulus is not None:
                raise FieldError("prime fields take no modulus")
            return
        if self.modulus is None:
            raise FieldError("extension fields need a modulus (use field_make)")
        mod = _digits(self.modulus, self.p)
        if len(mod) != self.m + 1:
            raise FieldError(f"modulus {self.modulus} does not have degree {self.m}")
        if not _is_irreducible(mod, self.p):
            raise FieldError(f"modulus {self.modulus} is reducible over GF({self.p})")

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={self.modulus})"

    # tables live outside the frozen dataclass to keep hashing cheap
    @property
    def _tables(self):
        return _tables(self)

    def _generator_is_x(self) -> bool:
        q = self.q
        x = self.p  # the polynomial "x"
        v, order = 1, 0
        while True:
            v = self._slow_mul(v, x)
            order += 1
            if v == 1:
                return order == q - 1
            if order >= q:
                return False

    def _slow_mul(self, a: int, b: int) -> int:
        p = self.p
        prod = _poly_mul(_digits(a, p), _digits(b, p), p)
        return _undigits(_poly_mod(prod, _digits(self.modulus, p), p), p)

    # --- element arithmetic on ints ---

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element of {self!r}")
        return a

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._digitwise(a, b, 1)

    def sub(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self._digitwise(a, b, -1)

    def neg(self, a: int) -> int:
        return self.sub(0, a)

    def _digitwise(self, a: int, b: int, sign: int) -> int:
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + sign * db) % p) * scale
            scale *= p
        return out

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        t = self._tables
        if t is None:
            return self._slow_mul(a, b)
        exp, log = t
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        t = self._tables
        if t is None:
            return self.pow(a, self.q - 2)
        exp, log = t
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if self.m == 1:
            return pow(a, e, self.p)
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def elements(self) -> range:
        return range(self.q)

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self.check(int(value)), self)

    def fmt(self, a: int) -> str:
        """Binary fields print as fixed-width bit strings, others as ints."""
        if self.p == 2 and self.m > 1:
            return format(a, f"0{self.m}b")
        return str(a)

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": self.modulus}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        return field_make(obj["p"], obj.get("m", 1), obj.get("modulus"))


@lru_cache(maxsize=64)
def _tables(spec: FieldSpec):
    q = spec.q
    if spec.m == 1 or q > TABLE_LIMIT:
        return None
    # find a primitive element (x itself for the fixed binary table)
    gen = None
    for g in range(spec.p, q):
        v, order = 1, 0
        while True:
            v = spec._slow_mul(v, g)
            order += 1
            if v == 1:
                break
        if order == q - 1:
            gen = g
            break
    exp = [0] * (2 * q)
    log = [0] * q
    v = 1
    for i in range(q - 1):
        exp[i] = v
        log[v] = i
        v = spec._slow_mul(v, gen)
    for i in range(q - 1, 2 * q):
        exp[i] = exp[i - (q - 1)]
    return exp, log


@dataclass(frozen=True)
class FieldElement:
    """An element bound to its field; operators refuse to mix fields."""

    value: int
    field: FieldSpec

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"cannot combine {self.field!r} and {other.field!r}")
            return other.value
        return self.field.check(int(other))

    def __add__(self, other):
        return FieldElement(self.field.add(self.value, self._other(other)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field.sub(self.value, self._other(other)), self.field)

    def __rsub__(self, other):
        return FieldElement(self.field.sub(self._other(other), self.value), self.field)

    def __neg__(self):
        return FieldElement(self.field.neg(self.value), self.field)

    def __mul__(self, other):
        return FieldElement(self.field.mul(self.value, self._other(other)), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field.div(self.value, self._other(other)), self.field)

    def inv(self):
        return FieldElement(self.field.inv(self.value), self.field)

    def __int__(self):
        return self.value

    def __str__(self):
        return self.field.fmt(self.value)


def field_make(p: int, m: int = 1, modulus: Optional[int] = None) -> FieldSpec:
    """Validated field constructor; picks the default modulus when omitted."""
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if m < 1:
        raise FieldError(f"extension degree must be >= 1, got {m}")
    if m == 1:
        if modulus not in (None, p):
            raise FieldError("prime fields take no modulus")
        return FieldSpec(p, 1, None)
    if modulus is None:
        modulus = _default_modulus(p, m)
    return FieldSpec(p, m, modulus)


def field_of_order(q: int) -> FieldSpec:
    pm = prime_power(q)
    if pm is None:
        raise FieldError(f"{q} is not a prime power")
    return field_make(*pm)


F4 = field_make(2, 2, 0b111)

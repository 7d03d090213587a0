"""Arithmetic in GF(2^k) with elements encoded as ints 0 .. 2^k - 1.

Bit i of the encoding is the coefficient of x^i in the polynomial basis.
Only small k is supported; multiplication is fully tabulated.
"""

from __future__ import annotations

from .errors import InvalidSpec

# Conway-free choice: lexicographically least irreducible of each degree.
_MODULI = {
    1: 0b11,        # x + 1 (GF(2))
    2: 0b111,       # x^2 + x + 1
    3: 0b1011,      # x^3 + x + 1
    4: 0b10011,     # x^4 + x + 1
    5: 0b100101,    # x^5 + x^2 + 1
    6: 0b1000011,   # x^6 + x + 1
    7: 0b10000011,  # x^7 + x + 1
    8: 0b100011011, # x^8 + x^4 + x^3 + x + 1
}


class GF2k:
    """The field GF(2^k) with precomputed multiplication and inverse tables."""

    def __init__(self, deg: int):
        if deg not in _MODULI:
            raise InvalidSpec(f"unsupported GF(2^k) extension degree {deg}")
        self.deg = deg
        self.size = 1 << deg
        self.modulus = _MODULI[deg]
        self.mul_table = [[self._mul_slow(a, b) for b in range(self.size)]
                          for a in range(self.size)]
        self.inv_table = [0] * self.size
        for a in range(1, self.size):
            row = self.mul_table[a]
            self.inv_table[a] = row.index(1)

    def _mul_slow(self, a: int, b: int) -> int:
        acc = 0
        top = 1 << self.deg
        while b:
            if b & 1:
                acc ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= self.modulus
        return acc

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(2^k)")
        return self.inv_table[a]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        acc = 1
        while n:
            if n & 1:
                acc = self.mul(acc, a)
            a = self.mul(a, a)
            n >>= 1
        return acc


_FIELDS: dict[int, GF2k] = {}


def gf2k(deg: int) -> GF2k:
    """Shared field instance for the given extension degree."""
    if deg not in _FIELDS:
        _FIELDS[deg] = GF2k(deg)
    return _FIELDS[deg]

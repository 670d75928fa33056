"""Exact base-field arithmetic for Q and prime fields F_p.

Scalars are raw values: `Fraction` in characteristic 0, ints in [0, p) in
characteristic p.  A `Field` object supplies the operations, so downstream
linear algebra never touches floating point.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero, NonPrimeCharacteristic

MAX_PRIME = 2**31


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """Arithmetic context for Q (characteristic 0) or F_p (p prime)."""

    __slots__ = ("char",)

    def __init__(self, characteristic: int):
        if characteristic != 0 and (characteristic >= MAX_PRIME or not _is_prime(characteristic)):
            raise NonPrimeCharacteristic(
                f"characteristic must be 0 or a prime below 2^31, got {characteristic}"
            )
        self.char = characteristic

    def __repr__(self):
        return "Q" if self.char == 0 else f"F_{self.char}"

    def __eq__(self, other):
        return isinstance(other, Field) and self.char == other.char

    def __hash__(self):
        return hash(("Field", self.char))

    # -- element construction ------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.char == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.char == 0 else 1

    def of(self, x):
        """Coerce an int, Fraction, or "num/den" string into this field."""
        if isinstance(x, str):
            num, _, den = x.partition("/")
            x = Fraction(int(num), int(den)) if den else Fraction(int(num))
        if self.char == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.char == 0:
                raise DivisionByZero(f"denominator of {x} vanishes mod {self.char}")
            return x.numerator * pow(x.denominator, -1, self.char) % self.char
        return x % self.char

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        return a + b if self.char == 0 else (a + b) % self.char

    def sub(self, a, b):
        return a - b if self.char == 0 else (a - b) % self.char

    def mul(self, a, b):
        return a * b if self.char == 0 else (a * b) % self.char

    def neg(self, a):
        return -a if self.char == 0 else (-a) % self.char

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        if self.char == 0:
            return 1 / Fraction(a)
        return pow(a, self.char - 2, self.char)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- helpers -------------------------------------------------------------

    def rand(self, rng, lo: int = -9, hi: int = 9):
        """Uniform scalar for rejection sampling; small ints over Q."""
        if self.char == 0:
            return Fraction(rng.randint(lo, hi))
        return rng.randrange(self.char)

    def scalar_to_json(self, a):
        if self.char == 0:
            return f"{a.numerator}/{a.denominator}"
        return int(a)

    def scalar_from_json(self, obj):
        return self.of(obj)

    def to_json(self):
        return {"char": self.char}

    @staticmethod
    def from_json(obj) -> "Field":
        return Field(int(obj["char"]))


def make_field(characteristic: int) -> Field:
    """Build the field Q (characteristic 0) or F_p (p prime)."""
    return Field(characteristic)


def scalar_inv(field: Field, x):
    """Multiplicative inverse of a nonzero scalar."""
    return field.inv(x)

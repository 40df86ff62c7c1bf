"""Totally ordered commutative semirings: exact real, tropical (min,+), Boolean.

All arithmetic is exact.  Real and tropical elements are
``fractions.Fraction``; the tropical additive identity is the distinguished
value ``INF`` (never a sentinel number).  Boolean elements are the ints 0/1.
"""

from __future__ import annotations

import warnings
from fractions import Fraction

from .errors import SemiringMismatchError


class _TropicalInf:
    """Tropical +infinity, the additive identity of the (min,+) semiring."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __hash__(self):
        return hash("tropical-inf")


INF = _TropicalInf()


def _fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


class Semiring:
    """A totally ordered commutative semiring instance.

    Subclasses fix the carrier set, the two monoid operations, the total
    order, and a string encoding.  Values themselves are plain Python
    objects; the semiring object owns all operations on them.
    """

    tag: str

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def check(self, a):
        """Return ``a`` normalized, or raise if it is not a valid element."""
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def leq(self, a, b) -> bool:
        raise NotImplementedError

    def is_nonneg(self, a) -> bool:
        """True iff the additive identity is <= a in the total order."""
        return self.leq(self.zero, self.check(a))

    def is_zero(self, a) -> bool:
        return self.check(a) == self.zero

    def pow(self, a, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out = self.one
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def format(self, a) -> str:
        raise NotImplementedError

    def parse(self, s):
        raise NotImplementedError

    def __repr__(self):
        return f"<semiring {self.tag}>"


class RealSemiring(Semiring):
    tag = "real"

    zero = Fraction(0)
    one = Fraction(1)

    def check(self, a):
        if isinstance(a, bool) or not isinstance(a, (int, Fraction)):
            raise SemiringMismatchError(f"not a real-semiring value: {a!r}")
        return Fraction(a)

    def add(self, a, b):
        return self.check(a) + self.check(b)

    def mul(self, a, b):
        return self.check(a) * self.check(b)

    def leq(self, a, b):
        return self.check(a) <= self.check(b)

    def format(self, a):
        return _fraction_str(self.check(a))

    def parse(self, s):
        return Fraction(s)


class TropicalSemiring(Semiring):
    """(R u {inf}, min, +): addition is min, multiplication is real addition."""

    tag = "tropical"

    zero = INF
    one = Fraction(0)

    def check(self, a):
        if a is INF:
            return a
        if isinstance(a, bool) or not isinstance(a, (int, Fraction)):
            raise SemiringMismatchError(f"not a tropical value: {a!r}")
        return Fraction(a)

    def add(self, a, b):
        a, b = self.check(a), self.check(b)
        if a is INF:
            return b
        if b is INF:
            return a
        return min(a, b)

    def mul(self, a, b):
        a, b = self.check(a), self.check(b)
        if a is INF or b is INF:
            return INF
        return a + b

    def leq(self, a, b):
        # The usual order on the reals, with INF as the top element.
        a, b = self.check(a), self.check(b)
        if b is INF:
            return True
        if a is INF:
            return False
        return a <= b

    def is_nonneg(self, a):
        # Literally 0_R <= a with 0_R = INF: only INF itself qualifies.
        return self.check(a) is INF

    def format(self, a):
        a = self.check(a)
        return "inf" if a is INF else _fraction_str(a)

    def parse(self, s):
        return INF if s == "inf" else Fraction(s)


class BoolSemiring(Semiring):
    tag = "bool"

    zero = 0
    one = 1

    def check(self, a):
        if a is True or a is False:
            return int(a)
        if not isinstance(a, int) or a not in (0, 1):
            raise SemiringMismatchError(f"not a Boolean value: {a!r}")
        return a

    def add(self, a, b):
        return self.check(a) | self.check(b)

    def mul(self, a, b):
        return self.check(a) & self.check(b)

    def leq(self, a, b):
        return self.check(a) <= self.check(b)

    def format(self, a):
        return str(self.check(a))

    def parse(self, s):
        v = int(s)
        return self.check(v)


REAL = RealSemiring()
TROPICAL = TropicalSemiring()
BOOL = BoolSemiring()

_BY_TAG = {"real": REAL, "tropical": TROPICAL, "bool": BOOL}


def by_tag(tag: str) -> Semiring:
    try:
        return _BY_TAG[tag]
    except KeyError:
        raise SemiringMismatchError(f"unknown semiring tag {tag!r}") from None


def warn_tropical_nonneg(context: str):
    """The literal tropical 'non-negative' predicate admits only INF."""
    warnings.warn(
        f"{context}: over the tropical instance the only non-negative "
        "constant is inf (the additive identity); monotone constants are "
        "degenerate under the literal definition",
        stacklevel=3,
    )

"""Coefficient rings: the integers, the rationals and prime fields.

Elements are plain Python values: ``int`` over Z, ``fractions.Fraction``
over Q, and ``int`` residues in ``range(p)`` over F_p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class CoefficientRing:
    """One of ``Z``, ``Q`` or ``F_p``.

    Use the module-level constants ``ZZ`` and ``QQ`` or :func:`GF`.
    """

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "F"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "F" and not _is_prime(self.p):
            raise ValueError(f"F_p needs a prime p, got {self.p}")
        if self.kind != "F" and self.p != 0:
            raise ValueError("only prime fields carry a characteristic")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def __call__(self, x):
        """Coerce ``x`` (int, Fraction, or string) into the ring."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.kind == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return x.numerator
            return int(x)
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ValueError(f"{x} has no residue mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def normalize(self, x):
        """Reduce an already-typed value (cheap path for arithmetic results)."""
        if self.kind == "F":
            return x % self.p
        return x

    def is_unit(self, x) -> bool:
        if self.kind == "Z":
            return x in (1, -1)
        return x != 0

    def inverse(self, x):
        if self.kind == "Z":
            if x not in (1, -1):
                raise ZeroDivisionError(f"{x} is not a unit in Z")
            return x
        if self.kind == "Q":
            return 1 / Fraction(x)
        return pow(x, -1, self.p)

    def render(self, x) -> str:
        return str(x)

    @property
    def tag(self) -> str:
        return f"F{self.p}" if self.kind == "F" else self.kind

    def __str__(self):
        return self.tag

    def __repr__(self):
        return f"CoefficientRing({self.tag})"


ZZ = CoefficientRing("Z")
QQ = CoefficientRing("Q")


def GF(p: int) -> CoefficientRing:
    return CoefficientRing("F", p)


def ring_from_tag(tag: str) -> CoefficientRing:
    """Parse ``Z``, ``Q``, ``F5``, ``F_5`` or ``GF(5)``."""
    t = tag.strip().upper().replace("_", "")
    if t in ("Z", "ZZ"):
        return ZZ
    if t in ("Q", "QQ"):
        return QQ
    if t.startswith("GF(") and t.endswith(")"):
        t = "F" + t[3:-1]
    if t.startswith("F") and t[1:].isdigit():
        return GF(int(t[1:]))
    raise ValueError(f"unknown ring tag {tag!r}")

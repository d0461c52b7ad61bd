"""Ground fields R, C, H and scalar arithmetic.

Scalars are stored uniformly as four real components (w, x, y, z) with the
quaternion multiplication table; real and complex values are the embedded
restrictions (components beyond the field's real dimension are exactly zero).
Vector spaces over H are left modules, so the inner product defined elsewhere
is linear in its first argument.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import FieldMismatchError


class Field(enum.Enum):
    """Ground (skew) field tag; `real_dim` is its dimension over the reals."""

    REAL = ("R", 1)
    COMPLEX = ("C", 2)
    QUATERNION = ("H", 4)

    def __init__(self, letter: str, real_dim: int):
        self.letter = letter
        self.real_dim = real_dim

    @classmethod
    def from_letter(cls, letter: str) -> "Field":
        for f in cls:
            if f.letter == letter.upper():
                return f
        raise ValueError(f"unknown field {letter!r}; expected one of R, C, H")

    def __repr__(self):
        return f"Field.{self.name}"


FIELDS = (Field.REAL, Field.COMPLEX, Field.QUATERNION)


def _quat_mul(a, b):
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return (
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    )


@dataclass(frozen=True)
class KScalar:
    """One element of R, C or H as four real components (w, x, y, z)."""

    field: Field
    components: tuple[float, float, float, float]

    def __post_init__(self):
        if len(self.components) != 4:
            raise ValueError("KScalar needs exactly 4 components")
        object.__setattr__(self, "components", tuple(float(c) for c in self.components))
        for c in self.components[self.field.real_dim:]:
            if c != 0.0:
                raise FieldMismatchError(
                    f"nonzero component beyond real dimension of {self.field.letter}"
                )

    @classmethod
    def from_real(cls, field: Field, value: float) -> "KScalar":
        return cls(field, (float(value), 0.0, 0.0, 0.0))

    @classmethod
    def zero(cls, field: Field) -> "KScalar":
        return cls(field, (0.0, 0.0, 0.0, 0.0))

    @classmethod
    def one(cls, field: Field) -> "KScalar":
        return cls(field, (1.0, 0.0, 0.0, 0.0))

    @property
    def real(self) -> float:
        return self.components[0]

    def conj(self) -> "KScalar":
        w, x, y, z = self.components
        return KScalar(self.field, (w, -x, -y, -z))

    def __abs__(self) -> float:
        return math.sqrt(sum(c * c for c in self.components))

    def __add__(self, other: "KScalar") -> "KScalar":
        self._check(other)
        return KScalar(
            self.field,
            tuple(a + b for a, b in zip(self.components, other.components)),
        )

    def __sub__(self, other: "KScalar") -> "KScalar":
        self._check(other)
        return KScalar(
            self.field,
            tuple(a - b for a, b in zip(self.components, other.components)),
        )

    def __neg__(self) -> "KScalar":
        return KScalar(self.field, tuple(-c for c in self.components))

    def _check(self, other):
        if not isinstance(other, KScalar):
            raise TypeError(f"expected KScalar, got {type(other).__name__}")
        if other.field is not self.field:
            raise FieldMismatchError(
                f"field mismatch: {self.field.letter} vs {other.field.letter}"
            )

    def is_zero(self, tol: float = 0.0) -> bool:
        return abs(self) <= tol

    def __repr__(self):
        w, x, y, z = self.components
        return f"KScalar({self.field.letter}; {w:g}, {x:g}, {y:g}, {z:g})"


def scalar_mul(a: KScalar, b: KScalar) -> KScalar:
    """Field multiplication a*b; for R/C this is the embedded restriction of
    the quaternion product (so one code path serves all three fields)."""
    a._check(b)
    return KScalar(a.field, _quat_mul(a.components, b.components))


def scalar_inv(a: KScalar) -> KScalar:
    """Multiplicative inverse conj(a)/|a|^2."""
    n2 = sum(c * c for c in a.components)
    if n2 == 0.0:
        raise ZeroDivisionError("inverse of zero scalar")
    w, x, y, z = a.components
    return KScalar(a.field, (w / n2, -x / n2, -y / n2, -z / n2))

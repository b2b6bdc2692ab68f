"""Vector fields on the circle, the loop Borel algebra, their semidirect
product and its central extension.

Elements of the loop Borel algebra are traceless upper-triangular loops
``[[x, y], [0, -x]]``; a :class:`GElem` pairs one of them with a vector field
``f d/dtheta``.  The semidirect bracket keeps the ordering ``[d, b] + f d' - g b'``
on the Borel part, for ``A = (f, b)`` and ``B = (g, d)``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

from .trigpoly import PiScalar, Scalar, TrigPoly, as_rational

__all__ = [
    "VectorField",
    "BorelLoop",
    "GElem",
    "GHatElem",
    "CocycleParams",
    "witt_bracket",
    "borel_bracket",
    "g_bracket",
    "ghat_bracket",
    "jacobi_defect",
]

_ZERO = TrigPoly()


@dataclass(frozen=True)
class VectorField:
    f: TrigPoly = _ZERO

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.f + other.f)

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.f - other.f)

    def scale(self, k: Scalar) -> "VectorField":
        return VectorField(self.f.scale(k))


@dataclass(frozen=True)
class BorelLoop:
    """The loop ``[[x, y], [0, -x]]``; tracelessness is built into the layout."""

    x: TrigPoly = _ZERO
    y: TrigPoly = _ZERO

    def __add__(self, other: "BorelLoop") -> "BorelLoop":
        return BorelLoop(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "BorelLoop") -> "BorelLoop":
        return BorelLoop(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "BorelLoop":
        return BorelLoop(-self.x, -self.y)

    def scale(self, k: Scalar) -> "BorelLoop":
        return BorelLoop(self.x.scale(k), self.y.scale(k))

    def deriv(self) -> "BorelLoop":
        return BorelLoop(self.x.deriv(), self.y.deriv())

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()

    def matrix(self) -> tuple:
        return ((self.x, self.y), (_ZERO, -self.x))


@dataclass(frozen=True)
class GElem:
    vf: VectorField = field(default_factory=VectorField)
    b: BorelLoop = field(default_factory=BorelLoop)

    @classmethod
    def of(cls, f: TrigPoly = _ZERO, x: TrigPoly = _ZERO, y: TrigPoly = _ZERO) -> "GElem":
        return cls(VectorField(f), BorelLoop(x, y))

    @classmethod
    def embed(cls, b: BorelLoop) -> "GElem":
        return cls(VectorField(), b)

    @property
    def f(self) -> TrigPoly:
        return self.vf.f

    @property
    def x(self) -> TrigPoly:
        return self.b.x

    @property
    def y(self) -> TrigPoly:
        return self.b.y

    def __add__(self, other: "GElem") -> "GElem":
        return GElem(self.vf + other.vf, self.b + other.b)

    def __sub__(self, other: "GElem") -> "GElem":
        return GElem(self.vf - other.vf, self.b - other.b)

    def __neg__(self) -> "GElem":
        return self.scale(-1)

    def scale(self, k: Scalar) -> "GElem":
        return GElem(self.vf.scale(k), self.b.scale(k))

    def is_zero(self) -> bool:
        return self.f.is_zero() and self.b.is_zero()

    @property
    def bandwidth(self) -> int:
        return max(self.f.bandwidth, self.x.bandwidth, self.y.bandwidth)


@dataclass(frozen=True)
class GHatElem:
    """Element ``(g, t)`` of the central extension.

    The central coordinate is a PiScalar because brackets land there with
    pi-rational cocycle values; rationals passed in are embedded.
    """

    g: GElem = field(default_factory=GElem)
    t: PiScalar = field(default_factory=PiScalar)

    def __post_init__(self):
        object.__setattr__(self, "t", PiScalar.coerce(self.t))

    def __add__(self, other: "GHatElem") -> "GHatElem":
        return GHatElem(self.g + other.g, self.t + other.t)

    def __sub__(self, other: "GHatElem") -> "GHatElem":
        return GHatElem(self.g - other.g, self.t - other.t)

    def scale(self, k: Scalar) -> "GHatElem":
        return GHatElem(self.g.scale(k), self.t * as_rational(k))

    def is_zero(self) -> bool:
        return self.g.is_zero() and self.t.is_zero()


@dataclass(frozen=True)
class CocycleParams:
    """Coefficients of ``l1*c1 + l2*c2 + l3*c3``."""

    l1: Fraction = Fraction(0)
    l2: Fraction = Fraction(0)
    l3: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("l1", "l2", "l3"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @classmethod
    def parse(cls, text: str) -> "CocycleParams":
        parts = [p for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated rationals, got {text!r}")
        return cls(*(as_rational(p) for p in parts))

    def as_tuple(self) -> tuple:
        return (self.l1, self.l2, self.l3)

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.as_tuple())


def witt_bracket(X: VectorField, Y: VectorField) -> VectorField:
    f, g = X.f, Y.f
    return VectorField(f * g.deriv() - f.deriv() * g)


def borel_bracket(b1: BorelLoop, b2: BorelLoop) -> BorelLoop:
    """Pointwise matrix commutator ``b1 b2 - b2 b1``.

    For traceless upper-triangular loops only the corner survives:
    ``2 (x1 y2 - x2 y1)``.
    """
    return BorelLoop(_ZERO, (b1.x * b2.y - b2.x * b1.y).scale(2))


# Elements are immutable and hashable; suites re-bracket the same pairs for
# every lambda, and the bracket itself does not depend on lambda.
@functools.lru_cache(maxsize=4096)
def g_bracket(A: GElem, B: GElem) -> GElem:
    f, b = A.f, A.b
    g, d = B.f, B.b
    d1, b1 = d.deriv(), b.deriv()
    borel = (
        borel_bracket(d, b)
        + BorelLoop(f * d1.x, f * d1.y)
        - BorelLoop(g * b1.x, g * b1.y)
    )
    return GElem(witt_bracket(A.vf, B.vf), borel)


def ghat_bracket(A: GHatElem, B: GHatElem, lam: CocycleParams) -> GHatElem:
    """Bracket in the central extension; the inputs' central coordinates are ignored."""
    from .cocycles import eval_c

    return GHatElem(g_bracket(A.g, B.g), eval_c(A.g, B.g, lam))


def jacobi_defect(A: GHatElem, B: GHatElem, C: GHatElem, lam: CocycleParams) -> GHatElem:
    def br(P, Q):
        return ghat_bracket(P, Q, lam)

    return br(br(A, B), C) + br(br(B, C), A) + br(br(C, A), B)

"""Exact trigonometric polynomials on the circle.

A :class:`TrigPoly` stores ``a0 + sum_k (a_k cos k*theta + b_k sin k*theta)``
with :class:`fractions.Fraction` coefficients.  Integrals over the circle are
returned as :class:`PiScalar` values ``r + s*pi`` so that mixed sums such as
``integral + charge * t`` stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction
Scalar = Union[int, Fraction]
_ZERO = Fraction(0)

__all__ = [
    "Rational",
    "PiScalar",
    "TrigPoly",
    "as_rational",
    "tp_add",
    "tp_mul",
    "tp_deriv",
    "tp_integral",
    "integral_of_product",
    "approx_eval",
]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: they would smuggle rounding into the core.
    """
    if type(value) is Fraction:
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational coefficient")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


@dataclass(frozen=True)
class PiScalar:
    """Exact number ``rat + pi_part * pi`` with pi treated as transcendental."""

    rat: Fraction = Fraction(0)
    pi: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "rat", as_rational(self.rat))
        object.__setattr__(self, "pi", as_rational(self.pi))

    @classmethod
    def coerce(cls, value) -> "PiScalar":
        if isinstance(value, PiScalar):
            return value
        return cls(as_rational(value), Fraction(0))

    def is_zero(self) -> bool:
        return self.rat == 0 and self.pi == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other) -> "PiScalar":
        try:
            other = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return PiScalar(self.rat + other.rat, self.pi + other.pi)

    __radd__ = __add__

    def __neg__(self) -> "PiScalar":
        return PiScalar(-self.rat, -self.pi)

    def __sub__(self, other) -> "PiScalar":
        try:
            other = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return PiScalar(self.rat - other.rat, self.pi - other.pi)

    def __rsub__(self, other) -> "PiScalar":
        return (-self) + other

    def __mul__(self, other) -> "PiScalar":
        if isinstance(other, PiScalar):
            if self.pi and other.pi:
                raise ValueError("pi^2 is not representable as a PiScalar")
            if self.pi:
                return self * other.rat
            return other * self.rat
        try:
            k = as_rational(other)
        except TypeError:
            return NotImplemented
        return PiScalar(self.rat * k, self.pi * k)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PiScalar":
        k = as_rational(other)
        return PiScalar(self.rat / k, self.pi / k)

    def __eq__(self, other) -> bool:
        if isinstance(other, PiScalar):
            return self.rat == other.rat and self.pi == other.pi
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.pi == 0 and self.rat == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.rat, self.pi))

    def approx(self) -> float:
        """Floating value for display only."""
        return float(self.rat) + float(self.pi) * math.pi

    def __str__(self) -> str:
        if not self.pi:
            return str(self.rat)
        if not self.rat:
            return f"{self.pi}*pi"
        return f"{self.rat} + {self.pi}*pi"


def _trim(cos: list, sin: list) -> tuple[tuple, tuple]:
    n = max(len(cos), len(sin))
    cos = list(cos) + [Fraction(0)] * (n - len(cos))
    sin = list(sin) + [Fraction(0)] * (n - len(sin))
    while n and cos[n - 1] == 0 and sin[n - 1] == 0:
        n -= 1
    return tuple(cos[:n]), tuple(sin[:n])


@dataclass(frozen=True, init=False)
class TrigPoly:
    """Trigonometric polynomial with exact rational Fourier coefficients.

    ``cos[k-1]`` and ``sin[k-1]`` hold the coefficients of ``cos k theta`` and
    ``sin k theta``.  Both tuples always have length equal to the bandwidth.
    """

    a0: Fraction
    cos: tuple
    sin: tuple

    def __init__(self, a0: Scalar = 0, cos: Iterable = (), sin: Iterable = ()):
        c, s = _trim([as_rational(v) for v in cos], [as_rational(v) for v in sin])
        object.__setattr__(self, "a0", as_rational(a0))
        object.__setattr__(self, "cos", c)
        object.__setattr__(self, "sin", s)

    @classmethod
    def _trusted(cls, a0: Fraction, cos: list, sin: list) -> "TrigPoly":
        # Kernel-internal constructor: inputs are Fractions of equal length.
        n = len(cos)
        while n and not cos[n - 1] and not sin[n - 1]:
            n -= 1
        out = object.__new__(cls)
        object.__setattr__(out, "a0", a0)
        object.__setattr__(out, "cos", tuple(cos[:n]))
        object.__setattr__(out, "sin", tuple(sin[:n]))
        return out

    @classmethod
    def const(cls, c: Scalar) -> "TrigPoly":
        return cls(c)

    @classmethod
    def cos_mode(cls, k: int, coeff: Scalar = 1) -> "TrigPoly":
        if k == 0:
            return cls(coeff)
        return cls(0, [0] * (k - 1) + [coeff])

    @classmethod
    def sin_mode(cls, k: int, coeff: Scalar = 1) -> "TrigPoly":
        if k < 1:
            raise ValueError("sin mode index must be >= 1")
        return cls(0, (), [0] * (k - 1) + [coeff])

    @classmethod
    def zero(cls) -> "TrigPoly":
        return cls()

    @property
    def bandwidth(self) -> int:
        return len(self.cos)

    def is_zero(self) -> bool:
        return self.a0 == 0 and not self.cos

    def __bool__(self) -> bool:
        return not self.is_zero()

    def coeff_cos(self, k: int) -> Fraction:
        if k == 0:
            return self.a0
        return self.cos[k - 1] if k <= len(self.cos) else _ZERO

    def coeff_sin(self, k: int) -> Fraction:
        if k == 0:
            return _ZERO
        return self.sin[k - 1] if k <= len(self.sin) else _ZERO

    def __add__(self, other) -> "TrigPoly":
        if not isinstance(other, TrigPoly):
            try:
                other = TrigPoly(as_rational(other))
            except TypeError:
                return NotImplemented
        return tp_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "TrigPoly":
        return TrigPoly._trusted(-self.a0, [-c for c in self.cos], [-s for s in self.sin])

    def __sub__(self, other) -> "TrigPoly":
        if not isinstance(other, TrigPoly):
            try:
                other = TrigPoly(as_rational(other))
            except TypeError:
                return NotImplemented
        return tp_add(self, -other)

    def __rsub__(self, other) -> "TrigPoly":
        return (-self) + other

    def scale(self, k: Scalar) -> "TrigPoly":
        k = as_rational(k)
        return TrigPoly._trusted(self.a0 * k, [c * k for c in self.cos], [s * k for s in self.sin])

    def __mul__(self, other) -> "TrigPoly":
        if isinstance(other, TrigPoly):
            return tp_mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def deriv(self, order: int = 1) -> "TrigPoly":
        out = self
        for _ in range(order):
            out = tp_deriv(out)
        return out

    def integral(self) -> PiScalar:
        return tp_integral(self)

    def __repr__(self) -> str:
        terms = []
        if self.a0:
            terms.append(str(self.a0))
        for k in range(1, self.bandwidth + 1):
            for c, name in ((self.cos[k - 1], "cos"), (self.sin[k - 1], "sin")):
                if c:
                    arg = "t" if k == 1 else f"{k}t"
                    terms.append(f"{c}*{name}({arg})")
        return "TrigPoly(" + (" + ".join(terms) or "0") + ")"


def tp_add(f: TrigPoly, g: TrigPoly) -> TrigPoly:
    n = max(f.bandwidth, g.bandwidth)
    cos = [f.coeff_cos(k) + g.coeff_cos(k) for k in range(1, n + 1)]
    sin = [f.coeff_sin(k) + g.coeff_sin(k) for k in range(1, n + 1)]
    return TrigPoly._trusted(f.a0 + g.a0, cos, sin)


def _integerize(coeffs: list) -> tuple[list, int]:
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def tp_mul(f: TrigPoly, g: TrigPoly) -> TrigPoly:
    """Pointwise product via the product-to-sum identities.

    Runs on integer numerators over a common denominator; every product term
    carries a factor 1/2, applied once at the end.
    """
    nf, ng = f.bandwidth, g.bandwidth
    if f.is_zero() or g.is_zero():
        return TrigPoly()
    n = nf + ng
    fv, df = _integerize([f.a0, *f.cos, *f.sin])
    gv, dg = _integerize([g.a0, *g.cos, *g.sin])
    fc, fs = fv[: nf + 1], [0] + fv[nf + 1:]
    gc, gs = gv[: ng + 1], [0] + gv[ng + 1:]
    cos = [0] * (n + 1)  # index 0 is the constant term
    sin = [0] * (n + 1)
    for j in range(nf + 1):
        aj, bj = fc[j], fs[j]
        if not aj and not bj:
            continue
        for k in range(ng + 1):
            ak, bk = gc[k], gs[k]
            if not ak and not bk:
                continue
            hi, lo = j + k, abs(j - k)
            # 2 cos j cos k = cos(j-k) + cos(j+k)
            # 2 sin j sin k = cos(j-k) - cos(j+k)
            cc = aj * ak
            ss = bj * bk
            cos[lo] += cc + ss
            cos[hi] += cc - ss
            # 2 sin j cos k = sin(j+k) + sin(j-k)
            sc = bj * ak
            cs = aj * bk
            sin[hi] += sc + cs
            if j > k:
                sin[lo] += sc - cs
            elif k > j:
                sin[lo] += cs - sc
    den = 2 * df * dg
    return TrigPoly._trusted(
        Fraction(cos[0], den),
        [Fraction(c, den) if c else _ZERO for c in cos[1:]],
        [Fraction(v, den) if v else _ZERO for v in sin[1:]],
    )


def tp_deriv(f: TrigPoly) -> TrigPoly:
    n = f.bandwidth
    cos = [k * f.sin[k - 1] for k in range(1, n + 1)]
    sin = [-k * f.cos[k - 1] for k in range(1, n + 1)]
    return TrigPoly._trusted(_ZERO, cos, sin)


def tp_integral(f: TrigPoly) -> PiScalar:
    """Integral over [0, 2*pi]: only the constant mode survives."""
    return PiScalar(0, 2 * f.a0)


def integral_of_product(f: TrigPoly, g: TrigPoly) -> PiScalar:
    """``tp_integral(tp_mul(f, g))`` without forming the product."""
    total = 2 * f.a0 * g.a0
    for k in range(1, min(f.bandwidth, g.bandwidth) + 1):
        total += f.cos[k - 1] * g.cos[k - 1] + f.sin[k - 1] * g.sin[k - 1]
    return PiScalar(0, total)


def approx_eval(f: TrigPoly, theta: float) -> float:
    """Floating-point value of ``f`` at ``theta``.  Display only, never used in checks."""
    value = float(f.a0)
    for k in range(1, f.bandwidth + 1):
        value += float(f.cos[k - 1]) * math.cos(k * theta)
        value += float(f.sin[k - 1]) * math.sin(k * theta)
    return value


from fractions import Fraction

import pytest
import sympy
from hypothesis import strategies as st

from gfred.algebra import BorelLoop, CocycleParams, GElem, GHatElem
from gfred.trigpoly import TrigPoly

THETA = sympy.Symbol("theta", real=True)

VALID_LAMS = [CocycleParams(4, 1, 1), CocycleParams(0, 2, 1)]
BASIS_LAMS = [CocycleParams(1, 0, 0), CocycleParams(0, 1, 0), CocycleParams(0, 0, 1),
              CocycleParams(4, 1, 1)]


def rationals(max_num=9, max_den=3):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


def trigpolys(max_bw=3):
    return st.integers(0, max_bw).flatmap(
        lambda n: st.builds(
            TrigPoly,
            rationals(),
            st.lists(rationals(), min_size=n, max_size=n),
            st.lists(rationals(), min_size=n, max_size=n),
        )
    )


def borels(max_bw=3):
    return st.builds(BorelLoop, trigpolys(max_bw), trigpolys(max_bw))


def gelems(max_bw=3):
    return st.builds(GElem.of, trigpolys(max_bw), trigpolys(max_bw), trigpolys(max_bw))


def ghats(max_bw=3):
    return st.builds(GHatElem, gelems(max_bw), rationals())


def valid_lams():
    # l2 = 2 l3 - l1/4 parametrizes the relation.
    return st.builds(lambda l1, l3: CocycleParams(l1, 2 * l3 - l1 / 4, l3), rationals(), rationals())


def to_sympy(f: TrigPoly):
    expr = sympy.Rational(f.a0.numerator, f.a0.denominator)
    for k in range(1, f.bandwidth + 1):
        a, b = f.cos[k - 1], f.sin[k - 1]
        expr += sympy.Rational(a.numerator, a.denominator) * sympy.cos(k * THETA)
        expr += sympy.Rational(b.numerator, b.denominator) * sympy.sin(k * THETA)
    return expr


def sympy_circle_integral(expr):
    return sympy.integrate(sympy.expand(expr), (THETA, 0, 2 * sympy.pi))


def exp_coeffs(f: TrigPoly) -> dict:
    """Complex exponential coefficients as (re, im) Fraction pairs."""
    out = {0: (f.a0, Fraction(0))}
    for k in range(1, f.bandwidth + 1):
        a, b = f.cos[k - 1], f.sin[k - 1]
        out[k] = (a / 2, -b / 2)
        out[-k] = (a / 2, b / 2)
    return out


def from_exp_coeffs(c: dict) -> TrigPoly:
    n = max((abs(k) for k in c), default=0)
    a0 = c.get(0, (0, 0))[0]
    cos, sin = [], []
    for k in range(1, n + 1):
        re_p, im_p = c.get(k, (0, 0))
        re_m, im_m = c.get(-k, (0, 0))
        cos.append(re_p + re_m)
        sin.append(im_m - im_p)
    return TrigPoly(a0, cos, sin)


def convolve(f: TrigPoly, g: TrigPoly) -> TrigPoly:
    """Product oracle: Cauchy product of exponential coefficients."""
    cf, cg = exp_coeffs(f), exp_coeffs(g)
    out: dict = {}
    for j, (a, b) in cf.items():
        for k, (c, d) in cg.items():
            re, im = out.get(j + k, (Fraction(0), Fraction(0)))
            out[j + k] = (re + a * c - b * d, im + a * d + b * c)
    return from_exp_coeffs(out)


@pytest.fixture
def cos1():
    return TrigPoly.cos_mode(1)


@pytest.fixture
def sin1():
    return TrigPoly.sin_mode(1)


# One line per acceptance criterion, printed after the run even under capture.
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

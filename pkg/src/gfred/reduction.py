"""Reduction by the loop Borel algebra: the Hill slice, the residual action of
vector fields on it, the two momentum-map cocycles, and unipotent gauge fixing
of traceless loop connections.

The Hamiltonian space is the charge-``a`` slice of the smooth dual, acted on
coadjointly, with momentum map the restriction to the unextended algebra.
Restricting further to the Borel part gives ``moment_h``; its level set over
``eta`` is ``{(T, 0, 1, a)}``, the Hill slice.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import BorelLoop, CocycleParams, GElem, g_bracket
from .coadjoint import (
    DualElem,
    coeff_vector,
    require_lambda,
    coad,
    pair_unextended,
    stabilizer_elem,
)
from .errors import ConstraintViolated, FitFailed, NotTangent
from .linsolve import solve
from .trigpoly import PiScalar, Scalar, TrigPoly, as_rational

log = logging.getLogger(__name__)

__all__ = [
    "SL2Connection",
    "HillPoint",
    "CocycleReport",
    "GFReport",
    "ResidualSolution",
    "hill_to_dual",
    "moment_h",
    "on_constraint",
    "generator",
    "momentum_defect",
    "solve_residual",
    "residual_vector",
    "momentum_cocycle_stab",
    "momentum_cocycle_res",
    "gf_coefficient_report",
    "ds_gauge",
    "ds_project",
    "apply_unipotent_gauge",
]

_ZERO = TrigPoly()
_ONE = TrigPoly(1)


@dataclass(frozen=True)
class SL2Connection:
    """``a d + [[alpha, beta], [gamma, -alpha]]``."""

    alpha: TrigPoly = _ZERO
    beta: TrigPoly = _ZERO
    gamma: TrigPoly = _ONE
    charge: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "charge", as_rational(self.charge))


@dataclass(frozen=True)
class HillPoint:
    """The connection ``[[0, T], [1, 0]]`` at charge ``a``."""

    T: TrigPoly = _ZERO
    charge: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "charge", as_rational(self.charge))


@dataclass(frozen=True)
class CocycleReport:
    value: PiScalar
    route: str  # "stab" or "res"
    point_descriptor: str


@dataclass(frozen=True)
class GFReport:
    """Mode values ``c(cos k, sin k)`` and the exact fit ``A k^3 + B k``."""

    entries: tuple
    k3_coeff: PiScalar
    k_coeff: PiScalar
    kmax: int


@dataclass(frozen=True)
class ResidualSolution:
    delta_T: TrigPoly
    gauge: BorelLoop
    unique: bool


def hill_to_dual(h: HillPoint) -> DualElem:
    return DualElem(h.T, _ZERO, _ONE, h.charge)


def moment_h(phi: DualElem) -> tuple:
    """Restriction of ``phi`` to the Borel part, as its ``(x, y)`` densities."""
    return phi.p, phi.q


def on_constraint(phi: DualElem) -> bool:
    p, q = moment_h(phi)
    return p.is_zero() and q == _ONE


def generator(X: GElem, phi: DualElem, lam: CocycleParams) -> DualElem:
    """Fundamental vector field of ``X`` at ``phi``: ``<., Y> = <phi, [X, Y]>``.

    This is ``-ad*_X phi``; with this sign the momentum defect below is
    constant on the dual.
    """
    return coad(X, phi, lam).scale(-1)


def momentum_defect(X: GElem, Y: GElem, phi: DualElem, lam: CocycleParams) -> PiScalar:
    """``L_X <mu, Y> - <mu, [X, Y]>`` at ``phi``; equals ``charge * c(X, Y)``."""
    return pair_unextended(generator(X, phi, lam), Y) - pair_unextended(phi, g_bracket(X, Y))


def _gauge_basis(bandwidth: int) -> list:
    # Ordered by mode index, then slot, cos before sin: free directions beyond
    # the pivots are dropped, which keeps the chosen gauge low-band.
    basis = []
    for k in range(bandwidth + 1):
        for slot in ("x", "y"):
            basis.append(BorelLoop(**{slot: TrigPoly.cos_mode(k)}))
            if k:
                basis.append(BorelLoop(**{slot: TrigPoly.sin_mode(k)}))
    return basis


def solve_residual(f: TrigPoly, h: HillPoint, lam: CocycleParams) -> ResidualSolution:
    """Residual action of ``f d`` at the Hill point ``h``.

    Moves ``hill_to_dual(h)`` along the stabilizer lift of ``f``, then solves
    exactly for a Borel direction ``xi`` cancelling the drift of the Borel
    momentum.  Returns the remaining variation of ``T`` with ``xi``.
    """
    require_lambda(lam)
    phi = hill_to_dual(h)
    v = generator(stabilizer_elem(f, h.charge, lam), phi, lam)
    bw = max(v.p.bandwidth, v.q.bandwidth)
    out_bw = bw + phi.bandwidth + 3
    basis = _gauge_basis(bw)
    cols = []
    for b in basis:
        w = generator(GElem.embed(b), phi, lam)
        cols.append(coeff_vector(w.p, out_bw) + coeff_vector(w.q, out_bw))
    rhs = [-c for c in coeff_vector(v.p, out_bw) + coeff_vector(v.q, out_bw)]
    matrix = [[col[i] for col in cols] for i in range(len(rhs))]
    result = solve(matrix, rhs, ncols=len(basis))
    if not result.feasible:
        raise NotTangent(f"no Borel direction restores the constraint for f={f!r}")
    xi = BorelLoop()
    for coeff, b in zip(result.solution, basis):
        if coeff:
            xi = xi + b.scale(coeff)
    if not result.unique:
        log.warning("gauge direction underdetermined (nullity %d); using low-band choice",
                    result.nullity)
    w = v + generator(GElem.embed(xi), phi, lam)
    if not (w.p.is_zero() and w.q.is_zero()):
        raise NotTangent("gauge solve left a Borel drift")
    return ResidualSolution(w.u, xi, result.unique)


def residual_vector(f: TrigPoly, h: HillPoint, lam: CocycleParams) -> TrigPoly:
    return solve_residual(f, h, lam).delta_T


def momentum_cocycle_stab(f: TrigPoly, g: TrigPoly, phi: DualElem, lam: CocycleParams) -> PiScalar:
    """Momentum cocycle of the stabilizer action at a point of the constraint surface."""
    require_lambda(lam)
    if not on_constraint(phi):
        raise ConstraintViolated("functional is not on the level set moment_h = eta")
    X = stabilizer_elem(f, phi.charge, lam)
    Y = stabilizer_elem(g, phi.charge, lam)
    return momentum_defect(X, Y, phi, lam)


def _reduced_moment(T: TrigPoly, a: Fraction, g: TrigPoly, lam: CocycleParams) -> PiScalar:
    # <mu_bar(T), g>: the Hill point evaluated on the stabilizer lift of g.
    return pair_unextended(hill_to_dual(HillPoint(T, a)), stabilizer_elem(g, a, lam))


def momentum_cocycle_res(f: TrigPoly, g: TrigPoly, h: HillPoint, lam: CocycleParams) -> PiScalar:
    """Momentum cocycle of the residual action on the Hill slice.

    ``T -> <mu_bar(T), g>`` is affine, so its derivative along ``delta_T`` is
    the exact difference quotient at step 1.
    """
    require_lambda(lam)
    dT = residual_vector(f, h, lam)
    a = h.charge
    base = _reduced_moment(h.T, a, g, lam)
    lie_derivative = _reduced_moment(h.T + dT, a, g, lam) - base
    fg = f * g.deriv() - f.deriv() * g
    return lie_derivative - _reduced_moment(h.T, a, fg, lam)


def gf_coefficient_report(
    lam: CocycleParams, a: Scalar, kmax: int = 5, T: Optional[TrigPoly] = None
) -> GFReport:
    """Evaluate both cocycle routes on ``(cos k, sin k)`` and fit ``A k^3 + B k``.

    The fit uses ``k = 1, 2`` and must reproduce every ``k <= kmax`` exactly.
    """
    require_lambda(lam)
    if kmax < 2:
        raise ValueError("kmax must be at least 2 to fit two coefficients")
    a = as_rational(a)
    T = _ZERO if T is None else T
    h = HillPoint(T, a)
    entries, values = [], []
    for k in range(1, kmax + 1):
        f, g = TrigPoly.cos_mode(k), TrigPoly.sin_mode(k)
        v = momentum_cocycle_res(f, g, h, lam)
        desc = f"k={k},T={T!r},a={a}"
        entries.append(CocycleReport(v, "res", desc))
        entries.append(CocycleReport(momentum_cocycle_stab(f, g, hill_to_dual(h), lam), "stab", desc))
        values.append(v)
    A = (values[1] - values[0] * 2) / 6
    B = values[0] - A
    for k, v in enumerate(values, start=1):
        if A * (k ** 3) + B * k != v:
            raise FitFailed(f"mode k={k}: value {v} is not {A}*k^3 + {B}*k")
    return GFReport(tuple(entries), A, B, kmax)


def _mat_mul(P, Q):
    return tuple(
        tuple(P[i][0] * Q[0][j] + P[i][1] * Q[1][j] for j in range(2)) for i in range(2)
    )


def apply_unipotent_gauge(c: SL2Connection, s: TrigPoly) -> tuple:
    """``U A U^-1 - a U' U^-1`` for ``U = [[1, s], [0, 1]]``, by explicit 2x2 products."""
    U = ((_ONE, s), (_ZERO, _ONE))
    U_inv = ((_ONE, -s), (_ZERO, _ONE))
    dU = ((_ZERO, s.deriv()), (_ZERO, _ZERO))
    A = ((c.alpha, c.beta), (c.gamma, -c.alpha))
    conj = _mat_mul(_mat_mul(U, A), U_inv)
    affine = _mat_mul(dU, U_inv)
    return tuple(
        tuple(conj[i][j] - affine[i][j].scale(c.charge) for j in range(2)) for i in range(2)
    )


def ds_gauge(c: SL2Connection) -> tuple:
    """Gauge a constrained connection to Hill form ``[[0, T], [1, 0]]``.

    The diagonal forces ``s = -alpha``, leaving ``T = beta + alpha^2 + a alpha'``.
    Returns ``(HillPoint, s)``.
    """
    if c.gamma != _ONE:
        raise ConstraintViolated("lower-left entry of the connection must be 1")
    s = -c.alpha
    T = c.beta + c.alpha * c.alpha + c.alpha.deriv().scale(c.charge)
    return HillPoint(T, c.charge), s


def ds_project(c: SL2Connection) -> TrigPoly:
    """Strictly upper-triangular part of the connection."""
    return c.beta

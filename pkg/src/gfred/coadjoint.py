"""Smooth functionals on the extended algebra and the coadjoint action.

A :class:`DualElem` ``(u, p, q, charge)`` pairs with ``(g d, (x, y), t)`` as
``int (u g + p x + q y) + charge * t``.  The distinguished functional
``(eta, a)`` is ``(0, 0, 1, a)``.

The coadjoint action follows the convention ``<ad*_X phi, Y> = <phi, [Y, X]>``,
with the test vector first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import (
    BorelLoop,
    CocycleParams,
    GElem,
    GHatElem,
    g_bracket,
    ghat_bracket,
)
from .cocycles import eval_c
from .errors import InconsistentLambda
from .linsolve import LinearSolution, check_witness, solve
from .trigpoly import PiScalar, Scalar, TrigPoly, as_rational, integral_of_product

__all__ = [
    "DualElem",
    "base_functional",
    "pair",
    "pair_unextended",
    "coad",
    "coad_by_pairing",
    "lambda_ok",
    "stabilizer_elem",
    "Completion",
    "annihilator_completion",
    "decompose",
    "stab_closure_defect",
    "cocycle_on_stab",
    "orbit_form",
    "sympl_restriction_defect",
]

_ZERO = TrigPoly()


@dataclass(frozen=True)
class DualElem:
    u: TrigPoly = _ZERO
    p: TrigPoly = _ZERO
    q: TrigPoly = _ZERO
    charge: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "charge", as_rational(self.charge))

    def __add__(self, other: "DualElem") -> "DualElem":
        return DualElem(self.u + other.u, self.p + other.p, self.q + other.q,
                        self.charge + other.charge)

    def __sub__(self, other: "DualElem") -> "DualElem":
        return DualElem(self.u - other.u, self.p - other.p, self.q - other.q,
                        self.charge - other.charge)

    def scale(self, k: Scalar) -> "DualElem":
        k = as_rational(k)
        return DualElem(self.u.scale(k), self.p.scale(k), self.q.scale(k), self.charge * k)

    def densities_zero(self) -> bool:
        return self.u.is_zero() and self.p.is_zero() and self.q.is_zero()

    def is_zero(self) -> bool:
        return self.densities_zero() and self.charge == 0

    @property
    def bandwidth(self) -> int:
        return max(self.u.bandwidth, self.p.bandwidth, self.q.bandwidth)


def base_functional(a: Scalar) -> DualElem:
    """``(eta, a)``: integrate the upper-right entry, weight the center by ``a``."""
    return DualElem(_ZERO, _ZERO, TrigPoly(1), as_rational(a))


def pair_unextended(phi: DualElem, X: GElem) -> PiScalar:
    return (
        integral_of_product(phi.u, X.f)
        + integral_of_product(phi.p, X.x)
        + integral_of_product(phi.q, X.y)
    )


def pair(phi: DualElem, X: GHatElem) -> PiScalar:
    return pair_unextended(phi, X.g) + X.t * phi.charge


def coad(X: GElem, phi: DualElem, lam: CocycleParams) -> DualElem:
    """Closed-form ``ad*_X phi``, obtained by integrating ``<phi, [Y, X]>`` by parts.

    For ``X = (f, (z, t))``::

        u' = 2 u f' + u' f + p z' + q t' + a l2 z'' + 2 a l3 f'''
        p' = (p f)' - 2 q t + a l1 z' - a l2 f''
        q' = (q f)' + 2 q z

    The result is a tangent vector, so its charge is 0.
    """
    f, z, t = X.f, X.x, X.y
    u, p, q, a = phi.u, phi.p, phi.q, phi.charge
    f1 = f.deriv()
    f2 = f1.deriv()
    z1 = z.deriv()
    du = (
        (u * f1).scale(2)
        + u.deriv() * f
        + p * z1
        + q * t.deriv()
        + z1.deriv().scale(a * lam.l2)
        + f2.deriv().scale(2 * a * lam.l3)
    )
    dp = (p * f).deriv() - (q * t).scale(2) + z1.scale(a * lam.l1) - f2.scale(a * lam.l2)
    dq = (q * f).deriv() + (q * z).scale(2)
    return DualElem(du, dp, dq, 0)


def _mode_basis(bandwidth: int):
    yield 0, "cos", TrigPoly(1)
    for k in range(1, bandwidth + 1):
        yield k, "cos", TrigPoly.cos_mode(k)
        yield k, "sin", TrigPoly.sin_mode(k)


def coad_by_pairing(
    X: GElem, phi: DualElem, lam: CocycleParams, bandwidth: Optional[int] = None
) -> DualElem:
    """Reconstruct ``ad*_X phi`` from its defining contract alone.

    Pairs ``phi`` with ``[Y, X]`` in the extended algebra for every mode
    ``Y`` up to ``bandwidth`` in each slot, then reads off Fourier
    coefficients (``int cos^2 = pi``, ``int 1 = 2 pi``).  The default bandwidth
    bounds the output, so the reconstruction is complete.
    """
    if bandwidth is None:
        bandwidth = phi.bandwidth + X.bandwidth + 3
    X_hat = GHatElem(X)
    out = {}
    for slot in ("f", "x", "y"):
        a0 = Fraction(0)
        cos = [Fraction(0)] * bandwidth
        sin = [Fraction(0)] * bandwidth
        for k, kind, mode in _mode_basis(bandwidth):
            Y = GHatElem(GElem.of(**{slot: mode}))
            val = pair(phi, ghat_bracket(Y, X_hat, lam))
            if val.rat:
                raise ArithmeticError("pairing against a mode produced a rational part")
            if k == 0:
                a0 = val.pi / 2
            elif kind == "cos":
                cos[k - 1] = val.pi
            else:
                sin[k - 1] = val.pi
        out[slot] = TrigPoly(a0, cos, sin)
    return DualElem(out["f"], out["x"], out["y"], 0)


def lambda_ok(lam: CocycleParams) -> bool:
    return lam.l1 / 4 + lam.l2 - 2 * lam.l3 == 0


def require_lambda(lam: CocycleParams) -> None:
    if not lambda_ok(lam):
        raise InconsistentLambda(
            f"l1/4 + l2 - 2*l3 = {lam.l1 / 4 + lam.l2 - 2 * lam.l3} != 0 for lam=({lam})"
        )


def stabilizer_elem(f: TrigPoly, a: Scalar, lam: CocycleParams) -> GElem:
    """``(f d, N_f)`` with ``N_f = (-f'/2, -a (l1/2 + l2) f''/2)``."""
    require_lambda(lam)
    a = as_rational(a)
    f1 = f.deriv()
    return GElem.of(f, f1.scale(Fraction(-1, 2)), f1.deriv().scale(-a * (lam.l1 / 2 + lam.l2) / 2))


def coeff_vector(tp: TrigPoly, bandwidth: int) -> list:
    vec = [tp.a0]
    for k in range(1, bandwidth + 1):
        vec += [tp.coeff_cos(k), tp.coeff_sin(k)]
    return vec


def _dual_vector(phi: DualElem, bandwidth: int) -> list:
    return (coeff_vector(phi.u, bandwidth) + coeff_vector(phi.p, bandwidth)
            + coeff_vector(phi.q, bandwidth))


def _borel_basis(bandwidth: int) -> list:
    basis = []
    for slot in ("x", "y"):
        for _, _, mode in _mode_basis(bandwidth):
            basis.append(BorelLoop(**{slot: mode}))
    return basis


@dataclass(frozen=True)
class Completion:
    """Result of solving for a Borel part that annihilates ``(eta, a)``.

    ``borel`` is None when the system is infeasible; ``solution.witness``
    then certifies it against the stored ``matrix`` and ``rhs``.
    """

    borel: Optional[BorelLoop]
    solution: LinearSolution
    matrix: tuple
    rhs: tuple

    @property
    def feasible(self) -> bool:
        return self.borel is not None

    def witness_valid(self) -> bool:
        return not self.feasible and check_witness(self.matrix, self.rhs, self.solution.witness)


def annihilator_completion(
    f: TrigPoly, a: Scalar, lam: CocycleParams, bandwidth: Optional[int] = None
) -> Completion:
    """Solve ``coad((f, b), (eta, a)) = 0`` for the Borel part ``b`` by linear algebra.

    Independent of the closed-form stabilizer; works for any ``lam``.
    """
    if bandwidth is None:
        bandwidth = f.bandwidth
    eta = base_functional(a)
    out_bw = bandwidth + f.bandwidth + 3
    basis = _borel_basis(bandwidth)
    columns = [_dual_vector(coad(GElem.embed(b), eta, lam), out_bw) for b in basis]
    rhs = [-v for v in _dual_vector(coad(GElem.of(f), eta, lam), out_bw)]
    matrix = [[col[i] for col in columns] for i in range(len(rhs))]
    result = solve(matrix, rhs, ncols=len(basis))
    b = None
    if result.feasible:
        b = BorelLoop()
        for coeff, e in zip(result.solution, basis):
            if coeff:
                b = b + e.scale(coeff)
    return Completion(b, result, tuple(map(tuple, matrix)), tuple(rhs))


def decompose(X: GElem, a: Scalar, lam: CocycleParams) -> tuple:
    """Split ``X`` as stabilizer element plus pure Borel loop."""
    S = stabilizer_elem(X.f, a, lam)
    return S, X.b - S.b


def stab_closure_defect(f: TrigPoly, g: TrigPoly, a: Scalar, lam: CocycleParams) -> BorelLoop:
    br = g_bracket(stabilizer_elem(f, a, lam), stabilizer_elem(g, a, lam))
    fg = f * g.deriv() - f.deriv() * g
    return br.b - stabilizer_elem(fg, a, lam).b


def cocycle_on_stab(f: TrigPoly, g: TrigPoly, a: Scalar, lam: CocycleParams) -> PiScalar:
    return eval_c(stabilizer_elem(f, a, lam), stabilizer_elem(g, a, lam), lam)


def orbit_form(phi: DualElem, X: GElem, Y: GElem, lam: CocycleParams) -> PiScalar:
    """Kirillov-Kostant-Souriau form on the tangent vectors generated by X and Y."""
    return pair(phi, ghat_bracket(GHatElem(X), GHatElem(Y), lam))


def sympl_restriction_defect(
    phi: DualElem,
    x: BorelLoop,
    y: BorelLoop,
    sf: TrigPoly,
    sg: TrigPoly,
    a: Scalar,
    lam: CocycleParams,
) -> PiScalar:
    """Form on ``x + s_x, y + s_y`` minus the form on the pure Borel parts."""
    a = as_rational(a)
    if phi.charge != a:
        raise ValueError("functional charge does not match the stabilizer charge")
    X = GElem.embed(x) + stabilizer_elem(sf, a, lam)
    Y = GElem.embed(y) + stabilizer_elem(sg, a, lam)
    return orbit_form(phi, X, Y, lam) - orbit_form(phi, GElem.embed(x), GElem.embed(y), lam)

"""The three 2-cocycles on the semidirect product and their combinations.

For ``A = (f1, (x1, y1))`` and ``B = (f2, (x2, y2))``::

    c1(A, B) = int x1 x2'
    c2(A, B) = int (f1'' x2 - f2'' x1)
    c3(A, B) = int (f1'' f2' - f1' f2'')      (Gelfand-Fuchs)

All integrals are over the circle, so values are PiScalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .algebra import CocycleParams, GElem, g_bracket
from .errors import CertificateNotFound
from .linsolve import check_witness, solve
from .trigpoly import PiScalar, TrigPoly, integral_of_product

__all__ = [
    "eval_c1",
    "eval_c2",
    "eval_c3",
    "eval_c",
    "COCYCLES",
    "cocycle_identity_defect",
    "CertificateReport",
    "noncoboundary_certificate",
    "gf_noncoboundary_certificate",
]

Cocycle = Callable[[GElem, GElem], PiScalar]


def eval_c1(A: GElem, B: GElem) -> PiScalar:
    return integral_of_product(A.x, B.x.deriv())


def eval_c2(A: GElem, B: GElem) -> PiScalar:
    return integral_of_product(A.f.deriv(2), B.x) - integral_of_product(B.f.deriv(2), A.x)


def eval_c3(A: GElem, B: GElem) -> PiScalar:
    f1, f2 = A.f.deriv(), B.f.deriv()
    return integral_of_product(f1.deriv(), f2) - integral_of_product(f1, f2.deriv())


COCYCLES = {"c1": eval_c1, "c2": eval_c2, "c3": eval_c3}


def eval_c(A: GElem, B: GElem, lam: CocycleParams) -> PiScalar:
    total = PiScalar()
    for coeff, c in zip(lam.as_tuple(), (eval_c1, eval_c2, eval_c3)):
        if coeff:
            total = total + c(A, B) * coeff
    return total


def cocycle_identity_defect(A: GElem, B: GElem, C: GElem, lam: CocycleParams) -> PiScalar:
    """``c([A,B],C) + c([B,C],A) + c([C,A],B)``; zero for a genuine 2-cocycle."""
    return (
        eval_c(g_bracket(A, B), C, lam)
        + eval_c(g_bracket(B, C), A, lam)
        + eval_c(g_bracket(C, A), B, lam)
    )


@dataclass(frozen=True)
class CertificateReport:
    """Result of testing whether a cocycle agrees with ``beta([A, B])`` on a family.

    ``beta`` ranges over functionals ``h d/dtheta -> int w h`` with ``w`` of
    bandwidth ``search_bandwidth``.  When ``found`` is true the system is
    infeasible and ``witness`` holds row weights ``r`` with ``r M = 0`` and
    ``r b != 0``; otherwise ``beta_density`` is a solution.
    """

    family: tuple
    values: tuple
    search_bandwidth: int
    matrix: tuple
    rhs: tuple
    found: bool
    witness: Optional[tuple]
    beta_density: Optional[TrigPoly]

    def verify(self) -> bool:
        """Independent check of the witness against the stored system."""
        if not self.found:
            return False
        return check_witness(self.matrix, self.rhs, self.witness)


def _density_basis(bandwidth: int) -> list:
    basis = [TrigPoly(1)]
    for k in range(1, bandwidth + 1):
        basis.append(TrigPoly.cos_mode(k))
        basis.append(TrigPoly.sin_mode(k))
    return basis


def noncoboundary_certificate(
    pairs: Sequence[tuple], cocycle: Cocycle = eval_c3
) -> CertificateReport:
    """Decide exactly whether ``cocycle(A, B) = beta([A, B])`` is solvable on ``pairs``.

    ``pairs`` holds pure vector fields given as TrigPolys.  The density ``w``
    only needs the modes that the brackets reach, so the search is complete.
    """
    elems = [(GElem.of(f), GElem.of(g)) for f, g in pairs]
    brackets = [g_bracket(A, B).f for A, B in elems]
    values = [cocycle(A, B) for A, B in elems]
    bw = max([h.bandwidth for h in brackets] + [0])
    basis = _density_basis(bw)
    matrix, rhs = [], []
    for h, v in zip(brackets, values):
        row = [integral_of_product(w, h) for w in basis]
        matrix.append([e.pi for e in row])
        rhs.append(v.pi)
        matrix.append([e.rat for e in row])
        rhs.append(v.rat)
    result = solve(matrix, rhs, ncols=len(basis))
    beta = None
    if result.feasible:
        beta = TrigPoly()
        for coeff, w in zip(result.solution, basis):
            beta = beta + w.scale(coeff)
    return CertificateReport(
        family=tuple((f, g) for f, g in pairs),
        values=tuple(values),
        search_bandwidth=bw,
        matrix=tuple(tuple(r) for r in matrix),
        rhs=tuple(rhs),
        found=not result.feasible,
        witness=result.witness,
        beta_density=beta,
    )


def gf_noncoboundary_certificate(kmax: int = 3) -> CertificateReport:
    """Witness that the Gelfand-Fuchs cocycle is not a coboundary.

    Uses the pairs ``(cos k, sin k)`` for ``k = 1..kmax``: their brackets are
    all multiples of the constant field while c3 grows like ``k^3``.
    """
    pairs = [(TrigPoly.cos_mode(k), TrigPoly.sin_mode(k)) for k in range(1, kmax + 1)]
    report = noncoboundary_certificate(pairs, eval_c3)
    if not report.found:
        raise CertificateNotFound(f"mode family up to k={kmax} is consistent with a coboundary")
    return report

"""Seeded randomized verification suites.

Every check is an *evaluator* applied to a JSON payload of inputs.  The suite
runner builds the payload, the evaluator decodes it, so a failing payload
replays bit-for-bit through :func:`replay`.
"""

from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import serialize as sz
from .algebra import BorelLoop, CocycleParams, GElem, GHatElem, ghat_bracket, jacobi_defect
from .coadjoint import (
    annihilator_completion,
    base_functional,
    coad,
    cocycle_on_stab,
    decompose,
    lambda_ok,
    stab_closure_defect,
    stabilizer_elem,
    sympl_restriction_defect,
)
from .cocycles import cocycle_identity_defect, eval_c
from .errors import InconsistentLambda, UnknownSuite
from .reduction import (
    HillPoint,
    SL2Connection,
    apply_unipotent_gauge,
    ds_gauge,
    hill_to_dual,
    momentum_cocycle_res,
    momentum_cocycle_stab,
)
from .trigpoly import TrigPoly

SUITES = (
    "jacobi",
    "cocycle-identity",
    "lambda-relation",
    "stabilizer",
    "closure",
    "symp-orbs",
    "theorem",
    "ds-roundtrip",
)

BASIS_LAMBDAS = (CocycleParams(1, 0, 0), CocycleParams(0, 1, 0), CocycleParams(0, 0, 1),
                 CocycleParams(4, 1, 1))
VALID_LAMBDAS = (CocycleParams(4, 1, 1), CocycleParams(0, 2, 1))
DEFAULT_CHARGES = (Fraction(1), Fraction(2), Fraction(-3))

_DEFAULT_LAMBDAS = {
    "jacobi": BASIS_LAMBDAS,
    "cocycle-identity": BASIS_LAMBDAS,
    "lambda-relation": VALID_LAMBDAS + (CocycleParams(1, 0, 0),),
}


@dataclass(frozen=True)
class SuiteConfig:
    bandwidth: int = 3
    trials: int = 100
    seed: int = 0
    lambdas: Optional[tuple] = None  # None: per-suite defaults
    charges: Optional[tuple] = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.bandwidth < 1:
            raise ValueError("bandwidth must be >= 1")

    def lambdas_for(self, suite: str) -> tuple:
        if self.lambdas is not None:
            return tuple(self.lambdas)
        return _DEFAULT_LAMBDAS.get(suite, VALID_LAMBDAS)

    def charges_for(self) -> tuple:
        return tuple(self.charges) if self.charges is not None else DEFAULT_CHARGES

    def to_json(self, suite: str) -> dict:
        return {
            "bandwidth": self.bandwidth,
            "trials": self.trials,
            "seed": self.seed,
            "lambdas": [sz.lam_to_json(l) for l in self.lambdas_for(suite)],
            "charges": [sz.rat_str(a) for a in self.charges_for()],
        }


@dataclass
class PropertyResult:
    name: str
    checks: int = 0
    failures: int = 0
    counterexample: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "checks": self.checks,
            "failures": self.failures,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }


@dataclass
class SuiteReport:
    suite: str
    config: dict
    properties: list = field(default_factory=list)
    elapsed_s: float = 0.0

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.properties)

    def to_json(self, timing: bool = True) -> dict:
        doc = {
            "suite": self.suite,
            "config": self.config,
            "passed": self.passed,
            "properties": [p.to_json() for p in self.properties],
        }
        if timing:
            doc["elapsed_s"] = round(self.elapsed_s, 3)
        return doc


# --- sampling -------------------------------------------------------------

def trial_rng(seed: int, suite: str, trial: int) -> random.Random:
    """Per-trial generator; independent of execution order."""
    digest = hashlib.sha256(f"{seed}:{suite}:{trial}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3)))


def random_tp(rng: random.Random, bandwidth: int) -> TrigPoly:
    return TrigPoly(
        random_rational(rng),
        [random_rational(rng) for _ in range(bandwidth)],
        [random_rational(rng) for _ in range(bandwidth)],
    )


def random_nonconstant_tp(rng: random.Random, bandwidth: int) -> TrigPoly:
    while True:
        f = random_tp(rng, bandwidth)
        if f.bandwidth:
            return f


def random_borel(rng: random.Random, bandwidth: int) -> BorelLoop:
    return BorelLoop(random_tp(rng, bandwidth), random_tp(rng, bandwidth))


def random_gelem(rng: random.Random, bandwidth: int) -> GElem:
    return GElem.of(random_tp(rng, bandwidth), random_tp(rng, bandwidth), random_tp(rng, bandwidth))


def random_ghat(rng: random.Random, bandwidth: int) -> GHatElem:
    return GHatElem(random_gelem(rng, bandwidth), random_rational(rng))


# --- evaluators -----------------------------------------------------------
# Each takes a JSON payload and returns (value_json, ok).

def _ev_jacobi(inp):
    A, B, C = (sz.ghat_from_json(inp[k]) for k in "ABC")
    d = jacobi_defect(A, B, C, sz.lam_from_json(inp["lam"]))
    return sz.ghat_to_json(d), d.is_zero()


def _ev_bracket_antisymmetry(inp):
    A, B = sz.ghat_from_json(inp["A"]), sz.ghat_from_json(inp["B"])
    lam = sz.lam_from_json(inp["lam"])
    d = ghat_bracket(A, B, lam) + ghat_bracket(B, A, lam)
    return sz.ghat_to_json(d), d.is_zero()


def _ev_centrality(inp):
    A, B = sz.ghat_from_json(inp["A"]), sz.ghat_from_json(inp["B"])
    lam = sz.lam_from_json(inp["lam"])
    d = ghat_bracket(A, B, lam) - ghat_bracket(GHatElem(A.g), GHatElem(B.g), lam)
    return sz.ghat_to_json(d), d.is_zero()


def _ev_cocycle_identity(inp):
    A, B, C = (sz.gelem_from_json(inp[k]) for k in "ABC")
    d = cocycle_identity_defect(A, B, C, sz.lam_from_json(inp["lam"]))
    return sz.pi_to_json(d), d.is_zero()


def _ev_cocycle_antisymmetry(inp):
    A, B = sz.gelem_from_json(inp["A"]), sz.gelem_from_json(inp["B"])
    lam = sz.lam_from_json(inp["lam"])
    d = eval_c(A, B, lam) + eval_c(B, A, lam)
    return sz.pi_to_json(d), d.is_zero()


def _ev_stabilizer_annihilates(inp):
    f, a, lam = sz.tp_from_json(inp["f"]), sz.parse_rat(inp["a"]), sz.lam_from_json(inp["lam"])
    v = coad(stabilizer_elem(f, a, lam), base_functional(a), lam)
    return sz.dual_to_json(v), v.densities_zero()


def _ev_stabilizer_completion(inp):
    f, a, lam = sz.tp_from_json(inp["f"]), sz.parse_rat(inp["a"]), sz.lam_from_json(inp["lam"])
    b = annihilator_completion(f, a, lam).borel
    if b is None:
        return {"feasible": False}, False
    d = b - stabilizer_elem(f, a, lam).b
    return {"feasible": True, "difference": sz.borel_to_json(d)}, d.is_zero()


def _ev_lambda_inconsistent(inp):
    f, a, lam = sz.tp_from_json(inp["f"]), sz.parse_rat(inp["a"]), sz.lam_from_json(inp["lam"])
    try:
        stabilizer_elem(f, a, lam)
        raised = False
    except InconsistentLambda:
        raised = True
    comp = annihilator_completion(f, a, lam)
    witness_ok = comp.witness_valid()
    b = comp.borel
    value = {"raised": raised, "completion_feasible": b is not None, "witness_valid": witness_ok}
    return value, raised and b is None and witness_ok


def _ev_decompose(inp):
    X, a, lam = sz.gelem_from_json(inp["X"]), sz.parse_rat(inp["a"]), sz.lam_from_json(inp["lam"])
    S, h = decompose(X, a, lam)
    rec = S + GElem.embed(h) - X
    stab = coad(S, base_functional(a), lam)
    S2, h2 = decompose(S, a, lam)
    ok = rec.is_zero() and stab.densities_zero() and S.vf == X.vf and S2 == S and h2.is_zero()
    return {"reconstruction_defect": sz.gelem_to_json(rec), "stabilizer_coad": sz.dual_to_json(stab)}, ok


def _ev_closure(inp):
    f, g = sz.tp_from_json(inp["f"]), sz.tp_from_json(inp["g"])
    a, lam = sz.parse_rat(inp["a"]), sz.lam_from_json(inp["lam"])
    d = stab_closure_defect(f, g, a, lam)
    return sz.borel_to_json(d), d.is_zero()


def _ev_cocycle_on_stab(inp):
    f, g = sz.tp_from_json(inp["f"]), sz.tp_from_json(inp["g"])
    a, lam = sz.parse_rat(inp["a"]), sz.lam_from_json(inp["lam"])
    v = cocycle_on_stab(f, g, a, lam)
    return sz.pi_to_json(v), v.is_zero()


def _ev_symp_orbs(inp):
    x, y = sz.borel_from_json(inp["x"]), sz.borel_from_json(inp["y"])
    sf, sg = sz.tp_from_json(inp["sf"]), sz.tp_from_json(inp["sg"])
    a, lam = sz.parse_rat(inp["a"]), sz.lam_from_json(inp["lam"])
    v = sympl_restriction_defect(base_functional(a), x, y, sf, sg, a, lam)
    return sz.pi_to_json(v), v.is_zero()


def _ev_theorem(inp):
    f, g = sz.tp_from_json(inp["f"]), sz.tp_from_json(inp["g"])
    a, lam = sz.parse_rat(inp["a"]), sz.lam_from_json(inp["lam"])
    res, stab = [], []
    for T in inp["T"]:
        h = HillPoint(sz.tp_from_json(T), a)
        res.append(momentum_cocycle_res(f, g, h, lam))
        stab.append(momentum_cocycle_stab(f, g, hill_to_dual(h), lam))
    ok = all(r == s for r, s in zip(res, stab)) and len(set(res)) == 1 and len(set(stab)) == 1
    return {"res": [sz.pi_to_json(v) for v in res], "stab": [sz.pi_to_json(v) for v in stab]}, ok


def _ev_ds_roundtrip(inp):
    c = sz.conn_from_json(inp["conn"])
    h, s = ds_gauge(c)
    gauged = apply_unipotent_gauge(c, s)
    hill = ((TrigPoly(), h.T), (TrigPoly(1), TrigPoly()))
    formula = c.beta + c.alpha * c.alpha + c.alpha.deriv().scale(c.charge)
    # Any other unipotent parameter leaves a diagonal term behind.
    shifted = apply_unipotent_gauge(c, s + TrigPoly(1))
    ok = gauged == hill and h.T == formula and s == -c.alpha and not shifted[0][0].is_zero()
    value = {
        "T": sz.tp_to_json(h.T),
        "s": sz.tp_to_json(s),
        "gauged": [[sz.tp_to_json(e) for e in row] for row in gauged],
    }
    return value, ok


EVALUATORS: dict = {
    "jacobi": _ev_jacobi,
    "bracket-antisymmetry": _ev_bracket_antisymmetry,
    "centrality": _ev_centrality,
    "cocycle-identity": _ev_cocycle_identity,
    "cocycle-antisymmetry": _ev_cocycle_antisymmetry,
    "stabilizer-annihilates": _ev_stabilizer_annihilates,
    "stabilizer-completion": _ev_stabilizer_completion,
    "lambda-inconsistent": _ev_lambda_inconsistent,
    "decompose": _ev_decompose,
    "closure": _ev_closure,
    "cocycle-on-stab": _ev_cocycle_on_stab,
    "symp-orbs": _ev_symp_orbs,
    "theorem": _ev_theorem,
    "ds-roundtrip": _ev_ds_roundtrip,
}


def replay(payload: dict) -> tuple:
    """Re-evaluate a counterexample payload; returns ``(value_json, ok)``."""
    return EVALUATORS[payload["evaluator"]](payload["inputs"])


# --- suite bodies ---------------------------------------------------------

class _Runner:
    def __init__(self, suite: str, cfg: SuiteConfig):
        self.suite = suite
        self.cfg = cfg
        self.props: dict = {}

    def check(self, prop: str, evaluator: str, inputs: dict, trial: int) -> None:
        result = self.props.setdefault(prop, PropertyResult(prop))
        value, ok = EVALUATORS[evaluator](inputs)
        result.checks += 1
        if not ok:
            result.failures += 1
            if result.counterexample is None:
                result.counterexample = {
                    "suite": self.suite,
                    "property": prop,
                    "evaluator": evaluator,
                    "seed": self.cfg.seed,
                    "trial": trial,
                    "inputs": inputs,
                    "value": value,
                }

    def trials(self):
        for i in range(self.cfg.trials):
            yield i, trial_rng(self.cfg.seed, self.suite, i)


def _lam_tag(lam: CocycleParams) -> str:
    return f"lam={lam}"


def _suite_jacobi(run: _Runner) -> None:
    bw = run.cfg.bandwidth
    lams = run.cfg.lambdas_for(run.suite)
    for i, rng in run.trials():
        A, B, C = (random_ghat(rng, bw) for _ in range(3))
        for lam in lams:
            lj = sz.lam_to_json(lam)
            run.check(f"jacobi[{_lam_tag(lam)}]", "jacobi",
                      {"A": sz.ghat_to_json(A), "B": sz.ghat_to_json(B), "C": sz.ghat_to_json(C),
                       "lam": lj}, i)
            pair_in = {"A": sz.ghat_to_json(A), "B": sz.ghat_to_json(B), "lam": lj}
            run.check(f"antisymmetry[{_lam_tag(lam)}]", "bracket-antisymmetry", pair_in, i)
            run.check(f"centrality[{_lam_tag(lam)}]", "centrality", pair_in, i)


def _suite_cocycle_identity(run: _Runner) -> None:
    bw = run.cfg.bandwidth
    lams = list(run.cfg.lambdas_for(run.suite))
    for i, rng in run.trials():
        A, B, C = (random_gelem(rng, bw) for _ in range(3))
        mixed = CocycleParams(random_rational(rng), random_rational(rng), random_rational(rng))
        for tag, lam in [(_lam_tag(l), l) for l in lams] + [("lam=random", mixed)]:
            lj = sz.lam_to_json(lam)
            run.check(f"cocycle-identity[{tag}]", "cocycle-identity",
                      {"A": sz.gelem_to_json(A), "B": sz.gelem_to_json(B), "C": sz.gelem_to_json(C),
                       "lam": lj}, i)
            run.check(f"antisymmetry[{tag}]", "cocycle-antisymmetry",
                      {"A": sz.gelem_to_json(A), "B": sz.gelem_to_json(B), "lam": lj}, i)


def _suite_lambda_relation(run: _Runner) -> None:
    bw = run.cfg.bandwidth
    charges = [a for a in run.cfg.charges_for() if a != 0] or [Fraction(1)]
    for lam in run.cfg.lambdas_for(run.suite):
        lj = sz.lam_to_json(lam)
        if lambda_ok(lam):
            for i, rng in run.trials():
                f = random_tp(rng, bw)
                a = rng.choice(charges)
                inp = {"f": sz.tp_to_json(f), "a": sz.rat_str(a), "lam": lj}
                run.check(f"annihilates[{_lam_tag(lam)}]", "stabilizer-annihilates", inp, i)
                run.check(f"completion-matches[{_lam_tag(lam)}]", "stabilizer-completion", inp, i)
        else:
            sin = TrigPoly.sin_mode(1)
            run.check(f"inconsistent[{_lam_tag(lam)}]", "lambda-inconsistent",
                      {"f": sz.tp_to_json(sin), "a": "1", "lam": lj}, -1)
            for i, rng in run.trials():
                f = random_nonconstant_tp(rng, bw)
                a = rng.choice(charges)
                run.check(f"inconsistent[{_lam_tag(lam)}]", "lambda-inconsistent",
                          {"f": sz.tp_to_json(f), "a": sz.rat_str(a), "lam": lj}, i)


def _valid_lams(run: _Runner) -> list:
    return [l for l in run.cfg.lambdas_for(run.suite) if lambda_ok(l)]


def _suite_stabilizer(run: _Runner) -> None:
    bw = run.cfg.bandwidth
    for i, rng in run.trials():
        X = random_gelem(rng, bw)
        a = rng.choice(run.cfg.charges_for())
        for lam in _valid_lams(run):
            run.check(f"decompose[{_lam_tag(lam)}]", "decompose",
                      {"X": sz.gelem_to_json(X), "a": sz.rat_str(a), "lam": sz.lam_to_json(lam)}, i)


def _suite_closure(run: _Runner) -> None:
    bw = run.cfg.bandwidth
    for i, rng in run.trials():
        f, g = random_tp(rng, bw), random_tp(rng, bw)
        a = rng.choice(run.cfg.charges_for())
        for lam in _valid_lams(run):
            inp = {"f": sz.tp_to_json(f), "g": sz.tp_to_json(g), "a": sz.rat_str(a),
                   "lam": sz.lam_to_json(lam)}
            run.check(f"closure[{_lam_tag(lam)}]", "closure", inp, i)
            run.check(f"cocycle-on-stab[{_lam_tag(lam)}]", "cocycle-on-stab", inp, i)


def _suite_symp_orbs(run: _Runner) -> None:
    bw = run.cfg.bandwidth
    for i, rng in run.trials():
        x, y = random_borel(rng, bw), random_borel(rng, bw)
        sf, sg = random_tp(rng, bw), random_tp(rng, bw)
        a = rng.choice(run.cfg.charges_for())
        for lam in _valid_lams(run):
            run.check(f"symp-orbs[{_lam_tag(lam)}]", "symp-orbs",
                      {"x": sz.borel_to_json(x), "y": sz.borel_to_json(y), "sf": sz.tp_to_json(sf),
                       "sg": sz.tp_to_json(sg), "a": sz.rat_str(a), "lam": sz.lam_to_json(lam)}, i)


def _suite_theorem(run: _Runner) -> None:
    bw = run.cfg.bandwidth
    for i, rng in run.trials():
        f, g = random_tp(rng, bw), random_tp(rng, bw)
        Ts = [TrigPoly(), random_tp(rng, bw), random_tp(rng, bw)]
        for lam in _valid_lams(run):
            for a in run.cfg.charges_for():
                run.check(f"theorem[{_lam_tag(lam)},a={a}]", "theorem",
                          {"f": sz.tp_to_json(f), "g": sz.tp_to_json(g),
                           "T": [sz.tp_to_json(T) for T in Ts],
                           "a": sz.rat_str(a), "lam": sz.lam_to_json(lam)}, i)


def _suite_ds_roundtrip(run: _Runner) -> None:
    bw = run.cfg.bandwidth
    for i, rng in run.trials():
        c = SL2Connection(random_tp(rng, bw), random_tp(rng, bw), TrigPoly(1),
                          rng.choice(run.cfg.charges_for()))
        run.check("ds-roundtrip", "ds-roundtrip", {"conn": sz.conn_to_json(c)}, i)


_BODIES: dict = {
    "jacobi": _suite_jacobi,
    "cocycle-identity": _suite_cocycle_identity,
    "lambda-relation": _suite_lambda_relation,
    "stabilizer": _suite_stabilizer,
    "closure": _suite_closure,
    "symp-orbs": _suite_symp_orbs,
    "theorem": _suite_theorem,
    "ds-roundtrip": _suite_ds_roundtrip,
}


def run_suite(name: str, cfg: Optional[SuiteConfig] = None) -> list:
    """Run one suite (or ``"all"``); returns a list of SuiteReports."""
    cfg = cfg or SuiteConfig()
    if name == "all":
        return [r for n in SUITES for r in run_suite(n, cfg)]
    if name not in _BODIES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    run = _Runner(name, cfg)
    start = time.perf_counter()
    _BODIES[name](run)
    report = SuiteReport(name, cfg.to_json(name), list(run.props.values()))
    report.elapsed_s = time.perf_counter() - start
    return [report]

"""Postulate verification suite and report emission."""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .interference import I3, random_configuration
from .jordan import Algebra, jordan_product
from .logic import (
    Proposition,
    decompose_to_atoms,
    difference,
    idempotency_residual,
    is_orthogonal,
    leq,
    orthocomplement,
    ortho_sum,
    random_atom,
    random_proposition,
    sum_orthogonal,
    unit,
)
from .parser import parse_algebra_spec
from .probability import (
    U_map,
    conditional_probability,
    decompose_state,
    evaluate,
    random_state,
    separating_state,
    transition_probability,
)
from .spectral import idempotency_residuals, is_positive, spectral_decomposition, trace_consistency
from .spin import verify_lift, verify_nonuniqueness

REPORT_VERSION = "1"
CHECKS = ("A", "B", "C", "D", "lattice", "spectral", "counterexample")
DEFAULT_TOLERANCES = {
    "A": 1e-9,
    "B": 1e-8,
    "C": 1e-10,
    "D": 1e-8,
    "lattice": 1e-8,
    "spectral": 1e-7,
    "counterexample": 1e-9,
}
DEFAULT_SAMPLES = 500
DEFAULT_SEED = 42


@dataclass
class SuiteConfig:
    spec: str
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    tolerances: dict = field(default_factory=dict)
    checks: tuple | None = None  # None: every check that applies

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        for name, tol in self.tolerances.items():
            if name not in CHECKS:
                raise ValueError(f"unknown check {name!r} in tolerance overrides")
            if not tol > 0:
                raise ValueError(f"tolerance for {name} must be > 0")
        if self.checks is not None:
            unknown = set(self.checks) - set(CHECKS)
            if unknown:
                raise ValueError(f"unknown checks: {', '.join(sorted(unknown))}")

    def tolerance(self, name) -> float:
        return float(self.tolerances.get(name, DEFAULT_TOLERANCES[name]))


@dataclass
class CheckResult:
    name: str
    residual: float
    threshold: float
    passed: bool
    samples: int
    millis: float = 0.0
    detail: str = ""


@dataclass
class SuiteReport:
    spec: str
    seed: int
    samples: int
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def subseed(master: int, name: str) -> np.random.Generator:
    """Generator for one check, independent of the order checks run in."""
    digest = hashlib.sha256(name.encode()).digest()
    return np.random.default_rng([int(master), int.from_bytes(digest[:8], "little")])


def _sub_proposition(p: Proposition, rng) -> Proposition:
    """Random q <= p (possibly 0 or p itself)."""
    if p.rank == 0:
        return p
    atoms = decompose_to_atoms(p, rng)
    keep = [a for a in atoms if rng.random() < 0.5]
    return sum_orthogonal(keep, p.algebra)


def _rand_rank(alg, rng, low=0, high=None):
    high = alg.rank if high is None else high
    return int(rng.integers(low, high + 1))


# --- individual checks ------------------------------------------------------
# each returns (residual, samples, detail); pass means residual <= threshold


def check_A(alg: Algebra, n, rng):
    worst = {"cond": 0.0, "product": 0.0, "U_p": 0.0, "indep": 0.0, "separation": 0.0}
    for _ in range(n):
        mu = random_state(alg, rng)
        p = random_proposition(alg, _rand_rank(alg, rng, 1), rng)
        q = _sub_proposition(p, rng)
        worst["cond"] = max(worst["cond"], abs(conditional_probability(mu, q, p) - mu(q) / mu(p)))
        r = random_proposition(alg, _rand_rank(alg, rng), rng)
        lhs = conditional_probability(mu, r, p) * mu(p)
        worst["product"] = max(worst["product"], abs(lhs - evaluate(mu, U_map(p, r))))
        x = alg.random_element(rng)
        once = U_map(p, x)
        worst["U_p"] = max(worst["U_p"], (U_map(p, once) - once).norm() / x.norm())
        e = random_atom(alg, rng)
        if mu(e) > 0.01:
            worst["indep"] = max(worst["indep"], abs(conditional_probability(mu, r, e) - transition_probability(e, r)))
        s = random_proposition(alg, _rand_rank(alg, rng), rng)
        if (p.element - s.element).norm() > 1e-6:
            w = separating_state(p, s)
            if abs(w(p) - w(s)) <= 1e-9:
                worst["separation"] = 1.0
    residual = max(worst.values())
    detail = ", ".join(f"{k}={v:.2e}" for k, v in worst.items())
    spin = [f for f in alg.descriptor.factors if f.spin_like]
    if spin:
        rep = verify_nonuniqueness(spin[0].sphere_dim)
        detail = (
            f"uniqueness FAILS: spin factor {spin[0]} admits two states certain of the same atom "
            f"(gap {rep.gap:.3g}); density-state residuals: {detail}"
        )
        return residual, n, detail, False
    return residual, n, detail, None


def check_B(alg: Algebra, n, rng, props_per_state=5):
    worst, too_many = 0.0, False
    for _ in range(n):
        mu = random_state(alg, rng)
        dec = decompose_state(mu, rng)
        if len(dec.pairs) > alg.rank:
            too_many = True
        atoms = dec.atoms
        for i in range(len(atoms)):
            for j in range(i + 1, len(atoms)):
                worst = max(worst, jordan_product(atoms[i].element, atoms[j].element).norm())
        for _ in range(props_per_state):
            p = random_proposition(alg, _rand_rank(alg, rng), rng)
            worst = max(worst, abs(dec(p) - mu(p)))
    detail = "more than n atoms in a decomposition" if too_many else f"{props_per_state} propositions per state"
    return worst, n, detail, (False if too_many else None)


def check_C(alg: Algebra, n, rng):
    worst = 0.0
    for _ in range(n):
        e, f = random_atom(alg, rng), random_atom(alg, rng)
        worst = max(worst, abs(transition_probability(e, f) - transition_probability(f, e)))
    return worst, n, "max |P(f|e) - P(e|f)| over atom pairs", None


def check_D(alg: Algebra, n, rng):
    if alg.rank < 3:
        return 0.0, 0, "vacuous: rank < 3, no three orthogonal nonzero propositions", None
    worst = 0.0
    for _ in range(n):
        mu, q, blocks = random_configuration(alg, 3, rng)
        worst = max(worst, abs(I3(mu, q, *blocks)))
    return worst, n, "max |I3| over random configurations", None


def check_lattice(alg: Algebra, n, rng):
    one = unit(alg)
    worst = 0.0
    failures = []
    for _ in range(n):
        p = random_proposition(alg, _rand_rank(alg, rng), rng)
        q = _sub_proposition(p, rng)
        pc, qc = orthocomplement(p), orthocomplement(q)
        if not leq(q, p):
            failures.append("q<=p")
        # (b) q <= p implies p' <= q'
        if not leq(pc, qc):
            failures.append("p'<=q'")
        # (a) (p')' = p
        if orthocomplement(pc) is not p:
            failures.append("p''=p")
        # (d) p + p' = I
        worst = max(worst, (ortho_sum(p, pc).element - one.element).norm())
        # (e) orthomodular law
        rest = difference(p, q)
        worst = max(worst, idempotency_residual(rest.element))
        worst = max(worst, (ortho_sum(q, rest).element - p.element).norm())
        # 0 <= p <= I
        if not (leq(p, one) and is_positive(p.element)):
            failures.append("0<=p<=I")
        if not is_orthogonal(q, pc):
            failures.append("q _|_ p'")
    detail = "axioms (a)-(e) on random comparable pairs"
    if failures:
        return worst, n, f"failed: {', '.join(sorted(set(failures)))}", False
    return worst, n, detail, None


def check_spectral(alg: Algebra, n, rng):
    worst = 0.0
    for _ in range(n):
        x = alg.random_element(rng)
        dec = spectral_decomposition(x)
        idem, orth = idempotency_residuals(dec)
        rec = (dec.reconstruct() - x).norm() / x.norm()
        worst = max(worst, idem, orth, rec, trace_consistency(x, dec) / x.norm())
        if sum(dec.ranks) != alg.rank:
            return worst, n, "ranks do not add up to n", False
    return worst, n, "reconstruction, idempotency, orthogonality, trace", None


def check_counterexample(alg: Algebra, n, rng):
    spin = [(i, f) for i, f in enumerate(alg.descriptor.factors) if f.spin_like]
    if not spin:
        return 0.0, 0, "not applicable: no spin factor", None
    worst = 0.0
    ok = True
    notes = []
    for index, f in spin:
        rep = verify_nonuniqueness(f.sphere_dim, num_direction_samples=max(n, f.sphere_dim + 2))
        worst = max(worst, rep.mu_violation, rep.nu_violation)
        ok = ok and rep.counterexample and rep.nu_not_density
        notes.append(f"{f}: gap {rep.gap:.3g}, nu fit residual {rep.nu_fit_residual:.3g}")
        if len(alg.factors) > 1:
            lift = verify_lift(alg, index)
            worst = max(worst, lift.frame_violation)
            ok = ok and lift.passed
            notes.append(f"lift into {alg.descriptor} ok" if lift.passed else "lift FAILED")
    return worst, n, "counterexample found; " + "; ".join(notes), (None if ok else False)


_RUNNERS = {
    "A": check_A,
    "B": check_B,
    "C": check_C,
    "D": check_D,
    "lattice": check_lattice,
    "spectral": check_spectral,
    "counterexample": check_counterexample,
}


def run_postulate_suite(config: SuiteConfig) -> SuiteReport:
    """Run the enabled checks; numerical breakdowns become failed checks."""
    desc = parse_algebra_spec(config.spec)
    alg = Algebra(desc)
    if config.checks is None:
        names = [c for c in CHECKS if c != "counterexample" or desc.has_spin_factor]
    else:
        names = list(dict.fromkeys(config.checks))
    results = []
    for name in sorted(names):
        threshold = config.tolerance(name)
        rng = subseed(config.seed, name)
        start = time.perf_counter()
        try:
            residual, samples, detail, verdict = _RUNNERS[name](alg, config.samples, rng)
            passed = residual <= threshold if verdict is None else verdict
        except (ArithmeticError, ValueError) as exc:
            residual, samples, detail, passed = float("inf"), config.samples, f"error: {exc}", False
        millis = (time.perf_counter() - start) * 1000.0
        results.append(CheckResult(name, float(residual), threshold, bool(passed), samples, millis, detail))
    return SuiteReport(str(desc), config.seed, config.samples, results)


def report_dict(report: SuiteReport, timings=False) -> dict:
    return {
        "version": REPORT_VERSION,
        "tool_version": __version__,
        "spec": report.spec,
        "seed": report.seed,
        "samples": report.samples,
        "checks": [
            {
                "name": c.name,
                "residual": c.residual if np.isfinite(c.residual) else None,
                "threshold": c.threshold,
                "passed": c.passed,
                "samples": c.samples,
                "millis": round(c.millis, 3) if timings else None,
                "detail": c.detail,
            }
            for c in report.checks
        ],
        "passed": report.passed,
    }


def emit_report(report: SuiteReport, format="json", timings=False) -> str:
    """Render a report.  JSON omits wall times unless ``timings`` so that it is reproducible."""
    if format == "json":
        return json.dumps(report_dict(report, timings), indent=2) + "\n"
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    lines = [f"algebra {report.spec}   seed {report.seed}   samples {report.samples}"]
    header = f"{'check':<15}{'residual':>12}{'threshold':>12}  {'result':<6}{'n':>6}{'ms':>10}  detail"
    lines += [header, "-" * len(header)]
    for c in report.checks:
        res = f"{c.residual:.3e}" if np.isfinite(c.residual) else "inf"
        lines.append(
            f"{c.name:<15}{res:>12}{c.threshold:>12.1e}  {'PASS' if c.passed else 'FAIL':<6}"
            f"{c.samples:>6}{c.millis:>10.1f}  {c.detail}"
        )
    lines.append(f"overall: {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"

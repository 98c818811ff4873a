"""Non-unique conditioning on spin factors.

In spin(n) the nontrivial propositions are exactly the atoms
(1/2)(1, u), |u| = 1, and the only orthogonal pairs of nonzero
propositions are antipodal atoms.  Any assignment with
value(u) + value(-u) = 1 is therefore a state of the logic, whether or not
it comes from a density.  Starting from the pure state of an atom e and
changing the value at a single antipodal pair {f, f'} gives a second state
that is also certain of e, so "the state with probability 1 at e" is not
unique.

Logic states are kept lazily as a formula plus a small override table,
since the atoms form a whole sphere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .jordan import Algebra, Element, MatrixFactor, SpinFactor
from .logic import Proposition, random_frame

MATCH_TOL = 1e-12


def _unit(u, name="direction"):
    u = np.asarray(u, dtype=float)
    if u.ndim != 1:
        raise ValueError(f"{name} must be a vector")
    r = np.linalg.norm(u)
    if abs(r - 1.0) > 1e-9:
        raise ValueError(f"{name} must be a unit vector (norm {r})")
    return u / r


@dataclass(frozen=True)
class SpinLogicState:
    """value(u) = (1 + <u0, u>)/2 except on overridden antipodal pairs."""

    n: int
    u0: np.ndarray
    overrides: tuple = ()

    def value(self, u) -> float:
        u = np.asarray(u, dtype=float)
        for u1, v in self.overrides:
            if np.linalg.norm(u - u1) <= MATCH_TOL:
                return v
            if np.linalg.norm(u + u1) <= MATCH_TOL:
                return 1.0 - v
        return 0.5 * (1.0 + float(self.u0 @ u))

    def __call__(self, p) -> float:
        """Evaluate on a direction vector, or on a proposition/element of spin(n)."""
        if isinstance(p, Proposition):
            p = p.element
        if isinstance(p, Element):
            f = p.algebra.factors
            if len(f) != 1 or f[0].desc.sphere_dim != self.n:
                raise ValueError(f"expected a proposition of a rank-2 factor with sphere S^{self.n - 1}")
            return _evaluate_component(self, f[0], p.coords)
        return self.value(p)


def _evaluate_component(state, factor, coords) -> float:
    tr = factor.trace(coords)
    if abs(tr) < 0.5:
        return 0.0
    if abs(tr - 2.0) < 0.5:
        return 1.0
    return state.value(atom_direction(factor, coords))


def atom_direction(factor, coords) -> np.ndarray:
    """Unit vector u of an atom in a spin-like factor."""
    if isinstance(factor, SpinFactor):
        u = 2.0 * np.asarray(coords[1:])
    elif isinstance(factor, MatrixFactor) and factor.k == 2 and factor.m <= 4:
        # P = [[(1 + u_0)/2, z/2], [conj(z)/2, (1 - u_0)/2]], z = (u_1, ..., u_m)
        u = np.concatenate([[coords[0] - coords[1]], 2.0 * np.asarray(coords[2:])])
    else:
        raise ValueError("not a spin-like factor")
    return u / np.linalg.norm(u)


def direction_atom(factor, u) -> np.ndarray:
    """Coordinates of the atom with direction u in a spin-like factor."""
    u = np.asarray(u, dtype=float)
    if isinstance(factor, SpinFactor):
        return 0.5 * np.concatenate([[1.0], u])
    if isinstance(factor, MatrixFactor) and factor.k == 2 and factor.m <= 4:
        return np.concatenate([[0.5 * (1 + u[0]), 0.5 * (1 - u[0])], 0.5 * u[1:]])
    raise ValueError("not a spin-like factor")


def base_state(u0) -> SpinLogicState:
    """The pure (density-representable) state certain of the atom with direction u0."""
    u0 = _unit(u0, "u0")
    if u0.size < 2:
        raise ValueError("spin(n) needs n >= 2")
    return SpinLogicState(u0.size, u0)


def perturb(mu: SpinLogicState, u1, new_value: float) -> SpinLogicState:
    """Copy of mu with value new_value at u1 and 1 - new_value at -u1."""
    u1 = _unit(u1, "u1")
    if u1.size != mu.n:
        raise ValueError(f"u1 must have {mu.n} components")
    if min(np.linalg.norm(u1 - mu.u0), np.linalg.norm(u1 + mu.u0)) <= 1e-9:
        raise ValueError("cannot perturb at +-u0: the state must stay certain of e")
    if not 0.0 <= new_value <= 1.0:
        raise ValueError("new_value must lie in [0, 1]")
    if new_value == mu.value(u1):
        return mu
    kept = tuple((u, v) for u, v in mu.overrides if min(np.linalg.norm(u - u1), np.linalg.norm(u + u1)) > MATCH_TOL)
    return SpinLogicState(mu.n, mu.u0, kept + ((u1, float(new_value)),))


def sample_directions(n: int, count: int, seed=0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    d = rng.standard_normal((count, n))
    return d / np.linalg.norm(d, axis=1, keepdims=True)


def special_directions(state: SpinLogicState) -> list:
    out = [state.u0, -state.u0]
    for u1, _ in state.overrides:
        out.extend([u1, -u1])
    return out


def verify_state(state: SpinLogicState, num_samples=200, seed=0) -> float:
    """Largest violation of the state axioms over sampled and overridden directions.

    Checks value(u) + value(-u) = 1 (the only orthogonal decompositions of I
    into atoms) and 0 <= value(u) <= 1.  Returns 0.0 for a valid state.
    """
    dirs = list(sample_directions(state.n, num_samples, seed)) + special_directions(state)
    worst = 0.0
    for u in dirs:
        a, b = state.value(u), state.value(-u)
        worst = max(worst, abs(a + b - 1.0), -a, a - 1.0, -b, b - 1.0)
    return worst


def density_fit_residual(state: SpinLogicState, directions) -> float:
    """Least-squares misfit of value(u) ~ s + <v, u> over the given directions.

    A density a = (s, v) of spin(n) gives <a | (1/2)(1, u)> = s + <v, u>, so
    a clearly positive residual certifies that no density reproduces the state.
    """
    dirs = np.asarray(directions)
    design = np.hstack([np.ones((len(dirs), 1)), dirs])
    target = np.array([state.value(u) for u in dirs])
    coef, *_ = np.linalg.lstsq(design, target, rcond=None)
    return float(np.linalg.norm(design @ coef - target))


@dataclass(frozen=True)
class NonuniquenessReport:
    n: int
    u0: np.ndarray
    u1: np.ndarray
    mu: SpinLogicState
    nu: SpinLogicState
    mu_at_e: float
    nu_at_e: float
    gap: float  # |mu(f) - nu(f)|
    mu_violation: float
    nu_violation: float
    mu_fit_residual: float
    nu_fit_residual: float
    num_directions: int

    @property
    def counterexample(self) -> bool:
        """Two valid states, both certain of e, that differ at f."""
        return (
            self.mu_violation <= 1e-12
            and self.nu_violation <= 1e-12
            and self.mu_at_e == 1.0
            and self.nu_at_e == 1.0
            and self.gap > 0.0
        )

    @property
    def nu_not_density(self) -> bool:
        return self.nu_fit_residual > 0.01

    def summary(self) -> dict:
        return {
            "n": self.n,
            "u0": self.u0.tolist(),
            "u1": self.u1.tolist(),
            "mu(e)": self.mu_at_e,
            "nu(e)": self.nu_at_e,
            "mu(f)": self.mu.value(self.u1),
            "nu(f)": self.nu.value(self.u1),
            "gap": self.gap,
            "mu_violation": self.mu_violation,
            "nu_violation": self.nu_violation,
            "mu_fit_residual": self.mu_fit_residual,
            "nu_fit_residual": self.nu_fit_residual,
            "directions": self.num_directions,
            "counterexample": self.counterexample,
            "nu_not_density": self.nu_not_density,
        }


def default_directions(n: int):
    u0 = np.zeros(n)
    u0[-1] = 1.0
    u1 = np.zeros(n)
    u1[0] = 1.0
    return u0, u1


def verify_nonuniqueness(n: int, u0=None, u1=None, new_value=0.9, num_direction_samples=200, seed=0):
    if n < 2:
        raise ValueError("spin(n) needs n >= 2")
    d0, d1 = default_directions(n)
    u0 = d0 if u0 is None else _unit(u0, "u0")
    u1 = d1 if u1 is None else _unit(u1, "u1")
    if u0.size != n or u1.size != n:
        raise ValueError(f"directions must have {n} components")
    mu = base_state(u0)
    nu = perturb(mu, u1, new_value)
    dirs = special_directions(nu) + list(sample_directions(n, max(num_direction_samples, n + 2), seed))
    return NonuniquenessReport(
        n=n,
        u0=u0,
        u1=u1,
        mu=mu,
        nu=nu,
        mu_at_e=mu.value(u0),
        nu_at_e=nu.value(u0),
        gap=abs(mu.value(u1) - nu.value(u1)),
        mu_violation=verify_state(mu, num_direction_samples, seed),
        nu_violation=verify_state(nu, num_direction_samples, seed),
        mu_fit_residual=density_fit_residual(mu, dirs),
        nu_fit_residual=density_fit_residual(nu, dirs),
        num_directions=len(dirs),
    )


# --- lifting to direct sums ----------------------------------------------------


@dataclass(frozen=True)
class LiftedLogicState:
    """A spin logic state placed on one summand of a larger algebra.

    value(p) is the spin state evaluated on the component of p in that
    summand; the other summands get weight zero.
    """

    algebra: Algebra
    factor: int
    state: SpinLogicState

    def __call__(self, p) -> float:
        el = p.element if isinstance(p, Proposition) else p
        f = self.algebra.factors[self.factor]
        return _evaluate_component(self.state, f, el.coords[self.algebra.slices[self.factor]])

    def atom(self, u) -> Proposition:
        f = self.algebra.factors[self.factor]
        return Proposition(self.algebra.embed(self.factor, direction_atom(f, u)), 1)


@dataclass(frozen=True)
class LiftReport:
    spec: str
    factor: int
    mu_at_e: float
    nu_at_e: float
    gap: float
    frame_violation: float  # max |sum of values over a frame - 1|
    frames: int

    @property
    def passed(self) -> bool:
        return self.mu_at_e == 1.0 and self.nu_at_e == 1.0 and self.gap > 0.0 and self.frame_violation <= 1e-9


def verify_lift(algebra: Algebra, factor: int | None = None, new_value=0.9, num_frames=50, seed=0) -> LiftReport:
    """Check that the counterexample survives inside a direct sum.

    Both lifted states must sum to 1 over every frame (n orthogonal atoms
    summing to I): random frames, plus frames through e and through f.
    """
    if factor is None:
        factor = next((i for i, f in enumerate(algebra.descriptor.factors) if f.spin_like), None)
        if factor is None:
            raise ValueError(f"{algebra.descriptor} has no spin factor")
    desc = algebra.descriptor.factors[factor]
    if not desc.spin_like:
        raise ValueError(f"factor {factor} ({desc}) is not a spin factor")
    n = desc.sphere_dim
    u0, u1 = default_directions(n)
    mu = LiftedLogicState(algebra, factor, base_state(u0))
    nu = LiftedLogicState(algebra, factor, perturb(mu.state, u1, new_value))

    frames = [random_frame(algebra, np.random.default_rng([seed, i])) for i in range(num_frames)]
    rest = [a for a in random_frame(algebra, np.random.default_rng([seed, num_frames])) if not _on_factor(a, algebra, factor)]
    for u in (u0, u1):
        frames.append([mu.atom(u), mu.atom(-u)] + rest)

    worst = 0.0
    for frame in frames:
        for lifted in (mu, nu):
            worst = max(worst, abs(sum(lifted(a) for a in frame) - 1.0))
    e, f = mu.atom(u0), mu.atom(u1)
    return LiftReport(str(algebra.descriptor), factor, mu(e), nu(e), abs(mu(f) - nu(f)), worst, len(frames))


def _on_factor(p: Proposition, algebra: Algebra, factor: int) -> bool:
    return float(np.linalg.norm(p.element.coords[algebra.slices[factor]])) > 1e-9

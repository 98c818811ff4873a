"""States, conditional and transition probabilities, the trace state, U_p and box.

A state is represented by a positive, trace-one density a and acts on
propositions through the trace inner product, mu(p) = <a | p>.
Conditioning on p is the Jordan-algebraic Lueders rule

    mu(q | p) = mu({p, q, p}) / mu(p).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .jordan import Algebra, Element, inner_product, natural_trace, triple_product
from .logic import (
    Proposition,
    certify,
    decompose_to_atoms,
    is_orthogonal,
    orthocomplement,
    random_proposition,
)
from .spectral import eigenvalues, spectral_decomposition

NULL_EPS = 1e-9
STATE_TOL = 1e-8


class NullConditionError(ValueError):
    """Conditioning on a proposition of (near) zero probability."""


class NotAnAtomError(ValueError):
    pass


def _el(x) -> Element:
    return x.element if isinstance(x, Proposition) else x


@dataclass(frozen=True, eq=False)
class State:
    density: Element

    def __post_init__(self):
        tr = natural_trace(self.density)
        if abs(tr - 1.0) > STATE_TOL:
            raise ValueError(f"density has trace {tr}, expected 1")
        low = eigenvalues(self.density)[-1]
        if low < -STATE_TOL:
            raise ValueError(f"density is not positive (eigenvalue {low:.3e})")

    @property
    def algebra(self) -> Algebra:
        return self.density.algebra

    def __call__(self, p) -> float:
        return evaluate(self, p)


def evaluate(mu: State, p) -> float:
    """mu(p) = <a | p>; also accepts arbitrary elements (the linear extension)."""
    return inner_product(mu.density, _el(p))


def U_map(p, x) -> Element:
    """U_p(x) = {p, x, p}."""
    pe = _el(p)
    return triple_product(pe, _el(x), pe)


def box_product(p: Proposition, q: Proposition) -> Element:
    """p box q = (q + U_p q - U_p' q) / 2."""
    q_el = _el(q)
    return 0.5 * (q_el + U_map(p, q_el) - U_map(orthocomplement(p), q_el))


def conditional_probability(mu: State, q, p, eps=NULL_EPS) -> float:
    mp = evaluate(mu, p)
    if mp <= eps:
        raise NullConditionError(f"mu(p) = {mp:.3e} <= {eps:g}")
    return evaluate(mu, U_map(p, q)) / mp


def condition(mu: State, p, eps=NULL_EPS) -> State:
    """The conditioned state, density U_p(a) / mu(p)."""
    mp = evaluate(mu, p)
    if mp <= eps:
        raise NullConditionError(f"mu(p) = {mp:.3e} <= {eps:g}")
    return State(U_map(p, mu.density) / mp)


def transition_probability(e: Proposition, q) -> float:
    """State-independent P(q | e) = <e | q> for an atom e."""
    if not isinstance(e, Proposition):
        e = certify(e)
    if e.rank != 1:
        raise NotAnAtomError(f"rank {e.rank} proposition is not an atom")
    return inner_product(e.element, _el(q))


def random_state(algebra: Algebra, seed=None) -> State:
    """Density x o x / trace(x o x) for a seeded random x (full rank almost surely)."""
    rng = np.random.default_rng(seed)
    x = algebra.random_element(rng)
    sq = x.square()
    return State(sq / natural_trace(sq))


def trace_state(algebra: Algebra) -> State:
    return State(algebra.identity() / algebra.rank)


def atom_state(e: Proposition) -> State:
    """The pure state with density e."""
    return State(e.element)


def separating_state(p: Proposition, q: Proposition, eps=0.5) -> State:
    """A state with mu(p) != mu(q), density proportional to I + eps (p - q)/|p - q|."""
    d = p.element - q.element
    size = d.norm()
    if size == 0.0:
        raise ValueError("p and q coincide")
    alg = p.algebra
    density = alg.identity() + (eps / size) * d
    mu = State(density / natural_trace(density))
    if abs(mu(p) - mu(q)) < 1e-12:
        mu = trace_state(alg)
    return mu


def state_independence_check(e: Proposition, samples=100, seed=0, min_weight=0.01) -> float:
    """max |mu(q|e) - P(q|e)| over seeded random states and propositions."""
    if e.rank != 1:
        raise NotAnAtomError(f"rank {e.rank} proposition is not an atom")
    alg = e.algebra
    rng = np.random.default_rng(seed)
    worst = 0.0
    done = 0
    while done < samples:
        mu = random_state(alg, rng)
        if mu(e) <= min_weight:
            continue
        q = random_proposition(alg, int(rng.integers(0, alg.rank + 1)), rng)
        worst = max(worst, abs(conditional_probability(mu, q, e) - transition_probability(e, q)))
        done += 1
    return worst


@dataclass(frozen=True)
class TraceIdentityResiduals:
    total: float  # |tau(q|p) tau(p) + tau(q|p') tau(p') - tau(q)|
    on_p: float  # |tau(q|p) - mean_k P(q|e_k)|, e_k atoms of p
    on_complement: float  # same on p'

    @property
    def worst(self) -> float:
        return max(self.total, self.on_p, self.on_complement)


def trace_conditional_identity(p: Proposition, q: Proposition, seed=0) -> TraceIdentityResiduals:
    if p.rank == 0 or p.rank == p.algebra.rank:
        raise ValueError("need 0 != p != I")
    tau = trace_state(p.algebra)
    pc = orthocomplement(p)
    lhs = conditional_probability(tau, q, p) * tau(p) + conditional_probability(tau, q, pc) * tau(pc)
    total = abs(lhs - tau(q))

    def averaged(r):
        atoms = decompose_to_atoms(r, seed)
        return np.mean([transition_probability(e, q) for e in atoms])

    on_p = abs(conditional_probability(tau, q, p) - averaged(p))
    on_complement = abs(conditional_probability(tau, q, pc) - averaged(pc))
    return TraceIdentityResiduals(total, on_p, on_complement)


@dataclass(frozen=True)
class AtomicDecomposition:
    """mu(p) = sum_k r_k P(p | e_k) with pairwise orthogonal atoms e_k."""

    pairs: tuple

    def __call__(self, p) -> float:
        return sum(r * transition_probability(e, p) for r, e in self.pairs)

    @property
    def weights(self) -> np.ndarray:
        return np.array([r for r, _ in self.pairs])

    @property
    def atoms(self) -> list:
        return [e for _, e in self.pairs]


def decompose_state(mu: State, seed=0, drop_tol=1e-14) -> AtomicDecomposition:
    pairs = []
    for lam, proj in spectral_decomposition(mu.density):
        if abs(lam) <= drop_tol:
            continue
        for e in decompose_to_atoms(certify(proj, tol=1e-7), seed):
            pairs.append((lam, e))
    return AtomicDecomposition(tuple(pairs))


def state_from_atoms(pairs) -> State:
    pairs = [(float(r), e) for r, e in (pairs.pairs if isinstance(pairs, AtomicDecomposition) else pairs)]
    if not pairs:
        raise ValueError("need at least one atom")
    for _, e in pairs:
        if e.rank != 1:
            raise NotAnAtomError(f"rank {e.rank} proposition is not an atom")
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            if not is_orthogonal(pairs[i][1], pairs[j][1]):
                raise ValueError(f"atoms {i} and {j} are not orthogonal")
    density = pairs[0][1].element * pairs[0][0]
    for r, e in pairs[1:]:
        density = density + r * e.element
    return State(density)

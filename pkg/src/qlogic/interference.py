"""Second- and third-order (Sorkin) interference terms.

Every term mu(q | P) mu(P) is evaluated as mu(U_P q), which equals it
whenever mu(P) > 0 and is 0 for blocks of zero weight.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .jordan import Algebra
from .logic import NotOrthogonalError, Proposition, is_orthogonal, random_frame, random_proposition
from .probability import State, U_map, evaluate, random_state

I3_TOL = 1e-8


def _weight(mu, q, p_elem):
    return evaluate(mu, U_map(p_elem, q))


def _check_orthogonal(props):
    for a, b in itertools.combinations(range(len(props)), 2):
        if not is_orthogonal(props[a], props[b]):
            raise NotOrthogonalError(f"p{a + 1} and p{b + 1} are not orthogonal")
    for i, p in enumerate(props):
        if p.rank == 0:
            raise ValueError(f"p{i + 1} is zero")


def I2(mu: State, q: Proposition, p1: Proposition, p2: Proposition) -> float:
    """mu(U_{p1+p2} q) - mu(U_{p1} q) - mu(U_{p2} q)."""
    _check_orthogonal([p1, p2])
    a, b = p1.element, p2.element
    return _weight(mu, q, a + b) - _weight(mu, q, a) - _weight(mu, q, b)


def I3(mu: State, q: Proposition, p1: Proposition, p2: Proposition, p3: Proposition) -> float:
    """Seven-term alternating sum over the blocks p1, p2, p3."""
    _check_orthogonal([p1, p2, p3])
    a, b, c = p1.element, p2.element, p3.element
    return (
        _weight(mu, q, a + b + c)
        - _weight(mu, q, a + b)
        - _weight(mu, q, a + c)
        - _weight(mu, q, b + c)
        + _weight(mu, q, a)
        + _weight(mu, q, b)
        + _weight(mu, q, c)
    )


@dataclass(frozen=True)
class InterferenceReport:
    order: int
    value: float
    seed: int
    state: State
    q: Proposition
    blocks: tuple
    tolerance: float

    @property
    def vanishes(self) -> bool:
        return abs(self.value) <= self.tolerance


def random_configuration(algebra: Algebra, num_blocks: int, rng):
    """(mu, q, blocks): random state, proposition and pairwise orthogonal nonzero blocks.

    The blocks are sums over a random partition of a random subset of the
    atoms of a random frame.
    """
    if algebra.rank < num_blocks:
        raise ValueError(f"rank {algebra.rank} < {num_blocks}: not enough orthogonal propositions")
    mu = random_state(algebra, rng)
    q = random_proposition(algebra, int(rng.integers(1, algebra.rank + 1)), rng)
    atoms = random_frame(algebra, rng)
    used = int(rng.integers(num_blocks, algebra.rank + 1))
    order = rng.permutation(algebra.rank)[:used]
    # every block gets one atom, the rest are spread at random
    labels = np.concatenate([np.arange(num_blocks), rng.integers(0, num_blocks, used - num_blocks)])
    blocks = []
    for b in range(num_blocks):
        members = [atoms[i] for i, lab in zip(order, labels) if lab == b]
        elem = members[0].element
        for m in members[1:]:
            elem = elem + m.element
        blocks.append(Proposition(elem, len(members)))
    return mu, q, tuple(blocks)


def sweep_I3(algebra: Algebra, num_configs: int = 500, seed: int = 0, tol=I3_TOL) -> list[InterferenceReport]:
    """I3 over seeded random configurations; config i uses sub-seed (seed, i)."""
    if algebra.rank < 3:
        raise ValueError(f"rank {algebra.rank} < 3: cannot form three orthogonal propositions")
    reports = []
    for i in range(num_configs):
        rng = np.random.default_rng([seed, i])
        mu, q, blocks = random_configuration(algebra, 3, rng)
        reports.append(InterferenceReport(3, I3(mu, q, *blocks), i, mu, q, blocks, tol))
    return reports


def search_I2(algebra: Algebra, num_configs: int = 500, seed: int = 0) -> InterferenceReport:
    """Plain random search for the largest |I2|; returns the best configuration."""
    if algebra.rank < 2:
        raise ValueError("second-order interference needs rank >= 2")
    best = None
    for i in range(num_configs):
        rng = np.random.default_rng([seed, i])
        mu, q, blocks = random_configuration(algebra, 2, rng)
        value = I2(mu, q, *blocks)
        if best is None or abs(value) > abs(best.value):
            best = InterferenceReport(2, value, i, mu, q, blocks, 0.0)
    return best


def max_abs(reports) -> float:
    return max((abs(r.value) for r in reports), default=0.0)

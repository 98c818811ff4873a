"""The quantum logic of idempotents: order, orthocomplement, orthogonal sums, atoms."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .jordan import Algebra, Element, MatrixFactor, jordan_product, natural_trace, triple_product
from .spectral import spectral_decomposition

IDEMPOTENT_TOL = 1e-8
ORDER_TOL = 1e-8
RANK_SNAP = 0.01


class NotIdempotentError(ValueError):
    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class NotOrthogonalError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Proposition:
    """An idempotent element with its (integer) rank."""

    element: Element
    rank: int
    # set on orthocomplements so that (p')' returns p itself
    _complement_of: "Proposition | None" = field(default=None, repr=False)

    @property
    def algebra(self) -> Algebra:
        return self.element.algebra

    @property
    def is_atom(self) -> bool:
        return self.rank == 1

    def __add__(self, other):
        return ortho_sum(self, other)

    def __sub__(self, other):
        return difference(self, other)

    def __le__(self, other):
        return leq(self, other)

    def __invert__(self):
        return orthocomplement(self)


def idempotency_residual(x: Element) -> float:
    return (jordan_product(x, x) - x).norm()


def is_idempotent(x: Element, tol=IDEMPOTENT_TOL) -> bool:
    return idempotency_residual(x) <= tol


def certify(x: Element, tol=IDEMPOTENT_TOL) -> Proposition:
    """Wrap an idempotent element as a Proposition, snapping its trace to the rank."""
    if isinstance(x, Proposition):
        return x
    res = idempotency_residual(x)
    if res > tol:
        raise NotIdempotentError("element is not idempotent", res)
    tr = natural_trace(x)
    rank = int(round(tr))
    if abs(tr - rank) > RANK_SNAP:
        raise NotIdempotentError(f"trace {tr} is not close to an integer", abs(tr - rank))
    return Proposition(x, rank)


def zero(algebra: Algebra) -> Proposition:
    return Proposition(algebra.zero(), 0)


def unit(algebra: Algebra) -> Proposition:
    return Proposition(algebra.identity(), algebra.rank)


def leq(p: Proposition, q: Proposition, tol=ORDER_TOL) -> bool:
    """p <= q iff p o q = p."""
    return (jordan_product(p.element, q.element) - p.element).norm() <= tol


def is_orthogonal(p: Proposition, q: Proposition, tol=ORDER_TOL) -> bool:
    return jordan_product(p.element, q.element).norm() <= tol


def orthocomplement(p: Proposition) -> Proposition:
    if p._complement_of is not None:
        return p._complement_of
    alg = p.algebra
    return Proposition(alg.identity() - p.element, alg.rank - p.rank, p)


def ortho_sum(p: Proposition, q: Proposition, tol=ORDER_TOL) -> Proposition:
    """p + q for orthogonal p, q (their join in the logic)."""
    if not is_orthogonal(p, q, tol):
        raise NotOrthogonalError(f"|p o q| = {jordan_product(p.element, q.element).norm():.3e}")
    return Proposition(p.element + q.element, p.rank + q.rank)


def sum_orthogonal(props, algebra: Algebra | None = None) -> Proposition:
    props = list(props)
    if not props:
        if algebra is None:
            raise ValueError("empty sum needs an algebra")
        return zero(algebra)
    out = props[0]
    for q in props[1:]:
        out = ortho_sum(out, q)
    return out


def difference(p: Proposition, q: Proposition, tol=ORDER_TOL) -> Proposition:
    """p - q for q <= p, i.e. p and q' (orthomodular law: p = q + (p - q))."""
    if not leq(q, p, tol):
        raise ValueError("difference p - q needs q <= p")
    return Proposition(p.element - q.element, p.rank - q.rank)


def decompose_to_atoms(p: Proposition, seed=0, tol=1e-8) -> list[Proposition]:
    """Split p != 0 into rank(p) pairwise orthogonal atoms summing to p.

    A random element compressed under p, shifted on p' so that p' stays a
    separate eigenspace, is decomposed spectrally; eigenprojections under p
    with rank > 1 are split again with fresh randomness.
    """
    if p.rank == 0:
        raise ValueError("the zero proposition has no atoms")
    rng = np.random.default_rng(seed)
    atoms = _split(p, rng)
    residual = (sum((a.element for a in atoms[1:]), atoms[0].element) - p.element).norm()
    if residual > tol * max(1, p.rank):
        raise ArithmeticError(f"atom decomposition residual {residual:.3e}")
    return atoms


def _split(p: Proposition, rng, depth=0) -> list[Proposition]:
    if p.rank == 1:
        return [p]
    if depth > 20:
        raise ArithmeticError("atom refinement did not converge")
    alg = p.algebra
    y = alg.random_element(rng)
    compressed = triple_product(p.element, y, p.element)
    shift = -(2.0 * compressed.norm() + 1.0)
    z = compressed + shift * (alg.identity() - p.element)
    out = []
    for lam, proj in spectral_decomposition(z):
        if abs(lam - shift) <= 1e-6 * abs(shift):
            continue
        piece = certify(proj, tol=1e-7)
        out.extend(_split(piece, rng, depth + 1))
    if sum(a.rank for a in out) != p.rank:
        return _split(p, rng, depth + 1)
    return out


def random_proposition(algebra: Algebra, rank: int, seed=None) -> Proposition:
    """Sum of ``rank`` eigen-atoms of a seeded random element."""
    if not 0 <= rank <= algebra.rank:
        raise ValueError(f"rank must lie in [0, {algebra.rank}]")
    if rank == 0:
        return zero(algebra)
    if rank == algebra.rank:
        return unit(algebra)
    rng = np.random.default_rng(seed)
    atoms = random_frame(algebra, rng)
    chosen = rng.permutation(len(atoms))[:rank]
    return sum_orthogonal([atoms[i] for i in sorted(chosen)])


def random_atom(algebra: Algebra, seed=None) -> Proposition:
    return random_proposition(algebra, 1, seed) if algebra.rank > 1 else unit(algebra)


def random_frame(algebra: Algebra, seed=None) -> list[Proposition]:
    """n pairwise orthogonal atoms summing to I, from a seeded random element."""
    rng = np.random.default_rng(seed)
    x = algebra.random_element(rng)
    atoms = []
    for _, proj in spectral_decomposition(x):
        atoms.extend(_split(certify(proj, tol=1e-7), rng))
    return atoms


def line_proposition(algebra: Algebra, vector, factor: int = 0) -> Proposition:
    """Rank-1 projection onto the line through ``vector`` in an R(k) or C(k) factor."""
    f = algebra.factors[factor]
    if not isinstance(f, MatrixFactor) or f.m > 2:
        raise ValueError("line projections need a real or complex matrix factor")
    v = np.asarray(vector, dtype=complex)
    if v.shape != (f.k,):
        raise ValueError(f"expected a vector of length {f.k}")
    v = v / np.linalg.norm(v)
    x = algebra.embed(factor, f.from_complex(np.outer(v, v.conj())))
    return certify(x)

"""Spectral decomposition x = sum_k lambda_k p_k into orthogonal idempotents.

Per factor:

* R(k), C(k): Hermitian eigendecomposition (``numpy.linalg.eigh``);
* H(k): decompose the complex 2k x 2k image of the quaternionic matrix,
  where a + bj maps to the 2 x 2 block [[a, b], [-conj(b), conj(a)]], and
  pull the (doubled) eigenprojections back;
* spin(n): (s, u) = (s + |u|) (1/2)(1, u/|u|) + (s - |u|) (1/2)(1, -u/|u|);
* O3: roots of the characteristic cubic, projections by Lagrange
  interpolation in the subalgebra generated by x.

For the Albert algebra write X with diagonal (a1, a2, a3) and off-diagonal
octonions x1 = X[1,2], x2 = X[2,0], x3 = X[0,1].  Then

    tr(X)    = a1 + a2 + a3
    sigma(X) = (tr(X)^2 - tr(X o X)) / 2
    det(X)   = a1 a2 a3 - a1 |x1|^2 - a2 |x2|^2 - a3 |x3|^2 + 2 Re((x3 x1) x2)

(the Freudenthal determinant of the cubic-norm construction), and X
satisfies X^3 - tr(X) X^2 + sigma(X) X - det(X) I = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .division import mul_array
from .jordan import Element, MatrixFactor, SpinFactor, jordan_product, natural_trace

# relative to the trace norm of the decomposed element
MERGE_TOL = 1e-6
RESIDUAL_TOL = 1e-5
POSITIVITY_TOL = 1e-9


class SpectralError(ArithmeticError):
    """The decomposition does not reproduce its input; ``residual`` is attached."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct eigenvalues (descending) with their eigenprojections and ranks."""

    values: tuple
    projections: tuple
    ranks: tuple

    def __iter__(self):
        return iter(zip(self.values, self.projections))

    def __len__(self):
        return len(self.values)

    def reconstruct(self) -> Element:
        out = self.projections[0] * 0.0
        for lam, p in self:
            out = out + lam * p
        return out

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues repeated according to rank."""
        return np.repeat(np.array(self.values), self.ranks)


def _clusters(values, tol):
    """Group sorted-descending values whose consecutive gaps are <= tol."""
    groups = [[0]]
    for i in range(1, len(values)):
        if values[i - 1] - values[i] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _hermitian_parts(f: MatrixFactor, c, tol):
    mat = f.to_complex(c)
    w, v = np.linalg.eigh(mat)
    w, v = w[::-1], v[:, ::-1]
    step = 2 if f.m == 4 else 1
    out = []
    for group in _clusters(w, tol):
        vecs = v[:, group]
        proj = vecs @ vecs.conj().T
        out.append((float(np.mean(w[group])), f.from_complex(proj), len(group) // step))
    return out


def _spin_parts(f: SpinFactor, c, tol):
    s, u = c[0], c[1:]
    r = float(np.linalg.norm(u))
    if 2 * r <= tol:
        return [(float(s), f.identity(), 2)]
    d = u / r
    up = 0.5 * np.concatenate([[1.0], d])
    down = 0.5 * np.concatenate([[1.0], -d])
    return [(float(s + r), up, 1), (float(s - r), down, 1)]


def albert_invariants(f: MatrixFactor, c):
    """(trace, sigma, det) of an Albert-algebra coordinate vector."""
    b = f.to_block(c)
    a1, a2, a3 = b[0, 0, 0], b[1, 1, 0], b[2, 2, 0]
    x1, x2, x3 = b[1, 2], b[2, 0], b[0, 1]
    tr = a1 + a2 + a3
    sq = f.product(c, c)
    sigma = 0.5 * (tr * tr - f.trace(sq))
    triple = mul_array(mul_array(x3, x1, 8), x2, 8)[0]
    det = a1 * a2 * a3 - a1 * (x1 @ x1) - a2 * (x2 @ x2) - a3 * (x3 @ x3) + 2.0 * triple
    return float(tr), float(sigma), float(det)


def cubic_real_roots(tr, sigma, det):
    """Roots of l^3 - tr l^2 + sigma l - det, all real; trigonometric method, descending."""
    shift = tr / 3.0
    # depressed cubic t^3 + p t + q with l = t + shift
    p = sigma - tr * tr / 3.0
    q = -(2.0 * tr**3 - 9.0 * tr * sigma + 27.0 * det) / 27.0
    if p >= 0.0:
        # triple root up to rounding
        return np.array([shift, shift, shift])
    amp = 2.0 * np.sqrt(-p / 3.0)
    arg = np.clip((3.0 * q / (2.0 * p)) * np.sqrt(-3.0 / p), -1.0, 1.0)
    theta = np.arccos(arg) / 3.0
    roots = shift + amp * np.cos(theta - 2.0 * np.pi * np.arange(3) / 3.0)
    return np.sort(roots)[::-1]


def _albert_parts(f: MatrixFactor, c, tol):
    tr, sigma, det = albert_invariants(f, c)
    roots = cubic_real_roots(tr, sigma, det)
    groups = _clusters(roots, tol)
    values = [float(np.mean(roots[g])) for g in groups]
    ident = f.identity()
    out = []
    for i, g in enumerate(groups):
        proj = ident.copy()
        for j, other in enumerate(values):
            if j == i:
                continue
            factor = (c - other * ident) / (values[i] - other)
            proj = f.product(proj, factor)
        # Rayleigh quotient: roots of a cubic with a double root carry
        # sqrt(eps) errors, the projections do not
        weights = f.form_weights()
        value = float(np.dot(c * weights, proj)) / f.trace(proj)
        out.append((value, proj, len(g)))
    return out


def _factor_parts(f, c, tol):
    if isinstance(f, SpinFactor):
        return _spin_parts(f, c, tol)
    if f.m == 8:
        return _albert_parts(f, c, tol)
    return _hermitian_parts(f, c, tol)


def spectral_decomposition(x: Element, merge_tol=None, residual_tol=None) -> SpectralDecomposition:
    """Decompose ``x`` into distinct eigenvalues and orthogonal eigenprojections.

    Eigenvalues within ``merge_tol`` (default ``1e-6 * |x|``) of each other,
    also across factors, share one projection.  Raises ``SpectralError`` if
    the reconstruction misses ``x`` by more than ``residual_tol`` (default
    ``1e-5 * |x|``).
    """
    alg = x.algebra
    scale = x.norm()
    tol = MERGE_TOL * scale if merge_tol is None else merge_tol
    rtol = RESIDUAL_TOL * max(scale, 1.0) if residual_tol is None else residual_tol

    pieces = []
    for idx, f in enumerate(alg.factors):
        for lam, coords, rank in _factor_parts(f, x.coords[alg.slices[idx]], tol):
            full = np.zeros(alg.dim)
            full[alg.slices[idx]] = coords
            pieces.append((lam, full, rank))
    pieces.sort(key=lambda t: -t[0])

    lams = np.array([t[0] for t in pieces])
    values, projections, ranks = [], [], []
    for group in _clusters(lams, tol):
        weights = [pieces[i][2] for i in group]
        values.append(float(np.average(lams[group], weights=weights)))
        projections.append(Element(alg, sum(pieces[i][1] for i in group)))
        ranks.append(int(sum(weights)))
    dec = SpectralDecomposition(tuple(values), tuple(projections), tuple(ranks))

    residual = (dec.reconstruct() - x).norm()
    if not np.isfinite(residual) or residual > rtol:
        raise SpectralError("spectral reconstruction failed", residual)
    return dec


def eigenvalues(x: Element) -> np.ndarray:
    """All eigenvalues of x with multiplicity, descending (length = rank)."""
    alg = x.algebra
    vals = []
    for f, sl in zip(alg.factors, alg.slices):
        c = x.coords[sl]
        if isinstance(f, SpinFactor):
            r = np.linalg.norm(c[1:])
            vals.extend([c[0] + r, c[0] - r])
        elif f.m == 8:
            tol = MERGE_TOL * np.sqrt(np.dot(c * f.form_weights(), c))
            for lam, _, mult in _albert_parts(f, c, tol):
                vals.extend([lam] * mult)
        else:
            w = np.linalg.eigvalsh(f.to_complex(c))
            vals.extend(w[::2] if f.m == 4 else w)
    return np.sort(np.array(vals, dtype=float))[::-1]


def is_positive(x: Element, tol=POSITIVITY_TOL) -> bool:
    """True iff every eigenvalue is >= -tol * max(|x|, 1)."""
    return bool(eigenvalues(x)[-1] >= -tol * max(x.norm(), 1.0))


def trace_consistency(x: Element, dec: SpectralDecomposition) -> float:
    """|trace(x) - sum lambda_k trace(p_k)|."""
    return abs(natural_trace(x) - sum(lam * natural_trace(p) for lam, p in dec))


def idempotency_residuals(dec: SpectralDecomposition) -> tuple[float, float]:
    """Largest |p o p - p| and largest |p_j o p_k| over the decomposition."""
    idem = max((jordan_product(p, p) - p).norm() for p in dec.projections)
    orth = 0.0
    ps = dec.projections
    for i in range(len(ps)):
        for j in range(i + 1, len(ps)):
            orth = max(orth, jordan_product(ps[i], ps[j]).norm())
    return idem, orth

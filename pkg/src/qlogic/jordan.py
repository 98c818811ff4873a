"""Finite-dimensional formally real Jordan algebras.

Every such algebra is a direct sum of simple factors:

* ``R(k)``, ``C(k)``, ``H(k)``: Hermitian k x k matrices over the reals,
  complex numbers or quaternions, with x o y = (xy + yx)/2;
* ``O3``: the Albert algebra of Hermitian 3 x 3 octonionic matrices;
* ``spin(n)``: R + R^n with (s, u) o (t, v) = (st + <u, v>, sv + tu).

An ``Element`` is a flat float64 coordinate vector.  The factor blocks are
rebuilt from the coordinates on demand, so matrix blocks are Hermitian
exactly: only the diagonal (real) and the strict upper triangle are stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .division import structure_tensor

_SCALAR_DIM = {"R": 1, "C": 2, "H": 4, "O": 8}
KINDS = ("R", "C", "H", "O", "spin")


class AlgebraMismatchError(ValueError):
    """Operands belong to different algebras."""


@dataclass(frozen=True)
class SimpleFactorDescriptor:
    """One simple summand: ``kind`` in R/C/H/O/spin, ``size`` is k or n."""

    kind: str
    size: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown factor kind {self.kind!r}")
        if not isinstance(self.size, (int, np.integer)) or isinstance(self.size, bool):
            raise ValueError(f"factor size must be an integer, got {self.size!r}")
        if self.kind == "O" and self.size != 3:
            raise ValueError("octonionic factor only k=3")
        if self.kind == "spin" and self.size < 2:
            raise ValueError("spin(n) needs n >= 2")
        if self.kind in ("R", "C", "H") and self.size < 1:
            raise ValueError(f"{self.kind}(k) needs k >= 1")

    @property
    def dimension(self) -> int:
        if self.kind == "spin":
            return self.size + 1
        k, m = self.size, _SCALAR_DIM[self.kind]
        return k + m * k * (k - 1) // 2

    @property
    def rank(self) -> int:
        return 2 if self.kind == "spin" else self.size

    @property
    def spin_like(self) -> bool:
        """True if every nontrivial idempotent is minimal and there are >= 3 atoms.

        Besides spin(n) this covers the rank-2 matrix factors, since
        R(2), C(2) and H(2) are the spin factors spin(2), spin(3), spin(5).
        """
        return self.kind == "spin" or (self.kind in ("R", "C", "H") and self.size == 2)

    @property
    def sphere_dim(self) -> int:
        """n such that the atoms form the unit sphere of R^n (spin-like factors only)."""
        if self.kind == "spin":
            return self.size
        if self.spin_like:
            return 1 + _SCALAR_DIM[self.kind]
        raise ValueError(f"{self} is not a spin factor")

    def __str__(self):
        if self.kind == "O":
            return "O3"
        if self.kind == "spin":
            return f"spin({self.size})"
        return f"{self.kind}({self.size})"


def RealSym(k: int) -> SimpleFactorDescriptor:
    return SimpleFactorDescriptor("R", k)


def ComplexHerm(k: int) -> SimpleFactorDescriptor:
    return SimpleFactorDescriptor("C", k)


def QuatHerm(k: int) -> SimpleFactorDescriptor:
    return SimpleFactorDescriptor("H", k)


def Albert() -> SimpleFactorDescriptor:
    return SimpleFactorDescriptor("O", 3)


def Spin(n: int) -> SimpleFactorDescriptor:
    return SimpleFactorDescriptor("spin", n)


@dataclass(frozen=True)
class AlgebraDescriptor:
    factors: tuple[SimpleFactorDescriptor, ...]

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValueError("an algebra needs at least one factor")
        for f in factors:
            if not isinstance(f, SimpleFactorDescriptor):
                raise TypeError(f"not a factor descriptor: {f!r}")
        object.__setattr__(self, "factors", factors)

    @property
    def dimension(self) -> int:
        return sum(f.dimension for f in self.factors)

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def has_spin_factor(self) -> bool:
        return any(f.spin_like for f in self.factors)

    def __str__(self):
        return " + ".join(str(f) for f in self.factors)


# --- factor implementations ------------------------------------------------


class MatrixFactor:
    """Hermitian k x k matrices over a division algebra of dimension m.

    Blocks are real arrays of shape (k, k, m); coordinates are the k real
    diagonal entries followed by the m coefficients of each entry (i, j),
    i < j, in row-major order.
    """

    def __init__(self, desc: SimpleFactorDescriptor):
        self.desc = desc
        self.k = desc.size
        self.m = _SCALAR_DIM[desc.kind]
        self.dim = desc.dimension
        self.rank = desc.rank
        self._iu = np.triu_indices(self.k, 1)
        self._diag = np.arange(self.k)
        self._table = structure_tensor(self.m)
        self._build_index()
        self._conj_sign = np.concatenate([[1.0], -np.ones(self.m - 1)])

    def _build_index(self):
        # gather tables: flat block = sign * coords_padded[source]; index dim -> 0.0
        k, m = self.k, self.m
        source = np.full((k, k, m), self.dim)
        sign = np.ones((k, k, m))
        source[self._diag, self._diag, 0] = self._diag
        upper = (k + np.arange(len(self._iu[0]) * m)).reshape(-1, m)
        source[self._iu] = upper
        source[self._iu[1], self._iu[0]] = upper
        sign[self._iu[1], self._iu[0], 1:] = -1.0
        self._source = source.ravel()
        self._sign = sign.ravel()
        flat = np.arange(k * k * m).reshape(k, k, m)
        self._take = np.concatenate([flat[self._diag, self._diag, 0], flat[self._iu].ravel()])

    def to_block(self, c):
        padded = np.append(c, 0.0)
        return (padded[self._source] * self._sign).reshape(self.k, self.k, self.m)

    def from_block(self, block):
        return block.reshape(-1)[self._take]

    def matmul(self, x, y):
        """Ordinary matrix product of two blocks (non-associative for O)."""
        k, m = self.k, self.m
        if m == 1:
            return (x[..., 0] @ y[..., 0])[..., None]
        # t[i, c, (l, b)] = sum_a x[i, l, a] C[a, b, c]
        t = (x.reshape(-1, m) @ self._table.reshape(m, m * m)).reshape(k, k * m, m)
        yy = y.transpose(0, 2, 1).reshape(k * m, k)
        return (t.transpose(0, 2, 1) @ yy).transpose(0, 2, 1)

    def product(self, cx, cy):
        # YX = (XY)^dagger for Hermitian X, Y (conj reverses products in R, C, H and O)
        xy = self.matmul(self.to_block(cx), self.to_block(cy))
        yx = xy.transpose(1, 0, 2) * self._conj_sign
        return self.from_block(0.5 * (xy + yx))

    def trace(self, c):
        return float(np.sum(c[: self.k]))

    def form_weights(self):
        # trace(x o y) = sum_i x_ii y_ii + 2 sum_{i<j} Re(x_ij conj(y_ij))
        w = np.full(self.dim, 2.0)
        w[: self.k] = 1.0
        return w

    def identity(self):
        c = np.zeros(self.dim)
        c[: self.k] = 1.0
        return c

    # complex views, used by the spectral code
    def to_complex(self, c):
        """Complex matrix of an R or C block, or the 2k x 2k embedding of an H block."""
        b = self.to_block(c)
        if self.m == 1:
            return b[..., 0].astype(complex)
        if self.m == 2:
            return b[..., 0] + 1j * b[..., 1]
        if self.m == 4:
            alpha = b[..., 0] + 1j * b[..., 1]
            beta = b[..., 2] + 1j * b[..., 3]
            k = self.k
            out = np.empty((2 * k, 2 * k), dtype=complex)
            out[0::2, 0::2] = alpha
            out[0::2, 1::2] = beta
            out[1::2, 0::2] = -beta.conj()
            out[1::2, 1::2] = alpha.conj()
            return out
        raise ValueError("no complex representation of the Albert algebra")

    def from_complex(self, mat):
        mat = np.asarray(mat)
        k = self.k
        block = np.zeros((k, k, self.m))
        if self.m == 1:
            block[..., 0] = mat.real
        elif self.m == 2:
            block[..., 0] = mat.real
            block[..., 1] = mat.imag
        elif self.m == 4:
            alpha = mat[0::2, 0::2]
            beta = mat[0::2, 1::2]
            block[..., 0], block[..., 1] = alpha.real, alpha.imag
            block[..., 2], block[..., 3] = beta.real, beta.imag
        else:
            raise ValueError("no complex representation of the Albert algebra")
        return self.from_block(block)


class SpinFactor:
    """R + R^n; coordinates (s, u_1, ..., u_n)."""

    def __init__(self, desc: SimpleFactorDescriptor):
        self.desc = desc
        self.n = desc.size
        self.dim = desc.dimension
        self.rank = 2

    def to_block(self, c):
        return float(c[0]), np.array(c[1:])

    def from_block(self, block):
        s, u = block
        return np.concatenate([[s], np.asarray(u, dtype=float)])

    def product(self, cx, cy):
        s, u = cx[0], cx[1:]
        t, v = cy[0], cy[1:]
        return np.concatenate([[s * t + u @ v], s * v + t * u])

    def trace(self, c):
        # minimal idempotents (1/2)(1, u) get trace 1
        return 2.0 * float(c[0])

    def form_weights(self):
        return np.full(self.dim, 2.0)

    def identity(self):
        c = np.zeros(self.dim)
        c[0] = 1.0
        return c


def _make_factor(desc):
    return SpinFactor(desc) if desc.kind == "spin" else MatrixFactor(desc)


# --- algebra and elements ----------------------------------------------------


class Algebra:
    """A concrete direct sum of simple formally real Jordan algebras.

    Immutable after construction.  Two algebras compare equal when their
    descriptors do.
    """

    def __init__(self, descriptor: AlgebraDescriptor):
        if isinstance(descriptor, SimpleFactorDescriptor):
            descriptor = AlgebraDescriptor([descriptor])
        self.descriptor = descriptor
        self.factors = [_make_factor(f) for f in descriptor.factors]
        self.dim = descriptor.dimension
        self.rank = descriptor.rank
        offsets = np.cumsum([0] + [f.dim for f in self.factors])
        self.slices = [slice(int(a), int(b)) for a, b in zip(offsets[:-1], offsets[1:])]

    def __eq__(self, other):
        return isinstance(other, Algebra) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return f"Algebra({self.descriptor})"

    def element(self, coords) -> "Element":
        return Element(self, coords)

    def zero(self) -> "Element":
        return Element(self, np.zeros(self.dim))

    @cached_property
    def _identity(self):
        return np.concatenate([f.identity() for f in self.factors])

    def identity(self) -> "Element":
        return Element(self, self._identity)

    @cached_property
    def form_weights(self) -> np.ndarray:
        """Diagonal of the trace form in the coordinate basis."""
        return np.concatenate([f.form_weights() for f in self.factors])

    def basis(self) -> list["Element"]:
        return [Element(self, row) for row in np.eye(self.dim)]

    def random_element(self, rng: np.random.Generator) -> "Element":
        return Element(self, rng.standard_normal(self.dim))

    def from_blocks(self, blocks) -> "Element":
        """Element from per-factor blocks (matrix arrays or (s, u) pairs).

        Matrix blocks may be given as (k, k, m) real arrays or, for R, C and
        H factors, as ordinary real/complex matrices (2k x 2k for H).
        """
        if len(blocks) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} blocks, got {len(blocks)}")
        parts = []
        for f, b in zip(self.factors, blocks):
            if isinstance(f, MatrixFactor):
                b = np.asarray(b)
                if b.ndim == 3:
                    parts.append(f.from_block(b))
                else:
                    parts.append(f.from_complex(b))
            else:
                parts.append(f.from_block(b))
        return Element(self, np.concatenate(parts))

    def embed(self, index: int, factor_coords) -> "Element":
        """Element supported on one factor."""
        c = np.zeros(self.dim)
        c[self.slices[index]] = factor_coords
        return Element(self, c)

    def gram_matrix(self) -> np.ndarray:
        basis = self.basis()
        return np.array([[inner_product(x, y) for y in basis] for x in basis])


class Element:
    """Coordinate vector over an algebra's basis."""

    __slots__ = ("algebra", "coords")
    __array_priority__ = 100

    def __init__(self, algebra: Algebra, coords):
        coords = np.array(coords, dtype=float)
        if coords.shape != (algebra.dim,):
            raise ValueError(f"expected {algebra.dim} coordinates, got shape {coords.shape}")
        self.algebra = algebra
        self.coords = coords

    def factor_coords(self, index: int) -> np.ndarray:
        return self.coords[self.algebra.slices[index]]

    @property
    def blocks(self) -> list:
        return [f.to_block(self.factor_coords(i)) for i, f in enumerate(self.algebra.factors)]

    def _check(self, other):
        if not isinstance(other, Element):
            raise TypeError(f"expected an Element, got {type(other).__name__}")
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatchError(f"{self.algebra} vs {other.algebra}")

    def __add__(self, other):
        self._check(other)
        return Element(self.algebra, self.coords + other.coords)

    def __sub__(self, other):
        self._check(other)
        return Element(self.algebra, self.coords - other.coords)

    def __neg__(self):
        return Element(self.algebra, -self.coords)

    def __mul__(self, scalar):
        if isinstance(scalar, Element):
            raise TypeError("use jordan_product (or x.jordan(y)) for the product of two elements")
        return Element(self.algebra, self.coords * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Element(self.algebra, self.coords / float(scalar))

    def __repr__(self):
        return f"Element({self.algebra.descriptor}, {np.array2string(self.coords, precision=4)})"

    def jordan(self, other) -> "Element":
        return jordan_product(self, other)

    def trace(self) -> float:
        return natural_trace(self)

    def inner(self, other) -> float:
        return inner_product(self, other)

    def norm(self) -> float:
        """Norm induced by the trace inner product."""
        return float(np.sqrt(max(inner_product(self, self), 0.0)))

    def square(self) -> "Element":
        return jordan_product(self, self)

    def power(self, l: int) -> "Element":
        return power(self, l)

    def allclose(self, other, atol=1e-10) -> bool:
        self._check(other)
        return bool(np.allclose(self.coords, other.coords, rtol=0, atol=atol))


def build_algebra(descriptor) -> Algebra:
    return Algebra(descriptor)


def jordan_product(x: Element, y: Element) -> Element:
    x._check(y)
    alg = x.algebra
    out = np.empty(alg.dim)
    for f, sl in zip(alg.factors, alg.slices):
        out[sl] = f.product(x.coords[sl], y.coords[sl])
    return Element(alg, out)


def triple_product(x: Element, y: Element, z: Element) -> Element:
    """{x, y, z} = x o (y o z) - y o (z o x) + z o (x o y)."""
    return (
        jordan_product(x, jordan_product(y, z))
        - jordan_product(y, jordan_product(z, x))
        + jordan_product(z, jordan_product(x, y))
    )


def natural_trace(x: Element) -> float:
    alg = x.algebra
    return sum(f.trace(x.coords[sl]) for f, sl in zip(alg.factors, alg.slices))


def inner_product(x: Element, y: Element) -> float:
    """<x|y> = trace(x o y), evaluated through the diagonal form weights."""
    x._check(y)
    return float(np.dot(x.coords * x.algebra.form_weights, y.coords))


def power(x: Element, l: int) -> Element:
    if int(l) != l or l < 1:
        raise ValueError(f"power needs a positive integer exponent, got {l!r}")
    out = x
    for _ in range(int(l) - 1):
        out = jordan_product(x, out)
    return out

"""Real normed division algebras: R, C, H and O.

Elements are plain float64 coefficient vectors of length 1, 2, 4 or 8.
Multiplication follows the Cayley-Dickson doubling rule

    (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))

applied recursively, starting from the reals.  With this convention the
pair (a, b) of quaternions stands for a + b*l with l = e4, and the
quaternion pair (alpha, beta) of complex numbers stands for alpha + beta*j,
so that i*j = k holds in H.

The ``Quaternion`` and ``Octonion`` classes are thin value wrappers for
interactive use.  Matrix code uses the vectorised ``structure_tensor``.
"""

from __future__ import annotations

import functools

import numpy as np

# coefficient counts of R, C, H, O
SCALAR_DIMS = (1, 2, 4, 8)


def conj_coeffs(a):
    """Conjugate a coefficient vector (negate everything but the real part)."""
    a = np.asarray(a, dtype=float)
    out = -a
    out[..., 0] = a[..., 0]
    return out


def cd_mul(a, b):
    """Cayley-Dickson product of two coefficient vectors of equal length 2**k."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n = a.shape[-1]
    if n != b.shape[-1]:
        raise ValueError("coefficient vectors of different length")
    if n == 1:
        return a * b
    h = n // 2
    p, q = a[..., :h], a[..., h:]
    r, s = b[..., :h], b[..., h:]
    first = cd_mul(p, r) - cd_mul(conj_coeffs(s), q)
    second = cd_mul(s, p) + cd_mul(q, conj_coeffs(r))
    return np.concatenate([first, second], axis=-1)


@functools.lru_cache(maxsize=None)
def structure_tensor(m: int) -> np.ndarray:
    """Return C with (ab)_c = sum_{a,b} a_i b_j C[i, j, c] for the m-dim algebra."""
    if m not in SCALAR_DIMS:
        raise ValueError(f"no normed division algebra of dimension {m}")
    eye = np.eye(m)
    table = np.empty((m, m, m))
    for i in range(m):
        for j in range(m):
            table[i, j] = cd_mul(eye[i], eye[j])
    table.setflags(write=False)
    return table


def mul_array(x, y, m: int) -> np.ndarray:
    """Elementwise hypercomplex product of arrays with trailing axis m."""
    if m == 1:
        return x * y
    return np.einsum("...a,...b,abc->...c", x, y, structure_tensor(m))


class _CDNumber:
    """Shared behaviour of the quaternion and octonion value types."""

    size = 0
    _labels: tuple = ()

    __slots__ = ("coeffs",)

    def __init__(self, *coeffs):
        if len(coeffs) == 1:
            coeffs = coeffs[0]
        arr = np.array(coeffs, dtype=float)
        if arr.shape == ():
            arr = np.concatenate([[float(arr)], np.zeros(self.size - 1)])
        if arr.shape != (self.size,):
            raise ValueError(f"{type(self).__name__} needs {self.size} coefficients")
        self.coeffs = arr

    @classmethod
    def unit(cls, i: int):
        c = np.zeros(cls.size)
        c[i] = 1.0
        return cls(c)

    @classmethod
    def random(cls, rng: np.random.Generator):
        return cls(rng.standard_normal(cls.size))

    def __add__(self, other):
        return type(self)(self.coeffs + self._coerce(other).coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        return type(self)(self.coeffs - self._coerce(other).coeffs)

    def __rsub__(self, other):
        return type(self)(self._coerce(other).coeffs - self.coeffs)

    def __neg__(self):
        return type(self)(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return type(self)(self.coeffs * other)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return type(self)(self.coeffs * other)
        return NotImplemented

    def __truediv__(self, scalar):
        return type(self)(self.coeffs / scalar)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((type(self).__name__, tuple(self.coeffs)))

    def __abs__(self):
        return norm(self)

    def __repr__(self):
        terms = [f"{self.coeffs[0]:g}"]
        for label, c in zip(self._labels[1:], self.coeffs[1:]):
            if c != 0:
                terms.append(f"{c:+g}{label}")
        return f"{type(self).__name__}({''.join(terms)})"

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, float, np.floating)):
            return type(self)(float(other))
        raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    def conj(self):
        return conj(self)

    def norm(self) -> float:
        return norm(self)

    @property
    def real(self) -> float:
        return real_part(self)

    def isclose(self, other, atol=1e-12) -> bool:
        return bool(np.allclose(self.coeffs, self._coerce(other).coeffs, rtol=0, atol=atol))


class Quaternion(_CDNumber):
    """Quaternion w + x i + y j + z k."""

    size = 4
    _labels = ("1", "i", "j", "k")
    __slots__ = ()

    @property
    def w(self):
        return self.coeffs[0]

    @property
    def x(self):
        return self.coeffs[1]

    @property
    def y(self):
        return self.coeffs[2]

    @property
    def z(self):
        return self.coeffs[3]


class Octonion(_CDNumber):
    """Octonion c0 + c1 e1 + ... + c7 e7, built by doubling the quaternions.

    The first four coefficients are the quaternion part (1, i, j, k) and
    e4 plays the role of the doubling unit, so e5 = e1 e4, e6 = e2 e4 and
    e7 = e3 e4.
    """

    size = 8
    _labels = ("1", "e1", "e2", "e3", "e4", "e5", "e6", "e7")
    __slots__ = ()

    @classmethod
    def from_quaternions(cls, a: Quaternion, b: Quaternion):
        return cls(np.concatenate([a.coeffs, b.coeffs]))

    def halves(self) -> tuple[Quaternion, Quaternion]:
        return Quaternion(self.coeffs[:4]), Quaternion(self.coeffs[4:])


def mul(a, b):
    """Product of two quaternions or two octonions."""
    if type(a) is not type(b):
        raise TypeError(f"cannot multiply {type(a).__name__} by {type(b).__name__}")
    if isinstance(a, Octonion):
        # explicit doubling step on the quaternion halves
        p, q = a.halves()
        r, s = b.halves()
        return Octonion.from_quaternions(p * r - s.conj() * q, s * p + q * r.conj())
    return type(a)(cd_mul(a.coeffs, b.coeffs))


def conj(a):
    return type(a)(conj_coeffs(a.coeffs))


def norm(a) -> float:
    return float(np.sqrt(np.dot(a.coeffs, a.coeffs)))


def real_part(a) -> float:
    return float(a.coeffs[0])


def associator(a, b, c):
    """(ab)c - a(bc); identically zero only in the associative cases."""
    return mul(mul(a, b), c) - mul(a, mul(b, c))

import numpy as np
import pytest

from qlogic import SpectralError, eigenvalues, is_positive, natural_trace, power, random_atom, spectral_decomposition
from qlogic.spectral import albert_invariants, cubic_real_roots, idempotency_residuals, trace_consistency

from conftest import algebra


def test_diagonal_example():
    alg = algebra("R(3)")
    dec = spectral_decomposition(alg.from_blocks([np.diag([2.0, 3.0, 3.0])]))
    assert dec.values == pytest.approx((3.0, 2.0))
    assert dec.ranks == (2, 1)


def test_spin_example():
    alg = algebra("spin(2)")
    dec = spectral_decomposition(alg.element([1.0, 0.6, 0.8]))
    assert dec.values == pytest.approx((2.0, 0.0))
    np.testing.assert_allclose(dec.projections[0].coords, [0.5, 0.3, 0.4])
    np.testing.assert_allclose(dec.projections[1].coords, [0.5, -0.3, -0.4])


def test_identity_single_eigenvalue(any_algebra):
    dec = spectral_decomposition(any_algebra.identity())
    assert dec.values == pytest.approx((1.0,))
    assert dec.ranks == (any_algebra.rank,)


def test_reconstruction_and_projections(any_algebra, rng):
    for _ in range(10):
        x = any_algebra.random_element(rng)
        dec = spectral_decomposition(x)
        assert (dec.reconstruct() - x).norm() <= 1e-7 * max(x.norm(), 1)
        idem, orth = idempotency_residuals(dec)
        assert idem <= 1e-8 and orth <= 1e-8
        assert trace_consistency(x, dec) <= 1e-9 * max(x.norm(), 1)
        assert sum(dec.ranks) == any_algebra.rank
        np.testing.assert_allclose([natural_trace(p) for p in dec.projections], dec.ranks, atol=1e-8)


def test_power_sums_match_eigenvalues(any_algebra, rng):
    # Newton: trace(x^l) = sum of l-th powers of the eigenvalues
    x = any_algebra.random_element(rng)
    lam = eigenvalues(x)
    assert len(lam) == any_algebra.rank
    for l in range(1, 5):
        assert natural_trace(power(x, l)) == pytest.approx(np.sum(lam**l), rel=1e-9, abs=1e-9)


def test_quaternionic_ranks_halved(rng):
    alg = algebra("H(3)")
    x = alg.random_element(rng)
    dec = spectral_decomposition(x)
    assert dec.ranks == (1, 1, 1)
    assert len(eigenvalues(x)) == 3


def test_albert_cubic_invariants(rng):
    alg = algebra("O3")
    f = alg.factors[0]
    for _ in range(20):
        x = alg.random_element(rng)
        tr, sigma, det = albert_invariants(f, x.coords)
        x2, x3 = power(x, 2), power(x, 3)
        residual = x3 - tr * x2 + sigma * x - det * alg.identity()
        assert residual.norm() <= 1e-10 * x.norm() ** 3
        roots = cubic_real_roots(tr, sigma, det)
        assert np.sum(roots) == pytest.approx(tr)
        assert np.prod(roots) == pytest.approx(det, rel=1e-8, abs=1e-10)


def test_albert_repeated_eigenvalue(rng):
    # p + 2(1 - p) for an atom p has a double eigenvalue 2
    alg = algebra("O3")
    p = random_atom(alg, rng)
    x = p.element + 2.0 * (alg.identity() - p.element)
    dec = spectral_decomposition(x)
    assert dec.values == pytest.approx((2.0, 1.0), abs=1e-9)
    assert dec.ranks == (2, 1)
    assert (dec.projections[1] - p.element).norm() <= 1e-8


def test_is_positive():
    alg = algebra("R(2) + spin(2)")
    assert is_positive(alg.identity())
    assert is_positive(alg.zero())
    assert not is_positive(-1.0 * alg.identity())
    assert not is_positive(alg.element([1.0, 1.0, 0.0, 1.0, 1.5, 0.0]))
    assert is_positive(alg.element([1.0, 1.0, 0.0, 1.0, 0.6, 0.8]))


def test_squares_are_positive(any_algebra, rng):
    for _ in range(10):
        assert is_positive(any_algebra.random_element(rng).square())


def test_bad_input_raises():
    alg = algebra("C(2)")
    x = alg.element([np.nan, 0.0, 0.0, 0.0])
    with pytest.raises((SpectralError, np.linalg.LinAlgError, ValueError)):
        spectral_decomposition(x)

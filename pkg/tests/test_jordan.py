import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qlogic import (
    Albert,
    Algebra,
    AlgebraDescriptor,
    AlgebraMismatchError,
    ComplexHerm,
    QuatHerm,
    RealSym,
    Spin,
    decompose_to_atoms,
    inner_product,
    jordan_product,
    natural_trace,
    power,
    triple_product,
)
from qlogic.logic import random_proposition

from conftest import algebra


def random_hermitian(rng, k):
    z = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
    return (z + z.conj().T) / 2


@pytest.mark.parametrize(
    "desc, dim, rank",
    [
        (RealSym(4), 10, 4),
        (ComplexHerm(3), 9, 3),
        (QuatHerm(3), 15, 3),
        (Albert(), 27, 3),
        (Spin(4), 5, 2),
        (RealSym(1), 1, 1),
    ],
)
def test_factor_dimension_and_rank(desc, dim, rank):
    assert desc.dimension == dim
    assert desc.rank == rank
    alg = Algebra(desc)
    assert (alg.dim, alg.rank) == (dim, rank)


def test_direct_sum_dimension():
    desc = AlgebraDescriptor([Spin(3), RealSym(2)])
    assert (desc.dimension, desc.rank) == (7, 4)
    assert str(desc) == "spin(3) + R(2)"
    assert desc.has_spin_factor


@pytest.mark.parametrize("bad", [lambda: Spin(1), lambda: RealSym(0), lambda: AlgebraDescriptor([])])
def test_invalid_descriptors(bad):
    with pytest.raises(ValueError):
        bad()


def test_octonionic_size_fixed():
    from qlogic import SimpleFactorDescriptor

    with pytest.raises(ValueError, match="only k=3"):
        SimpleFactorDescriptor("O", 4)


def test_complex_product_matches_matrices(rng):
    alg = algebra("C(3)")
    for _ in range(50):
        a, b = random_hermitian(rng, 3), random_hermitian(rng, 3)
        x, y = alg.from_blocks([a]), alg.from_blocks([b])
        expected = alg.from_blocks([(a @ b + b @ a) / 2])
        assert jordan_product(x, y).allclose(expected, atol=1e-12)


def test_real_product_matches_matrices(rng):
    alg = algebra("R(4)")
    for _ in range(50):
        a, b = rng.standard_normal((2, 4, 4))
        a, b = a + a.T, b + b.T
        x, y = alg.from_blocks([a]), alg.from_blocks([b])
        assert jordan_product(x, y).allclose(alg.from_blocks([(a @ b + b @ a) / 2]), atol=1e-12)


def test_quaternion_product_matches_complex_embedding(rng):
    alg = algebra("H(3)")
    f = alg.factors[0]
    for _ in range(50):
        x, y = alg.random_element(rng), alg.random_element(rng)
        a, b = f.to_complex(x.coords), f.to_complex(y.coords)
        np.testing.assert_allclose(f.to_complex(jordan_product(x, y).coords), (a @ b + b @ a) / 2, atol=1e-12)
        assert natural_trace(x) == pytest.approx(np.trace(a).real / 2)


def test_spin_product_formula():
    alg = algebra("spin(3)")
    x = alg.element([1.0, 2.0, 0.0, 1.0])
    y = alg.element([0.5, 1.0, -1.0, 3.0])
    # (s,u)(t,v) = (st + u.v, sv + tu)
    np.testing.assert_allclose(jordan_product(x, y).coords, [0.5 + 5.0, 1.0 + 1.0, -1.0, 3.0 + 0.5])


def test_commutative_and_unital(any_algebra, rng):
    alg = any_algebra
    one = alg.identity()
    for _ in range(20):
        x, y = alg.random_element(rng), alg.random_element(rng)
        assert jordan_product(x, y).allclose(jordan_product(y, x), atol=1e-12)
        assert jordan_product(one, x).allclose(x, atol=1e-12)


def test_jordan_identity(simple_algebra, rng):
    alg = simple_algebra
    for _ in range(50):
        x, y = alg.random_element(rng), alg.random_element(rng)
        x2 = x.square()
        lhs = jordan_product(jordan_product(x2, y), x)
        rhs = jordan_product(x2, jordan_product(y, x))
        assert (lhs - rhs).norm() <= 1e-10 * x.norm() ** 2 * y.norm()


def test_natural_trace_examples():
    assert natural_trace(algebra("C(3)").identity()) == 3
    assert natural_trace(algebra("O3").identity()) == 3
    assert natural_trace(algebra("spin(4)").identity()) == 2
    assert natural_trace(algebra("C(3) + R(4) + H(3)").identity()) == 10
    alg = algebra("R(2)")
    assert natural_trace(alg.from_blocks([np.diag([2.0, 3.0])])) == 5


def test_inner_product_is_trace_of_product(any_algebra, rng):
    alg = any_algebra
    for _ in range(20):
        x, y = alg.random_element(rng), alg.random_element(rng)
        assert inner_product(x, y) == pytest.approx(natural_trace(jordan_product(x, y)), rel=1e-12, abs=1e-12)


def test_trace_form_associative(any_algebra, rng):
    alg = any_algebra
    for _ in range(20):
        x, y, z = (alg.random_element(rng) for _ in range(3))
        lhs = inner_product(jordan_product(x, y), z)
        assert lhs == pytest.approx(inner_product(y, jordan_product(x, z)), rel=1e-10, abs=1e-10)


def test_gram_matrix_positive(any_algebra):
    gram = any_algebra.gram_matrix()
    np.testing.assert_allclose(gram, gram.T)
    assert np.linalg.eigvalsh(gram).min() > 0


def test_triple_product_identities(any_algebra, rng):
    alg = any_algebra
    one = alg.identity()
    y = alg.random_element(rng)
    assert triple_product(one, y, one).allclose(y, atol=1e-12)
    if alg.rank < 2:
        return
    p = random_proposition(alg, alg.rank - 1, rng)
    q = decompose_to_atoms(p, seed=1)[0]  # q <= p
    assert triple_product(p.element, q.element, p.element).allclose(q.element, atol=1e-10)
    r = random_proposition(alg, 1, rng)
    assert natural_trace(triple_product(p.element, r.element, p.element)) == pytest.approx(
        natural_trace(jordan_product(p.element, r.element)), abs=1e-10
    )


def test_U_matches_pqp_in_complex_matrices(rng):
    alg = algebra("C(3)")
    for _ in range(20):
        p = random_proposition(alg, 2, rng)
        a = random_hermitian(rng, 3)
        P = alg.factors[0].to_complex(p.element.coords)
        got = triple_product(p.element, alg.from_blocks([a]), p.element)
        assert got.allclose(alg.from_blocks([P @ a @ P]), atol=1e-12)


def test_power_examples():
    alg = algebra("R(2)")
    x = alg.from_blocks([np.array([[1.0, 1.0], [1.0, 0.0]])])
    # Fibonacci matrix
    np.testing.assert_allclose(alg.factors[0].to_block(power(x, 5).coords)[..., 0], [[8, 5], [5, 3]])
    assert power(x, 1) is x
    with pytest.raises(ValueError):
        power(x, 0)
    with pytest.raises(ValueError):
        power(x, 1.5)


@settings(max_examples=25, deadline=None)
@given(
    spec=st.sampled_from(["C(3)", "H(3)", "O3", "spin(4)", "R(2) + C(2)"]),
    a=st.integers(1, 3),
    b=st.integers(1, 3),
    seed=st.integers(0, 2**32 - 1),
)
def test_power_associative(spec, a, b, seed):
    alg = algebra(spec)
    x = alg.random_element(np.random.default_rng(seed))
    x = x / x.norm()
    assert jordan_product(power(x, a), power(x, b)).allclose(power(x, a + b), atol=1e-10)


def test_mixing_algebras_rejected(rng):
    x = algebra("C(3)").random_element(rng)
    y = algebra("R(3)").random_element(rng)
    with pytest.raises(AlgebraMismatchError):
        jordan_product(x, y)
    with pytest.raises(TypeError):
        x * x


def test_element_shape_checked():
    with pytest.raises(ValueError):
        algebra("C(3)").element(np.zeros(8))

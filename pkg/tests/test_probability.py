import numpy as np
import pytest

from qlogic import (
    NullConditionError,
    State,
    U_map,
    box_product,
    condition,
    conditional_probability,
    decompose_state,
    is_positive,
    jordan_product,
    line_proposition,
    natural_trace,
    random_proposition,
    random_state,
    state_from_atoms,
    trace_state,
    transition_probability,
)
from qlogic.logic import decompose_to_atoms, random_frame, unit, zero
from qlogic.probability import (
    NotAnAtomError,
    atom_state,
    separating_state,
    state_independence_check,
    trace_conditional_identity,
)

from conftest import algebra


def test_transition_probability_is_overlap():
    alg = algebra("C(3)")
    e = line_proposition(alg, [1, 0, 0])
    f = line_proposition(alg, np.array([1, 1, 0]) / np.sqrt(2))
    assert transition_probability(e, f) == pytest.approx(0.5)
    assert transition_probability(e, e) == pytest.approx(1.0)
    with pytest.raises(NotAnAtomError):
        transition_probability(unit(alg), e)


def test_trace_state_values():
    alg = algebra("C(3)")
    tau = trace_state(alg)
    assert tau(random_proposition(alg, 2, seed=1)) == pytest.approx(2 / 3)
    assert tau(unit(alg)) == pytest.approx(1.0)


def test_state_validation():
    alg = algebra("R(2)")
    with pytest.raises(ValueError):
        State(alg.identity())
    with pytest.raises(ValueError):
        State(alg.from_blocks([np.diag([1.5, -0.5])]))


def test_states_are_additive_and_normalised(any_algebra, rng):
    mu = random_state(any_algebra, rng)
    atoms = random_frame(any_algebra, rng)
    values = [mu(a) for a in atoms]
    assert min(values) >= -1e-12
    assert sum(values) == pytest.approx(1.0, abs=1e-10)


def test_lueders_rule_matches_matrices(rng):
    # mu(q|p) = trace(p a p q) / trace(p a)
    alg = algebra("C(3)")
    f = alg.factors[0]
    for _ in range(50):
        mu = random_state(alg, rng)
        p = random_proposition(alg, int(rng.integers(1, 3)), rng)
        q = random_proposition(alg, int(rng.integers(1, 3)), rng)
        a, P, Q = (f.to_complex(x.coords) for x in (mu.density, p.element, q.element))
        expected = np.trace(P @ a @ P @ Q).real / np.trace(P @ a).real
        assert conditional_probability(mu, q, p) == pytest.approx(expected, abs=1e-10)


def test_commuting_conditioning_is_classical():
    alg = algebra("R(4)")
    mu = State(alg.from_blocks([np.diag([0.5, 0.25, 0.125, 0.125])]))
    p = line_proposition(alg, [1, 0, 0, 0]) + line_proposition(alg, [0, 1, 0, 0])
    q = line_proposition(alg, [0, 1, 0, 0]) + line_proposition(alg, [0, 0, 1, 0])
    # p o q = e2, so mu(q | p) = mu(e2) / mu(p) = 0.25 / 0.75
    assert conditional_probability(mu, q, p) == pytest.approx(1 / 3, abs=1e-15)


def test_conditioning_below(any_algebra, rng):
    # q <= p: mu(q | p) = mu(q) / mu(p)
    if any_algebra.rank < 2:
        return
    for _ in range(10):
        mu = random_state(any_algebra, rng)
        p = random_proposition(any_algebra, int(rng.integers(1, any_algebra.rank)), rng)
        q = decompose_to_atoms(p, seed=int(rng.integers(100)))[0]
        assert conditional_probability(mu, q, p) == pytest.approx(mu(q) / mu(p), abs=1e-9)


def test_conditioned_state(any_algebra, rng):
    mu = random_state(any_algebra, rng)
    p = random_proposition(any_algebra, 1, rng)
    nu = condition(mu, p)
    assert nu(p) == pytest.approx(1.0, abs=1e-10)
    q = random_proposition(any_algebra, 1, rng)
    assert nu(q) == pytest.approx(conditional_probability(mu, q, p), abs=1e-10)


def test_null_condition_rejected():
    alg = algebra("C(2)")
    e = line_proposition(alg, [1, 0])
    mu = atom_state(line_proposition(alg, [0, 1]))
    with pytest.raises(NullConditionError):
        conditional_probability(mu, e, e)
    with pytest.raises(NullConditionError):
        condition(mu, e)
    with pytest.raises(NullConditionError):
        conditional_probability(mu, e, zero(alg))


def test_compatible_conditioning_is_product(rng):
    # p, q compatible (p o q idempotent): mu(q|p) mu(p) = mu(p o q)
    alg = algebra("H(3)")
    atoms = random_frame(alg, rng)
    p = atoms[0] + atoms[1]
    q = atoms[1] + atoms[2]
    mu = random_state(alg, rng)
    assert conditional_probability(mu, q, p) * mu(p) == pytest.approx(mu(jordan_product(p.element, q.element)))


def test_conditional_probability_is_additive(any_algebra, rng):
    if any_algebra.rank < 2:
        return
    mu = random_state(any_algebra, rng)
    p = random_proposition(any_algebra, 1, rng)
    atoms = random_frame(any_algebra, rng)
    total = sum(conditional_probability(mu, a, p) for a in atoms)
    assert total == pytest.approx(1.0, abs=1e-10)


def test_U_map_properties(any_algebra, rng):
    p = random_proposition(any_algebra, max(1, any_algebra.rank // 2), rng)
    for _ in range(5):
        x = any_algebra.random_element(rng)
        once = U_map(p, x)
        assert (U_map(p, once) - once).norm() <= 1e-10 * max(x.norm(), 1)
        sq = x.square()
        assert is_positive(U_map(p, sq), tol=1e-10)


def test_box_product(any_algebra, rng):
    p = random_proposition(any_algebra, 1, rng)
    q = random_proposition(any_algebra, 1, rng)
    assert (box_product(p, q) - jordan_product(p.element, q.element)).norm() <= 1e-10
    assert box_product(p, ~p).norm() <= 1e-10


def test_atom_conditioning_is_state_independent(any_algebra):
    e = random_proposition(any_algebra, 1, seed=11)
    assert state_independence_check(e, samples=20, seed=3) <= 1e-9


def test_trace_state_identities(any_algebra, rng):
    if any_algebra.rank < 2:
        return
    p = random_proposition(any_algebra, int(rng.integers(1, any_algebra.rank)), rng)
    q = random_proposition(any_algebra, int(rng.integers(0, any_algebra.rank + 1)), rng)
    res = trace_conditional_identity(p, q)
    assert res.worst <= 1e-8


def test_decompose_state_round_trip(any_algebra, rng):
    mu = random_state(any_algebra, rng)
    dec = decompose_state(mu)
    assert len(dec.atoms) <= any_algebra.rank
    assert dec.weights.sum() == pytest.approx(1.0)
    for _ in range(10):
        q = random_proposition(any_algebra, int(rng.integers(0, any_algebra.rank + 1)), rng)
        assert dec(q) == pytest.approx(mu(q), abs=1e-9)
    rebuilt = state_from_atoms(dec)
    assert rebuilt.density.allclose(mu.density, atol=1e-9)


def test_pure_state_decomposes_to_one_atom():
    alg = algebra("C(3)")
    e = line_proposition(alg, [0, 1, 1j])
    dec = decompose_state(atom_state(e))
    assert len(dec.atoms) == 1
    assert (dec.atoms[0].element - e.element).norm() <= 1e-9


def test_state_from_atoms_checks_orthogonality():
    alg = algebra("R(2)")
    e = line_proposition(alg, [1, 0])
    f = line_proposition(alg, [1, 1])
    with pytest.raises(ValueError):
        state_from_atoms([(0.5, e), (0.5, f)])
    with pytest.raises(NotAnAtomError):
        state_from_atoms([(1.0, unit(alg))])


def test_states_separate_propositions(any_algebra, rng):
    if any_algebra.rank < 2:
        return
    p = random_proposition(any_algebra, 1, rng)
    q = random_proposition(any_algebra, 1, rng)
    mu = separating_state(p, q)
    assert abs(mu(p) - mu(q)) > 1e-6
    assert natural_trace(mu.density) == pytest.approx(1.0)

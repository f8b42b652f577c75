import itertools
import math

import numpy as np
import pytest

from qcorr import (
    DERANGEMENTS_4,
    LocalBasis,
    PartyStructure,
    PureState,
    all_ghz4x3_families,
    build_C_ghz4x3,
    build_C_phi,
    build_C_psi,
    expectation,
    ghz4,
    ghz4_pair_z,
    ghz4_party_x,
    ghz4_party_z,
    ghz4_x_pairs,
    ghz4_z_pairs,
    ghz4x3_correlators,
    ghz_4x3,
    local_projector,
    prop1_test,
    prop2_test,
    random_product_state,
    singlet4,
    singlet_correlators,
)
from qcorr.correlators import (
    count_prop1_violations,
    count_prop2_violations,
    singlet_flip_pair,
    singlet_group_pair,
)
from qcorr.states import QUBIT4, QUDIT4X3

GHZ_ANGLES = ((math.pi / 4, math.pi / 6), (math.pi / 4.9, 0.0), (math.pi / 3.7, math.pi / 9))


def _basis_state(structure, index):
    amps = np.zeros(structure.dim)
    amps[index] = 1.0
    return PureState(amps, structure)


# ---------------------------------------------------------------------------
# local bases


def test_local_projector_z():
    proj = local_projector(LocalBasis("z", 2), 0)
    assert np.allclose(proj.matrix, np.diag([1.0, 0.0]))


def test_local_projector_x():
    proj = local_projector(LocalBasis("x", 2), 0)
    assert np.allclose(proj.matrix, np.full((2, 2), 0.5))


@pytest.mark.parametrize("kind,dim", [("z", 2), ("x", 2), ("y", 2), ("z", 4), ("fourier", 4)])
def test_projector_completeness(kind, dim):
    basis = LocalBasis(kind, dim)
    total = sum(basis.projector(level) for level in range(dim))
    assert np.allclose(total, np.eye(dim), atol=1e-12)


def test_exchange_swaps_projectors():
    for kind in ("z", "x", "y"):
        basis = LocalBasis(kind, 2)
        flip = basis.exchange()
        assert np.allclose(flip @ basis.projector(0) @ flip.conj().T, basis.projector(1), atol=1e-12)


def test_level_out_of_range():
    with pytest.raises(ValueError):
        local_projector(LocalBasis("z", 2), 2)


# ---------------------------------------------------------------------------
# tunable four-qubit GHZ family


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_ghz4_party_z_expectations(n):
    pair = ghz4_party_z(n)
    for theta, phi in GHZ_ANGLES:
        state = ghz4(theta, phi)
        assert abs(expectation(pair.c0, state) - math.cos(theta) ** 2) < 1e-12
        assert abs(expectation(pair.c1, state) - math.sin(theta) ** 2) < 1e-12


def test_ghz4_party_z_matrix():
    pair = ghz4_party_z(1)
    expected = np.zeros((16, 16))
    expected[0, 0] = 1.0
    expected[8, 8] = -1.0
    assert np.allclose(pair.c0.matrix, expected)


def test_ghz4_party_z_on_all_ones():
    assert expectation(ghz4_party_z(2).c0, _basis_state(QUBIT4, 15)) == 0.0


@pytest.mark.parametrize("m", [2, 3, 4])
def test_ghz4_pair_z_expectations(m):
    pair = ghz4_pair_z(1, m)
    for theta, phi in GHZ_ANGLES:
        state = ghz4(theta, phi)
        assert abs(expectation(pair.c0, state) - math.cos(theta) ** 2) < 1e-12
        assert abs(expectation(pair.c1, state) - math.sin(theta) ** 2) < 1e-12
    assert expectation(pair.c0, _basis_state(QUBIT4, 0b0011)) == 0.0


def test_ghz4_pair_z_rejects_equal_parties():
    with pytest.raises(ValueError):
        ghz4_pair_z(2, 2)
    with pytest.raises(ValueError):
        ghz4_party_z(5)
    with pytest.raises(ValueError):
        ghz4_party_x(0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_ghz4_party_x_expectations(n):
    pair = ghz4_party_x(n)
    for theta, phi in GHZ_ANGLES:
        state = ghz4(theta, phi)
        expected = math.sin(2 * theta) * math.cos(phi) / 2
        assert abs(expectation(pair.c0, state) - expected) < 1e-12
        assert abs(expectation(pair.c1, state) - expected) < 1e-12


def test_ghz4_party_x_vanishes_at_quarter_phase():
    # phi = pi/2 sits outside the constructor's range; build the state directly
    amps = np.zeros(16, dtype=complex)
    amps[0] = math.cos(math.pi / 4)
    amps[15] = 1j * math.sin(math.pi / 4)
    state = PureState(amps, QUBIT4)
    pair = ghz4_party_x(1)
    assert abs(expectation(pair.c0, state)) < 1e-12
    assert abs(expectation(pair.c1, state)) < 1e-12


def test_ghz4_party_z_sign_rule_on_products():
    pair = ghz4_party_z(1)
    rng = np.random.default_rng(101)
    for _ in range(500):
        state = random_product_state(QUBIT4, pair.cut, rng)
        assert expectation(pair.c0, state) * expectation(pair.c1, state) <= 1e-12


def test_ghz4_all_pairs_sign_rule():
    for i, pair in enumerate(ghz4_z_pairs() + ghz4_x_pairs()):
        assert count_prop1_violations(pair, trials=100, seed=500 + i) == 0


def test_z_sum_closed_form():
    total = np.zeros((16, 16), dtype=complex)
    for pair in ghz4_z_pairs():
        total += pair.c0.matrix + pair.c1.matrix
    closed = -np.eye(16, dtype=complex)
    closed[0, 0] += 8.0
    closed[15, 15] += 8.0
    assert np.max(np.abs(total - closed)) <= 1e-12


def test_x_sum_closed_form():
    total = np.zeros((16, 16), dtype=complex)
    for pair in ghz4_x_pairs():
        total += pair.c0.matrix + pair.c1.matrix
    sx = np.array([[0.0, 1.0], [1.0, 0.0]])
    closed = 4.0 * np.kron(np.kron(sx, sx), np.kron(sx, sx))
    assert np.max(np.abs(total - closed)) <= 1e-12


def test_build_C_phi_values():
    op = build_C_phi()
    assert abs(op.trace()) < 1e-12
    state = ghz4(math.pi / 4, math.pi / 6)
    value = expectation(op, state)
    assert abs(value - 10.46) < 0.01
    assert abs(value - (7 + 2 * math.sqrt(3))) < 1e-12
    from qcorr import mix_white_noise

    maximally_mixed = mix_white_noise(state, 1.0)
    assert abs(expectation(op, maximally_mixed)) < 1e-12


# ---------------------------------------------------------------------------
# four-qubit singlet


@pytest.mark.parametrize("kind", ["z", "x", "y"])
def test_singlet_correlator_values(kind):
    state = singlet4()
    pairs = singlet_correlators(kind)
    assert len(pairs) == 8
    for pair in pairs[:4]:
        assert abs(expectation(pair.c0, state) - 1 / 3) < 1e-10
        assert abs(expectation(pair.c1, state) - 1 / 3) < 1e-10
    for pair in pairs[4:]:
        assert abs(expectation(pair.c0, state) - 1 / 6) < 1e-10
        assert abs(expectation(pair.c1, state) - 1 / 6) < 1e-10


def test_singlet_flip_pair_matrix():
    pair = singlet_flip_pair("z", 1)
    expected = np.zeros((16, 16))
    expected[0b0011, 0b0011] = 1.0
    expected[0b1011, 0b1011] = -1.0
    assert np.allclose(pair.c0.matrix, expected)


def test_singlet_sign_rule_on_products():
    for kind in ("z", "x", "y"):
        for i, pair in enumerate(singlet_correlators(kind)):
            assert count_prop1_violations(pair, trials=60, seed=900 + i) == 0


def test_build_C_psi_values():
    op = build_C_psi()
    assert abs(expectation(op, singlet4()) - 44.0) < 1e-10
    assert abs(op.trace()) < 1e-12
    zero_state = _basis_state(QUBIT4, 0)
    value = expectation(op, zero_state)
    assert abs(value) < 1e-12
    assert value <= 36.5


# ---------------------------------------------------------------------------
# four-level tripartite GHZ


def test_derangements():
    assert len(DERANGEMENTS_4) == 9
    assert len(set(DERANGEMENTS_4)) == 9
    for perm in DERANGEMENTS_4:
        assert sorted(perm) == [0, 1, 2, 3]
        assert all(perm[i] != i for i in range(4))
    assert list(DERANGEMENTS_4) == sorted(DERANGEMENTS_4)
    assert DERANGEMENTS_4[1] == (1, 2, 3, 0)
    assert DERANGEMENTS_4[4] == (2, 3, 0, 1)


@pytest.mark.parametrize("kind", ["z", "f"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_ghz4x3_family_values(kind, n):
    state = ghz_4x3()
    for j in range(1, 10):
        family = ghz4x3_correlators(kind, n, j)
        assert len(family.members) == 4
        assert family.arity == 4
        for member in family.members:
            assert abs(expectation(member, state) - 0.25) < 1e-10


def test_ghz4x3_cyclic_shift_family_explicit():
    # the cyclic shift k -> k+1 mod 4 sits at lexicographic index j=2
    family = ghz4x3_correlators("z", 1, 2)
    eye = np.eye(4, dtype=complex)
    for k in range(4):
        proj = lambda level: np.outer(eye[level], eye[level])  # noqa: E731
        first = proj(k) - proj((k + 1) % 4)
        expected = np.kron(first, np.kron(proj(k), proj(k)))
        assert np.allclose(family.members[k].matrix, expected, atol=1e-12)


def test_ghz4x3_cyclic_shift_fourier_family_explicit():
    vectors = np.exp(-2j * np.pi * np.outer(np.arange(4), np.arange(4)) / 4) / 2.0
    proj = lambda g: np.outer(vectors[:, g], vectors[:, g].conj())  # noqa: E731
    listed_pairs = {
        0: ((0, 0), (1, 3), (2, 2), (3, 1)),
        1: ((0, 3), (1, 2), (2, 1), (3, 0)),
        2: ((0, 2), (1, 1), (2, 0), (3, 3)),
        3: ((0, 1), (1, 0), (2, 3), (3, 2)),
    }
    family = ghz4x3_correlators("f", 1, 2)
    for k in range(4):
        pair_sum = sum(np.kron(proj(l), proj(r)) for l, r in listed_pairs[k])
        expected = np.kron(proj(k) - proj((k + 1) % 4), pair_sum)
        assert np.allclose(family.members[k].matrix, expected, atol=1e-12)


def test_ghz4x3_bad_indices():
    with pytest.raises(ValueError):
        ghz4x3_correlators("z", 4, 1)
    with pytest.raises(ValueError):
        ghz4x3_correlators("z", 1, 10)
    with pytest.raises(ValueError):
        ghz4x3_correlators("w", 1, 1)


def test_build_C_ghz4x3_values():
    op = build_C_ghz4x3()
    assert abs(expectation(op, ghz_4x3()) - 67.5) < 1e-10
    assert abs(op.trace()) < 1e-10
    value = expectation(op, _basis_state(QUDIT4X3, 0))
    assert abs(value - 40.5) < 1e-10
    assert value < 67.5


# ---------------------------------------------------------------------------
# sign tests


def test_prop1_examples():
    pair = ghz4_party_z(1)
    assert prop1_test(pair, ghz4(math.pi / 4, 0.0))
    assert not prop1_test(pair, _basis_state(QUBIT4, 0))


def test_prop2_examples():
    state = ghz_4x3()
    family = ghz4x3_correlators("z", 1, 1)
    assert prop2_test(family, state)
    assert not prop2_test(family, _basis_state(QUDIT4X3, 0 * 16 + 1 * 4 + 2))


def test_prop2_sign_rule_on_products():
    for i, family in enumerate(all_ghz4x3_families()):
        assert count_prop2_violations(family, trials=40, seed=1300 + i) == 0


def test_prop2_single_family_long_run():
    family = ghz4x3_correlators("z", 2, 3)
    assert count_prop2_violations(family, trials=500, seed=77) == 0


def test_product_of_members_never_all_positive_manually():
    family = ghz4x3_correlators("f", 3, 7)
    rng = np.random.default_rng(55)
    for _ in range(50):
        state = random_product_state(QUDIT4X3, family.cut, rng)
        values = [expectation(m, state) for m in family.members]
        assert min(values) <= 1e-12

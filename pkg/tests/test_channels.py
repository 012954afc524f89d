import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from daemonic import closed_form as cf
from daemonic.channels import (
    KrausChannel,
    MemoryChannelSpec,
    amplitude_damping,
    apply,
    apply_local_to_system,
    apply_memory,
    apply_memory_matrix,
    identity_channel,
    is_unital,
    memory_amplitude_damping,
    memory_channel,
)
from daemonic.errors import DimensionMismatch, NotCPTP, ParameterOutOfRange
from daemonic.states import initial_state, ket, make_density, partial_trace_ancilla, random_density

unit = st.floats(0.0, 1.0)


def kraus_oracle(operators, rho):
    """Channel output assembled entry by entry from <i|K|k> rho_kl <l|K^dagger|j>."""
    d = rho.shape[0]
    out = np.zeros((d, d), dtype=complex)
    for k in operators:
        for i, j, a, b in itertools.product(range(d), repeat=4):
            out[i, j] += k[i, a] * rho[a, b] * np.conj(k[j, b])
    return out


def local_kraus_oracle(gamma):
    """Two-qubit operators K_i ⊗ I written out on basis kets, without np.kron."""
    k = amplitude_damping(gamma).operators
    ops = []
    for ki in k:
        op = np.zeros((4, 4), dtype=complex)
        for s_in, s_out, a in itertools.product(range(2), range(2), range(2)):
            op[2 * s_out + a, 2 * s_in + a] = ki[s_out, s_in]
        ops.append(op)
    return ops


def test_amplitude_damping_endpoints():
    k0, k1 = amplitude_damping(0.0).operators
    assert np.array_equal(k0, np.eye(2)) and not k1.any()
    ch = amplitude_damping(1.0)
    for rho in (np.eye(2) / 2, np.diag([0.0, 1.0]), np.array([[0.5, 0.5], [0.5, 0.5]])):
        assert np.allclose(apply(ch, make_density(rho)).matrix, np.diag([1.0, 0.0]), atol=1e-14)


def test_amplitude_damping_completeness():
    assert amplitude_damping(0.5).completeness_residual() < 1e-15


def test_amplitude_damping_range():
    with pytest.raises(ParameterOutOfRange):
        amplitude_damping(1.2)
    with pytest.raises(ParameterOutOfRange):
        MemoryChannelSpec(0.5, -0.1)


def test_not_cptp_rejected():
    with pytest.raises(NotCPTP):
        KrausChannel.from_operators(amplitude_damping(0.5).operators[:1])


def test_apply_on_maximally_mixed():
    for g in (0.0, 0.25, 0.9):
        out = apply(amplitude_damping(g), make_density(np.eye(2) / 2)).matrix
        assert np.allclose(out, np.diag([(1 + g) / 2, (1 - g) / 2]), atol=1e-14)


def test_apply_ground_state():
    out = apply(amplitude_damping(0.36), make_density(np.diag([0.0, 1.0]))).matrix
    assert np.allclose(out, np.diag([0.36, 0.64]), atol=1e-14)


def test_identity_channel(rng):
    rho = random_density(rng, 2)
    assert np.allclose(apply(identity_channel(2), rho).matrix, rho.matrix, atol=1e-14)


def test_apply_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        apply(amplitude_damping(0.1), initial_state())


@pytest.mark.parametrize("gamma", [0.0, 0.2, 0.36, 0.5, 1.0])
def test_local_damping_matches_printed_state_and_oracle(gamma):
    out = apply_local_to_system(amplitude_damping(gamma), initial_state()).matrix
    expected = np.diag([0.5, gamma / 2, 0.0, (1 - gamma) / 2])
    assert np.allclose(out, expected, atol=1e-14)
    assert np.allclose(out, kraus_oracle(local_kraus_oracle(gamma), initial_state().matrix), atol=1e-14)


def test_local_damping_full():
    out = apply_local_to_system(amplitude_damping(1.0), initial_state()).matrix
    assert np.allclose(out, np.diag([0.5, 0.5, 0, 0]), atol=1e-14)


def test_unitality():
    assert is_unital(identity_channel(2))
    assert not is_unital(amplitude_damping(0.5))
    x = np.array([[0, 1], [1, 0]])
    assert is_unital(KrausChannel.from_operators([np.eye(2) / np.sqrt(2), x / np.sqrt(2)]))
    assert is_unital(amplitude_damping(0.0))
    for g in np.linspace(1e-5, 1, 40):
        assert not is_unital(amplitude_damping(g))


def test_memory_branches_endpoints():
    br = memory_amplitude_damping(MemoryChannelSpec(0.0, 0.3))
    assert np.array_equal(br.uncorrelated.operators[0], np.eye(4))
    assert all(not k.any() for k in br.uncorrelated.operators[1:])
    assert np.array_equal(br.correlated.operators[0], np.eye(4))
    assert not br.correlated.operators[1].any()

    br = memory_amplitude_damping(MemoryChannelSpec(1.0, 0.3))
    e00, e11 = br.correlated.operators
    assert np.array_equal(e00, np.diag([1.0, 1, 1, 0]))
    assert np.allclose(e11 @ ket("gg"), ket("ee"))
    assert np.count_nonzero(e11) == 1


@pytest.mark.parametrize("gamma", [0.0, 0.25, 0.5, 0.75, 1.0])
def test_memory_branches_complete(gamma):
    br = memory_amplitude_damping(MemoryChannelSpec(gamma, 0.5))
    assert br.uncorrelated.completeness_residual() < 1e-12
    assert br.correlated.completeness_residual() < 1e-12


def test_memory_channel_on_initial_state_printed_coefficients():
    for g in np.linspace(0, 1, 21):
        for mu in np.linspace(0, 1, 21):
            out = apply_memory(MemoryChannelSpec(g, mu), initial_state()).matrix
            assert np.allclose(np.diag(out).real, cf.memory_output_coefficients(g, mu), atol=1e-12)
            assert np.allclose(out - np.diag(np.diag(out)), 0, atol=1e-15)
            assert np.allclose(partial_trace_ancilla(out).matrix, np.diag([(1 + g) / 2, (1 - g) / 2]), atol=1e-12)


def test_memory_channel_special_points():
    out = apply_memory(MemoryChannelSpec(1.0, 1.0), initial_state()).matrix
    assert np.allclose(out, np.diag([1.0, 0, 0, 0]), atol=1e-15)
    out = apply_memory(MemoryChannelSpec(0.5, 0.0), initial_state()).matrix
    assert np.allclose(np.diag(out).real, [0.625, 0.125, 0.125, 0.125], atol=1e-14)


@given(unit, unit)
def test_memory_channel_matches_entrywise_oracle(gamma, mu):
    br = memory_amplitude_damping(MemoryChannelSpec(gamma, mu))
    rho = random_density(np.random.default_rng(int(gamma * 1e6) ^ int(mu * 1e6))).matrix
    expected = (1 - mu) * kraus_oracle(br.uncorrelated.operators, rho) + mu * kraus_oracle(br.correlated.operators, rho)
    assert np.allclose(apply_memory_matrix(MemoryChannelSpec(gamma, mu), rho), expected, atol=1e-13)


@given(unit, unit, st.integers(0, 2**32 - 1))
def test_outputs_stay_valid(gamma, mu, seed):
    rho = random_density(np.random.default_rng(seed))
    out = apply_memory(MemoryChannelSpec(gamma, mu), rho).matrix
    assert abs(np.trace(out) - 1) < 1e-12
    assert np.max(np.abs(out - out.conj().T)) < 1e-12
    out = apply_local_to_system(amplitude_damping(gamma), rho).matrix
    assert abs(np.trace(out) - 1) < 1e-12


def test_memory_mixture_is_cptp_and_nonunital():
    for g in np.linspace(0, 1, 21):
        for mu in np.linspace(0, 1, 21):
            ch = memory_channel(MemoryChannelSpec(g, mu))
            assert ch.completeness_residual() < 1e-10
            assert is_unital(ch) == (g == 0.0)

"""Transpose-in-a-basis reversal: involution, antiunitarity, invariance."""

import numpy as np
import pytest

from crookslab.errors import InvalidParameter
from crookslab.reversal import ReversalBasis, is_tr_invariant, reverse, reverse_state

import oracles


def random_basis(rng, n):
    _, u = np.linalg.eigh(oracles.random_hermitian(rng, n))
    return ReversalBasis(basis=u, description="test basis")


def test_basis_must_be_unitary():
    with pytest.raises(InvalidParameter):
        ReversalBasis(basis=np.ones((2, 2)))
    comp = ReversalBasis.computational(3)
    assert comp.is_identity
    assert comp.basis.shape == (3, 3)


def test_reverse_is_transpose_in_computational_basis(rng):
    sigma = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    basis = ReversalBasis.computational(4)
    np.testing.assert_array_equal(reverse(sigma, basis), sigma.T)


def test_reverse_general_basis_and_involution(rng):
    basis = random_basis(rng, 5)
    sigma = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    b = basis.basis
    ref = b @ (b.conj().T @ sigma @ b).T @ b.conj().T
    got = reverse(sigma, basis)
    np.testing.assert_allclose(got, ref, atol=1e-12)
    np.testing.assert_allclose(reverse(got, basis), sigma, atol=1e-12)


def test_reverse_preserves_hermiticity_and_spectrum(rng):
    basis = random_basis(rng, 6)
    h = oracles.random_hermitian(rng, 6)
    out = reverse(h, basis)
    np.testing.assert_allclose(out, out.conj().T, atol=1e-12)
    np.testing.assert_allclose(np.linalg.eigvalsh(out), np.linalg.eigvalsh(h), atol=1e-11)


def test_reverse_state_is_antiunitary(rng):
    basis = random_basis(rng, 5)
    phi = oracles.random_state(rng, 5)
    psi = oracles.random_state(rng, 5)
    # <T phi | T psi> = <psi | phi>
    lhs = np.vdot(reverse_state(phi, basis), reverse_state(psi, basis))
    assert lhs == pytest.approx(np.vdot(psi, phi), abs=1e-12)
    # squaring to the identity
    np.testing.assert_allclose(reverse_state(reverse_state(psi, basis), basis), psi, atol=1e-12)


def test_reverse_state_matches_operator_reversal(rng):
    basis = random_basis(rng, 4)
    psi = oracles.random_state(rng, 4)
    out = reverse_state(psi, basis)
    np.testing.assert_allclose(
        reverse(np.outer(psi, psi.conj()), basis), np.outer(out, out.conj()), atol=1e-12
    )


def test_momentum_flips_position_stays():
    n = 30
    x = np.arange(n)
    k = 0.9
    packet = np.exp(-((x - 14.0) ** 2) / 18.0) * np.exp(1j * k * x)
    packet = packet / np.linalg.norm(packet)
    rev = reverse_state(packet, ReversalBasis.computational(n))
    np.testing.assert_allclose(np.abs(rev), np.abs(packet), atol=1e-14)
    # relative phase between neighbors encodes the momentum sign
    before = np.angle(packet[15] / packet[14])
    after = np.angle(rev[15] / rev[14])
    assert after == pytest.approx(-before, abs=1e-12)


def test_is_tr_invariant():
    comp = ReversalBasis.computational(2)
    real_sym = np.array([[1.0, 2.0], [2.0, -1.0]])
    sigma_y = np.array([[0.0, -1j], [1j, 0.0]])
    assert is_tr_invariant(real_sym, comp)
    assert not is_tr_invariant(sigma_y, comp)
    # but sigma_y is invariant in its own eigenbasis, where it is diagonal
    _, u = np.linalg.eigh(sigma_y)
    assert is_tr_invariant(sigma_y, ReversalBasis(basis=u))

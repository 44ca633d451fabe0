# stdlib
import math

# 3rd party
import numpy as np
import pytest
from scipy.linalg import expm  # type: ignore[import]

# this package
from quditcomp.gates import (
		CEX,
		LS,
		MS,
		MS_PERIOD,
		CRot,
		EmbeddedH,
		LocalR,
		Perm,
		PhaseZ,
		PSwap,
		QuditSystem,
		Unitary,
		VirtualR,
		gate_from_dict,
		gate_kinds,
		gate_matrix,
		gate_to_dict,
		normalize_angle,
		phase_block,
		rotation_block
		)
from quditcomp.testing import assert_unitary


def _x01(d: int) -> np.ndarray:
	x = np.zeros((d, d), dtype=complex)
	x[0, 1] = x[1, 0] = 1
	return x


def _ms_oracle(theta: float, d: int) -> np.ndarray:
	x = _x01(d)
	return expm(-1j * theta / 4 * (np.eye(d * d) + np.kron(x, x)))


class TestQuditSystem:

	def test_dims(self):
		system = QuditSystem(2, 3)
		assert system.dim == 6
		assert system.dims == (2, 3)
		assert system.qudit_dim(1) == 2
		assert system.qudit_dim(2) == 3

	def test_index(self):
		system = QuditSystem(3, 3)
		assert system.index(1, 2) == 5
		assert system.levels(5) == (1, 2)
		assert system.levels(8) == (2, 2)

	@pytest.mark.parametrize("dims", [(1, 2), (2, 0), (True, 2), (2.0, 2)])
	def test_invalid(self, dims):
		with pytest.raises(ValueError, match="must be an integer >= 2"):
			QuditSystem(*dims)

	def test_require_equal_dims(self):
		assert QuditSystem.square(4).require_equal_dims("LS") == 4

		with pytest.raises(ValueError, match=r"LS requires equal qudit dimensions, got \(2, 3\)"):
			QuditSystem(2, 3).require_equal_dims("LS")


@pytest.mark.parametrize(
		"angle, expects",
		[
				(0, 0),
				(math.pi, math.pi),
				(2 * math.pi, 2 * math.pi),
				(-2 * math.pi, 2 * math.pi),
				(3 * math.pi, -math.pi),
				(6 * math.pi, 2 * math.pi),
				(-5 * math.pi, -math.pi),
				]
		)
def test_normalize_angle(angle: float, expects: float):
	assert normalize_angle(angle) == pytest.approx(expects)
	assert normalize_angle(normalize_angle(angle)) == normalize_angle(angle)


def test_normalize_angle_not_finite():
	with pytest.raises(ValueError, match="Angles must be finite"):
		normalize_angle(math.inf)

	with pytest.raises(ValueError, match="Angles must be finite"):
		normalize_angle(math.nan)


def test_rotation_block():
	assert_unitary(rotation_block(0.3, 1.1))
	np.testing.assert_allclose(rotation_block(0, 0.5), np.eye(2))
	np.testing.assert_allclose(rotation_block(math.pi, math.pi / 2), [[0, -1], [1, 0]], atol=1e-15)

	# a full turn is minus the identity, two are the identity
	np.testing.assert_allclose(rotation_block(2 * math.pi, 0.3), -np.eye(2), atol=1e-15)
	np.testing.assert_allclose(rotation_block(4 * math.pi, 0.3), np.eye(2), atol=1e-15)


def test_phase_block():
	np.testing.assert_allclose(phase_block(math.pi), np.diag([-1j, 1j]), atol=1e-15)


def test_cex_matrix(qutrits: QuditSystem):
	matrix = gate_matrix(CEX(1, (0, 1)), qutrits)

	expected = np.eye(9)
	expected[[3, 4]] = expected[[4, 3]]
	np.testing.assert_array_equal(matrix, expected)


def test_ls_matrix(qutrits: QuditSystem):
	np.testing.assert_allclose(gate_matrix(LS(0), qutrits), np.eye(9))

	diagonal = np.ones(9)
	diagonal[[0, 4, 8]] = -1
	np.testing.assert_allclose(gate_matrix(LS(math.pi), qutrits), np.diag(diagonal), atol=1e-15)


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("theta", [math.pi, math.pi / 3, -2.5, 3 * math.pi])
def test_ms_matrix(d: int, theta: float):
	np.testing.assert_allclose(gate_matrix(MS(theta), QuditSystem(d, d)), _ms_oracle(theta, d), atol=1e-12)


def test_ms_period(qubits: QuditSystem, qutrits: QuditSystem):
	assert MS(5 * math.pi).theta == pytest.approx(-3 * math.pi)

	for system in (qubits, qutrits):
		np.testing.assert_allclose(
				gate_matrix(MS(1.2 + MS_PERIOD), system),
				gate_matrix(MS(1.2), system),
				atol=1e-12,
				)

	# levels outside the coupled subspace pick up a sign after half a period
	half_turn = gate_matrix(MS(1.2 + MS_PERIOD / 2), qutrits)
	assert not np.allclose(half_turn, gate_matrix(MS(1.2), qutrits))
	np.testing.assert_allclose(half_turn, _ms_oracle(1.2 + MS_PERIOD / 2, 3), atol=1e-12)


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("theta", [0.4, math.pi / 2, -2.5, math.pi, 7.0])
@pytest.mark.parametrize("entangler", [MS, LS])
def test_entangler_inverse(entangler, d: int, theta: float):
	system = QuditSystem(d, d)
	product = gate_matrix(entangler(theta), system) @ gate_matrix(entangler(-theta), system)
	np.testing.assert_allclose(product, np.eye(d * d), atol=1e-12)


def test_entanglers_need_equal_dims():
	with pytest.raises(ValueError, match="MS requires equal"):
		gate_matrix(MS(), QuditSystem(2, 3))

	with pytest.raises(ValueError, match="LS requires equal"):
		gate_matrix(LS(), QuditSystem(3, 2))


def test_local_gates(qutrits: QuditSystem):
	block = rotation_block(0.4, 0.9)

	local = np.eye(3, dtype=complex)
	local[np.ix_([0, 2], [0, 2])] = block

	np.testing.assert_allclose(gate_matrix(LocalR(1, (0, 2), 0.4, 0.9), qutrits), np.kron(local, np.eye(3)))
	np.testing.assert_allclose(gate_matrix(LocalR(2, (0, 2), 0.4, 0.9), qutrits), np.kron(np.eye(3), local))

	hadamard = gate_matrix(EmbeddedH(2), qutrits)
	np.testing.assert_allclose(hadamard @ hadamard, np.eye(9), atol=1e-15)
	assert hadamard[2, 2] == 1

	perm = gate_matrix(Perm(1, (2, 0)), qutrits)
	np.testing.assert_array_equal(perm @ perm, np.eye(9))
	assert perm[6, 0] == 1

	assert_unitary(gate_matrix(PhaseZ(2, (1, 2), 0.7), qutrits))


def test_crot_and_pswap(qutrits: QuditSystem):
	block = rotation_block(1.3, -0.2)

	crot = gate_matrix(CRot(2, (1, 2), 1.3, -0.2), qutrits)
	np.testing.assert_allclose(crot[np.ix_([7, 8], [7, 8])], block)
	np.testing.assert_allclose(crot[:7, :7], np.eye(7))

	pswap = gate_matrix(PSwap((2, 3), 1.3, -0.2), qutrits)
	np.testing.assert_allclose(pswap[np.ix_([2, 3], [2, 3])], block)

	virtual = gate_matrix(VirtualR(2, 1.3, -0.2), qutrits)
	np.testing.assert_allclose(virtual, pswap)


@pytest.mark.parametrize(
		"gate",
		[
				pytest.param(LocalR(1, (0, 3), 0.1, 0.2), id="local-level"),
				pytest.param(CRot(3, (0, 1), 0.1, 0.2), id="control"),
				pytest.param(CEX(1, (1, 3)), id="target"),
				pytest.param(VirtualR(8, 0.1, 0.2), id="virtual"),
				pytest.param(Unitary("big", np.eye(16)), id="unitary"),
				]
		)
def test_gate_out_of_range(gate, qutrits: QuditSystem):
	with pytest.raises(ValueError):  # noqa: PT011
		gate_matrix(gate, qutrits)


def test_gate_validation():
	with pytest.raises(ValueError, match="must be in increasing order"):
		LocalR(1, (1, 0), 0.1, 0.2)

	with pytest.raises(ValueError, match="'qudit' must be 1 or 2"):
		PhaseZ(3, (0, 1), 0.1)

	with pytest.raises(ValueError, match="two distinct levels"):
		CEX(1, (1, 1))

	with pytest.raises(ValueError, match="'control' must not be negative"):
		CRot(-1, (0, 1), 0.1, 0.2)

	assert Perm(1, (2, 0)).levels == (0, 2)
	assert LocalR(2, (0, 1), 5 * math.pi, 0).theta == pytest.approx(math.pi)


def test_gate_kinds():
	assert gate_kinds["CEX"] is CEX
	assert all(cls.kind == kind for kind, cls in gate_kinds.items())


def test_gate_dict():
	gate = LocalR(2, (0, 2), 0.25, -1.5)
	data = gate_to_dict(gate)

	assert data == {"kind": "LocalR", "qudit": 2, "levels": [0, 2], "theta": 0.25, "phi": -1.5}
	assert gate_from_dict(data) == gate

	unitary = Unitary("iswap", np.array([[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]]))
	loaded = gate_from_dict(gate_to_dict(unitary))
	assert isinstance(loaded, Unitary)
	assert loaded.label == "iswap"
	np.testing.assert_array_equal(loaded.matrix, unitary.matrix)


def test_gate_from_dict_errors():
	with pytest.raises(ValueError, match="Unknown gate kind 'CNOT'"):
		gate_from_dict({"kind": "CNOT"})

	with pytest.raises(ValueError, match="Invalid fields for MS gate"):
		gate_from_dict({"kind": "MS", "phi": 1.0})

import io
import math

import numpy as np
import pytest

from src.core.circuits import (
    Circuit,
    DepthReport,
    Gate,
    GateKind,
    aphi,
    caphi,
    cnot,
    controlled_ry,
    cry,
    decompose,
    depth_bound,
    depth_cost,
    depth_report,
    emit_product_formula,
    h,
    mcry,
    order_terms,
    pauli_exp,
    rx,
    ry,
    rz,
    to_csv,
    toffoli,
    x,
)
from src.core.encodings import PauliPoly
from src.core.errors import ContractError
from src.core.simulator import circuit_unitary, exp_check, pauli_matrix

THETA = 0.7345

MACROS = [
    cry(0, 1, THETA),
    cry(2, 0, THETA, polarity=0),
    mcry(0, (1, 2), THETA),
    mcry(1, (0, 3, 2), THETA, polarity=(0, 1, 0)),
    aphi(0, 1, THETA),
    aphi(2, 0, THETA),
    caphi(0, 1, (2,), THETA),
    caphi(1, 3, (0, 2), THETA, polarity=(0, 1)),
    toffoli(0, 1, 2),
    pauli_exp((0,), "Y", THETA),
    pauli_exp((0, 2), "XZ", THETA),
    pauli_exp((2, 0, 1), "YXZ", THETA),
]


def _macro_unitary(gate, n):
    return circuit_unitary(Circuit(n, [gate]))


class TestGates:
    def test_validation(self):
        """Testa as checagens de aridade, parâmetro e polaridade."""
        with pytest.raises(ContractError):
            cnot(1, 1)
        with pytest.raises(ContractError):
            Gate(GateKind.RY, (0,))
        with pytest.raises(ContractError):
            mcry(0, (1,), THETA)
        with pytest.raises(ContractError):
            caphi(0, 1, (2,), THETA, polarity=(1, 1))
        with pytest.raises(ContractError):
            pauli_exp((0, 1), "XI", THETA)

    def test_controls_and_targets(self):
        g = caphi(3, 4, (0, 1), THETA, polarity=(0, 1))
        assert g.controls == (0, 1)
        assert cnot(2, 5).target == 5
        assert toffoli(0, 1, 2).controls == (0, 1)

    def test_controlled_ry_dispatch(self):
        assert controlled_ry(0, (), THETA).kind == GateKind.RY
        assert controlled_ry(0, (1,), THETA, (0,)).kind == GateKind.CRY
        assert controlled_ry(0, (1, 2), THETA).kind == GateKind.MCRY

    def test_dict_round_trip(self):
        g = mcry(1, (0, 2), THETA, polarity=(0, 1))
        assert Gate.from_dict(g.to_dict()) == g
        with pytest.raises(ContractError):
            Gate.from_dict({"kind": "swap", "qubits": [0, 1]})


class TestDecomposition:
    @pytest.mark.parametrize("gate", MACROS, ids=lambda g: g.descriptor())
    def test_expansion_matches_intended_unitary(self, gate):
        """Testa que a expansão primitiva reproduz a unitária pretendida da macro."""
        n = max(gate.qubits) + 1
        expanded = Circuit(n, [gate]).expand(peephole=False)
        assert expanded.is_expanded
        assert np.allclose(circuit_unitary(expanded), _macro_unitary(gate, n), atol=1e-10)

    @pytest.mark.parametrize("gate", MACROS, ids=lambda g: g.descriptor())
    def test_depth_within_bound(self, gate):
        assert decompose(gate).depth() <= depth_bound(gate)

    def test_exact_depths(self):
        """Testa as profundidades exatas dos macros de mistura."""
        assert decompose(cry(0, 1, THETA)).depth() == 3
        assert decompose(mcry(0, (1, 2), THETA)).depth() == 8
        assert decompose(mcry(0, (1, 2, 3), THETA)).depth() == 16
        assert decompose(aphi(0, 1, THETA)).depth() == 5
        assert decompose(caphi(0, 1, (2,), THETA)).depth() == 10
        assert decompose(caphi(0, 1, (2, 3), THETA)).depth() == 18
        assert decompose(pauli_exp((0, 1, 2), "XYZ", THETA)).depth() == 7

    def test_cry_active_is_reflection(self):
        u = _macro_unitary(cry(0, 1, THETA), 2)
        c, s = math.cos(THETA / 2), math.sin(THETA / 2)
        # controle (qubit 1) ativo: R_Y(θ)·X no alvo
        assert np.allclose(u[2:, 2:], [[-s, c], [c, s]])
        assert np.allclose(u[:2, :2], np.eye(2))

    def test_depth_cost_independent_of_angle(self):
        assert depth_cost(mcry(0, (1, 2), 0.1)) == depth_cost(mcry(0, (1, 2), 2.9)) == 8
        assert depth_cost(ry(0, 0.3)) == 1

    def test_inverse(self):
        circuit = Circuit(3, [caphi(0, 1, (2,), THETA)]).expand()
        u = circuit_unitary(circuit)
        assert np.allclose(circuit_unitary(circuit.inverse()) @ u, np.eye(8), atol=1e-10)

    def test_inverse_requires_expanded(self):
        with pytest.raises(ContractError):
            Circuit(2, [aphi(0, 1, THETA)]).inverse()


class TestCircuit:
    def test_gate_outside_register(self):
        with pytest.raises(ContractError):
            Circuit(2, [cnot(0, 2)])

    def test_depth_fuses_single_qubit_runs(self):
        """Testa que rotações consecutivas no mesmo qubit ocupam uma camada."""
        c = Circuit(2, [ry(0, 0.1), rz(0, 0.2), h(1), cnot(0, 1), rx(1, 0.3)])
        assert c.depth() == 3

    def test_depth_requires_expanded(self):
        with pytest.raises(ContractError):
            Circuit(2, [aphi(0, 1, THETA)]).depth()

    def test_peephole(self):
        c = Circuit(2, [h(0), h(0), cnot(0, 1), cnot(0, 1), rx(1, math.pi / 2, fixed=True),
                        rx(1, -math.pi / 2, fixed=True), rx(0, 0.4), rx(0, -0.4)])
        out = c.expand()
        assert [g.kind for g in out] == [GateKind.RX, GateKind.RX]

    def test_peephole_keeps_blocked_pairs(self):
        c = Circuit(2, [x(0), cnot(0, 1), x(0)])
        assert len(c.expand()) == 3

    def test_toffoli_global_phase(self):
        out = Circuit(3, [toffoli(0, 1, 2)]).expand()
        assert out.global_phase == pytest.approx(math.pi / 8)
        assert out.entangling_count() == 6

    def test_dict_round_trip(self):
        c = Circuit(3, [aphi(0, 2, THETA), toffoli(0, 1, 2)], global_phase=0.25)
        back = Circuit.from_dict(c.to_dict())
        assert back.gates == c.gates and back.global_phase == 0.25
        with pytest.raises(ContractError):
            Circuit.from_dict({"gates": []})


class TestProductFormula:
    def test_commuting_diagonal_is_exact(self):
        """Testa exatidão para termos diagonais (que comutam), incluindo fase global."""
        poly = PauliPoly.from_labels(3, {"III": 0.8, "ZII": -0.5, "ZZI": 1.25, "IZZ": 0.3, "ZIZ": -0.7})
        circuit = emit_product_formula(poly, 0.37)
        assert exp_check(pauli_matrix(poly), circuit, 0.37) < 1e-9

    def test_single_offdiagonal_term(self):
        poly = PauliPoly.from_labels(2, {"XY": 0.9})
        assert exp_check(pauli_matrix(poly), emit_product_formula(poly, 1.1), 1.1) < 1e-9

    def test_gate_count_independent_of_beta(self):
        poly = PauliPoly.from_labels(3, {"XXI": 0.5, "IYY": -0.2, "ZIZ": 1.0})
        a = emit_product_formula(poly, 0.1)
        b = emit_product_formula(poly, 2.3)
        assert [(g.kind, g.qubits) for g in a] == [(g.kind, g.qubits) for g in b]
        assert a.depth() == b.depth()

    def test_rejects_non_hermitian(self):
        with pytest.raises(ContractError):
            emit_product_formula(PauliPoly.from_labels(1, {"X": 0.5j}), 0.3)

    def test_order_is_deterministic(self):
        poly = PauliPoly.from_labels(3, {"ZZI": 1.0, "IZZ": 1.0, "ZIZ": 1.0, "XII": 1.0})
        first = [t.key for t in order_terms(poly)]
        assert first == [t.key for t in order_terms(PauliPoly(3, dict(reversed(list(poly.terms.items())))))]


class TestDepthReport:
    def test_report_and_csv(self):
        poly = PauliPoly.from_labels(2, {"ZZ": 1.0, "II": 0.5})
        report = depth_report("sb", 4, poly, emit_product_formula(poly, 0.37, expand=False))
        assert report == DepthReport("sb", 4, 2, 3, 2, 1)
        assert report.lower_bound == 2
        text = to_csv([report], header="teste")
        lines = text.splitlines()
        assert lines[0] == "# teste"
        assert lines[1] == "encoding,d,qubits,depth,entangling,terms"
        assert lines[2] == "sb,4,2,3,2,1"

import numpy as np
import pytest

from src.core.encodings import PauliPoly, key_label, label_key, multiply_keys
from src.core.errors import ContractError, DimensionCapError
from src.core.config import Settings
from src.core.simulator import pauli_matrix

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)


class TestPauliKeys:
    def test_label_convention(self):
        """Testa que o caractere i do rótulo é o qubit i."""
        assert label_key("ZI") == (0, 1)
        assert label_key("IX") == (2, 0)
        assert key_label(label_key("XYZI"), 4) == "XYZI"

    def test_invalid_letter(self):
        with pytest.raises(ContractError):
            label_key("XA")

    def test_single_qubit_products(self):
        assert multiply_keys(label_key("X"), label_key("Y")) == (1j, label_key("Z"))
        assert multiply_keys(label_key("Z"), label_key("Y")) == (-1j, label_key("X"))
        assert multiply_keys(label_key("Y"), label_key("Y")) == (1.0, (0, 0))

    def test_disjoint_products_commute(self):
        phase, key = multiply_keys(label_key("XI"), label_key("IZ"))
        assert phase == 1.0 and key_label(key, 2) == "XZ"


class TestPauliPoly:
    def test_product_matches_matrices(self):
        a = PauliPoly.from_labels(2, {"XZ": 0.5, "YI": -1.0})
        b = PauliPoly.from_labels(2, {"ZY": 2.0, "II": 0.25})
        assert np.allclose(pauli_matrix(a * b), pauli_matrix(a) @ pauli_matrix(b))

    def test_matrix_kron_order(self):
        """Testa que o qubit 1 é o fator mais significativo do kron."""
        assert np.allclose(pauli_matrix(PauliPoly.from_labels(2, {"XY": 1.0})), np.kron(Y, X))
        assert np.allclose(pauli_matrix(PauliPoly.from_labels(2, {"ZI": 1.0})).diagonal(), [1, -1, 1, -1])

    def test_projector(self):
        p = PauliPoly.projector(3, [0, 2], [1, 0])
        diag = pauli_matrix(p).diagonal().real
        expected = [1.0 if (s & 1) == 1 and (s >> 2) & 1 == 0 else 0.0 for s in range(8)]
        assert np.allclose(diag, expected)
        assert np.allclose(p.diagonal().real, expected)

    def test_cancellation(self):
        p = PauliPoly.from_labels(2, {"XX": 1.0, "ZI": 0.5})
        assert (p - p).is_empty()

    def test_qubit_count_mismatch(self):
        with pytest.raises(ContractError):
            PauliPoly.identity(2) + PauliPoly.identity(3)

    def test_hermiticity(self):
        assert PauliPoly.from_labels(1, {"X": 1.0, "Z": 0.3}).is_hermitian()
        assert not PauliPoly.from_labels(1, {"X": 1j}).is_hermitian()

    def test_matrix_elements_subset(self):
        """Testa elementos de matriz restritos a um subconjunto de estados."""
        p = PauliPoly.from_labels(3, {"XXI": 0.7, "ZZZ": -0.2, "IYX": 1.1})
        full = pauli_matrix(p)
        states = np.array([1, 2, 4, 7])
        assert np.allclose(p.matrix_elements(states, states), full[np.ix_(states, states)])

    def test_shift_and_tensor(self):
        a = PauliPoly.from_labels(1, {"X": 2.0})
        b = PauliPoly.from_labels(1, {"Z": 3.0})
        t = a.shifted(0, 2).tensor(b, 1)
        assert t.terms == {label_key("XZ"): 6.0}

    def test_dense_cap(self):
        with pytest.raises(DimensionCapError):
            pauli_matrix(PauliPoly.identity(5), Settings(dense_cap_qubits=4))

    def test_dict_round_trip_and_errors(self):
        p = PauliPoly.from_labels(2, {"XY": 0.5 - 0.25j, "II": 1.0})
        back = PauliPoly.from_dict(p.to_dict())
        assert back.terms == p.terms
        with pytest.raises(ContractError):
            PauliPoly.from_dict({"n_qubits": 2, "terms": [{"coeff": [1.0, 0.0], "string": "QQ"}]})
        with pytest.raises(ContractError):
            PauliPoly.from_dict({"terms": []})

    def test_sorted_terms_deterministic(self):
        p = PauliPoly.from_labels(3, {"ZZI": 1.0, "IIX": 1.0, "III": 1.0, "ZII": 1.0})
        labels = [key_label(t.key, 3) for t in p.sorted_terms()]
        assert labels == ["III", "ZII", "IIX", "ZZI"]

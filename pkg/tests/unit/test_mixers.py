import math

import numpy as np
import pytest

from src.core.circuits import Circuit, aphi, cry, ry
from src.core.dqir import DomainSpec, OneWayTransfer, OperatorPoly, SymmetricTransfer
from src.core.encodings import EncodingAssignment, lower_operator
from src.core.errors import ContractError, LibraryInsufficientError
from src.core.simulator import exp_check, pauli_matrix
from src.core.types.code import CodeSpec
from src.mixers import (
    GateTemplate,
    MixerDesign,
    PartialMixerGraph,
    basis_states,
    component_count,
    controlled_ry_library,
    aphi_library,
    gdpm_search,
    leakage,
    leakage_many,
    max_leakage,
    mixer_generator,
    pmg_of,
    ppm_construct,
    ring_generator,
    search_union,
    shift_generator,
    simple_binary_mixer,
    sppm_generator,
    trotter_mixer,
    uniform_superposition,
    verify_criteria,
)

THETA = 0.7345


class TestGenerators:
    def test_shift_and_ring(self, single4):
        """Testa as matrizes tridiagonal (shift) e circulante (ring)."""
        shift = shift_generator(single4, "x").to_matrix().real
        expected = np.diag(np.ones(3), 1) + np.diag(np.ones(3), -1)
        assert np.allclose(shift, expected)
        ring = ring_generator(single4, "x").to_matrix().real
        assert ring[0, 3] == ring[3, 0] == 1.0

    def test_ring_d2_has_no_duplicate_edge(self):
        dom = DomainSpec.of(("x", 2))
        assert np.allclose(ring_generator(dom, "x").to_matrix(), [[0, 1], [1, 0]])

    def test_sppm_swaps_neighbours(self, pair3):
        m = sppm_generator(pair3, "a", "b").to_matrix()
        src, dst = pair3.state_index((1, 2)), pair3.state_index((2, 1))
        assert m[dst, src] == pytest.approx(1.0)
        assert m[pair3.state_index((0, 2)), pair3.state_index((2, 0))] == 0
        assert sppm_generator(pair3, "a", "b").is_hermitian()

    def test_dispatch_errors(self, pair3):
        with pytest.raises(ContractError):
            mixer_generator("sppm", pair3, ["a"])
        with pytest.raises(ContractError):
            mixer_generator("xy", pair3, ["a"])
        with pytest.raises(ContractError):
            mixer_generator("ring", pair3, [])
        with pytest.raises(ContractError):
            sppm_generator(DomainSpec.of(("a", 3), ("b", 4)), "a", "b")


class TestPartialMixerGraph:
    def test_controlled_ry_example(self):
        """Testa o PMG de R_Y no qubit 2 controlado em 0 pelo qubit 1."""
        graph = pmg_of(cry(2, 1, THETA, polarity=0), n_qubits=3)
        assert graph.edges == {(0, 4), (1, 5)}

    def test_aphi_example(self):
        assert pmg_of(aphi(0, 1, THETA)).edges == {(1, 2)}

    def test_structural_matches_dense(self):
        """Testa que as arestas estruturais coincidem com o PMG denso."""
        for template in controlled_ry_library(3) + aphi_library(3):
            assert template.edges == pmg_of(template.gate, n_qubits=3).edges, template.descriptor

    def test_restricted_template_edges(self):
        t = GateTemplate.of(ry(0, THETA), 2, states=[0])
        assert t.edges == {(0, 1)}
        assert t.cost == 1

    def test_graph_queries(self):
        graph = PartialMixerGraph(8, frozenset({(0, 1), (2, 1), (5, 6)}))
        assert (1, 2) in graph.edges
        assert graph.crossing({0, 1, 5}) == {(1, 2), (5, 6)}
        assert graph.induced({0, 1, 2}) == {(0, 1), (1, 2)}
        assert graph.n_components([0, 1, 2, 5, 6]) == 2
        assert component_count([0, 3], graph.edges) == 2

    def test_graph_validation(self):
        with pytest.raises(ContractError):
            PartialMixerGraph(4, frozenset({(1, 1)}))
        with pytest.raises(ContractError):
            PartialMixerGraph(4, frozenset({(1, 9)}))


def _assert_strict(design):
    report = verify_criteria(design, "single_var")
    assert report.passed, report.violations
    assert report.details["components"] == 1
    assert max_leakage(design, n_angles=5) < 1e-9


class TestGdpmSearch:
    @pytest.mark.parametrize("d", range(3, 9))
    @pytest.mark.parametrize("label", ["sb", "gray"])
    def test_compact_codes(self, d, label):
        """Testa GDPMs estritos em códigos compactos para d = 3..8."""
        design = gdpm_search(d, CodeSpec.parse(label))
        _assert_strict(design)
        if d in (4, 8):
            assert design.kind == "sbm"
            assert design.depth() == 1

    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_unary(self, d):
        design = gdpm_search(d, CodeSpec.unary())
        assert len(design.gates) == d - 1
        _assert_strict(design)

    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_domain_wall(self, d):
        _assert_strict(gdpm_search(d, CodeSpec.domain_wall()))

    @pytest.mark.parametrize("label,d", [("bu:3:gray", 3), ("bu:3:gray", 5), ("bu:3:gray", 7), ("bu:3:sb", 5), ("bu:2:gray", 4)])
    def test_block_unary(self, label, d):
        design = gdpm_search(d, CodeSpec.parse(label))
        _assert_strict(design)

    def test_certificate_spans_valid_states(self):
        design = gdpm_search(5, CodeSpec.gray())
        good = set(design.valid_states())
        assert all(u in good and v in good for u, v in design.certificate)
        assert component_count(good, design.certificate) == 1

    def test_deterministic(self):
        a = gdpm_search(6, CodeSpec.sb())
        b = gdpm_search(6, CodeSpec.sb())
        assert [g.descriptor() for g in a.gates] == [g.descriptor() for g in b.gates]

    def test_insufficient_library(self):
        """Testa o erro quando nenhuma porta preserva a validade."""
        code = CodeSpec.sb()
        lib = [GateTemplate.of(ry(q, THETA), 2) for q in range(2)]
        with pytest.raises(LibraryInsufficientError) as exc:
            gdpm_search(3, code, library=lib)
        assert exc.value.best_components == 3

    def test_stalled_search_reports_best(self):
        lib = [GateTemplate.of(cry(0, 1, THETA, polarity=0), 2)]
        with pytest.raises(LibraryInsufficientError) as exc:
            search_union(lib, [0, 1, 2])
        assert exc.value.best_components == 2

    def test_small_d(self):
        with pytest.raises(ContractError):
            gdpm_search(1, CodeSpec.sb())


class TestSimpleBinaryMixer:
    def test_depth_and_gates(self):
        design = simple_binary_mixer(3)
        assert design.depth() == 1
        assert design.d == 8 and len(design.gates) == 3

    def test_leaks_when_d_not_power_of_two(self):
        design = simple_binary_mixer(2, d=3, code=CodeSpec.sb())
        report = verify_criteria(design, "single_var")
        assert not report.passed
        assert report.details["crossing_edges"] > 0
        assert max_leakage(design, n_angles=5) > 1e-3


class TestPartialPermutationMixer:
    @pytest.mark.parametrize("d", [3, 4, 5])
    @pytest.mark.parametrize("label", ["gray", "sb"])
    def test_strict(self, d, label):
        """Testa os critérios PPM e vazamento zero para d = 3..5."""
        design = ppm_construct(d, CodeSpec.parse(label))
        report = verify_criteria(design, "ppm")
        assert report.passed, report.violations
        assert report.details["pair_graph_components"] == 1
        assert len(design.gates) == d - 1
        assert max_leakage(design, n_angles=5) < 1e-9

    def test_certificate_is_swaps(self):
        design = ppm_construct(4, CodeSpec.sb())
        n = design.register_width
        mask = (1 << n) - 1
        for u, v in design.certificate:
            assert (u & mask, u >> n) == (v >> n, v & mask)

    def test_d2_uses_plain_aphi(self):
        design = ppm_construct(2, CodeSpec.gray())
        assert [g.kind.value for g in design.gates] == ["aphi"]

    def test_contract(self):
        with pytest.raises(ContractError):
            ppm_construct(17, CodeSpec.gray())
        with pytest.raises(ContractError):
            ppm_construct(4, CodeSpec.unary())


class TestCriteria:
    def test_missing_pair_reported(self):
        design = ppm_construct(4, CodeSpec.gray())
        design.gates = design.gates[:-1]
        report = verify_criteria(design, "ppm")
        assert not report.passed
        assert "isolados [3]" in report.violations[-1]

    def test_single_var_on_pair_design_finds_components(self):
        design = ppm_construct(3, CodeSpec.gray())
        assert not verify_criteria(design, "single_var").passed

    def test_full_mixer(self):
        """Testa a alcançabilidade por potências da unitária restrita."""
        report = verify_criteria(gdpm_search(3, CodeSpec.gray()), "full_mixer")
        assert report.passed
        assert report.details["leakage_free"]
        assert 1 <= report.details["reachability_power"] <= 3

    def test_full_mixer_rejects_pairs(self):
        report = verify_criteria(ppm_construct(3, CodeSpec.gray()), "full_mixer")
        assert not report.passed

    def test_unknown_kind(self):
        with pytest.raises(ContractError):
            verify_criteria(simple_binary_mixer(1), "everything")

    def test_report_dict(self):
        report = verify_criteria(simple_binary_mixer(2), "single_var")
        assert report.to_dict()["kind"] == "single_var"


class TestLeakage:
    def test_identity_has_no_leakage(self):
        assert leakage(np.eye(4), [0, 1, 2], uniform_superposition([0, 1, 2], 4)) == pytest.approx(0.0)

    def test_rx_leakage_value(self):
        """Testa ℒ = sin²(θ/2) para R_Y saindo de |0⟩ com P̂ = |0⟩⟨0|."""
        theta = 1.1
        c = Circuit(1, [ry(0, theta)])
        assert leakage(c, [0], basis_states([0], 2)[:, 0]) == pytest.approx(math.sin(theta / 2) ** 2)

    def test_boolean_mask(self):
        out = leakage_many(np.eye(4), np.array([1, 1, 0, 0]), basis_states([0, 1], 4))
        assert np.allclose(out, 0.0)

    def test_infeasible_start(self):
        with pytest.raises(ContractError):
            leakage(np.eye(4), [0, 1], basis_states([3], 4)[:, 0])

    def test_dimension_mismatch(self):
        with pytest.raises(ContractError):
            leakage(Circuit(3), [0], basis_states([0], 4)[:, 0])


class TestTrotter:
    def test_single_transfer_is_exact(self):
        dom = DomainSpec.of(("x", 2))
        gen = OperatorPoly.primitive(dom, "x", SymmetricTransfer(0, 1))
        assignment = EncodingAssignment.uniform(dom, CodeSpec.sb())
        circuit = trotter_mixer(gen, assignment, 0.6)
        assert exp_check(pauli_matrix(lower_operator(gen, assignment)), circuit, 0.6) < 1e-9

    def test_ring_circuit_width(self, code):
        dom = DomainSpec.of(("x", 3))
        assignment = EncodingAssignment.uniform(dom, code)
        circuit = trotter_mixer(ring_generator(dom, "x"), assignment, 0.4)
        assert circuit.n_qubits == assignment.n_qubits
        assert circuit.is_expanded

    def test_rejects_non_hermitian(self, single4):
        gen = OperatorPoly.primitive(single4, "x", OneWayTransfer(0, 1))
        with pytest.raises(ContractError):
            trotter_mixer(gen, EncodingAssignment.uniform(single4, CodeSpec.sb()), 0.3)


class TestMixerDesign:
    def test_dict_round_trip(self):
        design = ppm_construct(3, CodeSpec.sb())
        back = MixerDesign.from_dict(design.to_dict())
        assert back.gates == design.gates
        assert back.basis_change == design.basis_change
        assert back.certificate == design.certificate

    def test_angle_count(self):
        design = gdpm_search(3, CodeSpec.sb())
        with pytest.raises(ContractError):
            design.circuit([0.1] * (len(design.gates) + 1))

    def test_gate_outside_register(self):
        with pytest.raises(ContractError):
            MixerDesign([ry(3, THETA)], 2, 3, CodeSpec.sb())

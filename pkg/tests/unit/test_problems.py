from itertools import permutations

import numpy as np
import pytest

from src.core.encodings import EncodingAssignment
from src.core.errors import ContractError, DimensionCapError
from src.core.config import Settings
from src.core.types.code import CodeSpec
from src.problems import (
    ColoringInstance,
    IlpInstance,
    PortfolioInstance,
    SmsInstance,
    TspInstance,
    feasibility_projector,
    load_instance,
    portfolio_cost,
    problem_cost,
    tsp_cost,
)

DIST = [[0, 3, 4, 2], [3, 0, 5, 6], [4, 5, 0, 1], [2, 6, 1, 0]]


def _assert_matches_classical(instance, minimize=True, sign=1.0):
    op, _ = problem_cost(instance, minimize=minimize)
    diag = op.diagonal()
    domain = instance.domain()
    assert np.allclose(diag.imag, 0.0)
    for x in domain.states():
        assert diag[domain.state_index(x)].real == pytest.approx(sign * instance.classical_cost(x))


@pytest.fixture
def triangle():
    return ColoringInstance((("a", "b"), ("b", "c"), ("a", "c")), 3)


class TestCostOperators:
    def test_coloring(self, triangle):
        """Testa H_C da coloração contra o avaliador clássico."""
        _assert_matches_classical(triangle)

    def test_tsp(self):
        _assert_matches_classical(TspInstance(np.array(DIST, dtype=float)))

    def test_tsp_cyclic_relabeling(self):
        """Testa a invariância do custo ao girar as posições do percurso."""
        inst = TspInstance(np.array(DIST, dtype=float))
        domain = inst.domain()
        diag = tsp_cost(inst).diagonal()
        for x in domain.states():
            shifted = tuple(int(v) for v in np.roll(x, 1))
            assert diag[domain.state_index(shifted)] == pytest.approx(diag[domain.state_index(x)])

    def test_tsp_brute_force(self):
        cost, tour = TspInstance(np.array(DIST, dtype=float)).brute_force()
        assert cost == pytest.approx(11.0)
        assert sorted(tour) == [0, 1, 2, 3]

    @pytest.mark.parametrize("weighted", [True, False])
    def test_sms(self, weighted):
        inst = SmsInstance([2.0, 1.0, 3.0], [2.0, 4.0, 5.0], [1.0, 2.0, 0.5], weighted=weighted)
        _assert_matches_classical(inst)

    def test_single_job_is_padded(self):
        inst = SmsInstance([2.0], [1.0])
        assert inst.domain().dims == (2,)
        _assert_matches_classical(inst)

    def test_portfolio(self):
        inst = PortfolioInstance(
            risk=[[0.2, 0.05, 0.0], [0.05, 0.3, -0.1], [0.0, -0.1, 0.25]],
            returns=[0.1, 0.3, 0.2],
            previous=(1, 0, -1),
            lam=0.4,
            trade_cost=0.05,
            target=1,
        )
        _assert_matches_classical(inst)
        _, constraint = portfolio_cost(inst)
        assert constraint.evaluate((2, 2, 0)).real == pytest.approx(1.0)

    def test_ilp_sense(self):
        """Testa que a forma de minimização nega c·x."""
        inst = IlpInstance([1.0, -2.0, 3.0], (3, 2, 4), [[1, 1, 1]], [4])
        _assert_matches_classical(inst, minimize=True, sign=-1.0)
        _assert_matches_classical(inst, minimize=False, sign=1.0)
        assert inst.is_feasible((1, 1, 2))
        assert not inst.is_feasible((2, 1, 3))


class TestInstances:
    def test_asymmetric_tsp_rejected(self):
        with pytest.raises(ContractError):
            TspInstance(np.array([[0, 1], [2, 0]], dtype=float))

    def test_coloring_validation(self):
        with pytest.raises(ContractError):
            ColoringInstance((("a", "a"),), 3)
        with pytest.raises(ContractError):
            ColoringInstance((("a", "b"),), 3, ("a",))

    def test_portfolio_validation(self):
        with pytest.raises(ContractError):
            PortfolioInstance([[1.0]], [0.1], (2,))
        with pytest.raises(ContractError):
            PortfolioInstance([[1.0]], [0.1], (0,), lam=1.5)

    def test_complete_graph(self):
        inst = ColoringInstance.complete(4, 3)
        assert len(inst.edges) == 6
        assert inst.domain().ids == ("v0", "v1", "v2", "v3")

    def test_load_instance(self):
        inst = load_instance({"kind": "tsp", "distances": DIST})
        assert isinstance(inst, TspInstance) and inst.m == 4
        with pytest.raises(ContractError):
            load_instance({"kind": "knapsack"})
        with pytest.raises(ContractError):
            load_instance({"kind": "sms", "processing": [1.0]})

    def test_dict_round_trip(self, triangle):
        assert load_instance(triangle.to_dict()) == triangle


class TestFeasibility:
    def test_permutation(self):
        """Testa o projetor de permutações: posto M! e pertinência."""
        inst = TspInstance(np.array(DIST, dtype=float))
        proj = feasibility_projector("permutation", inst.domain())
        assert proj.rank() == 24
        assert proj.contains((2, 0, 3, 1))
        assert not proj.contains((0, 0, 1, 2))

    def test_permutation_single_position(self):
        dom = SmsInstance([1.0], [1.0]).domain()
        proj = feasibility_projector("permutation", dom)
        assert proj.feasible_states().tolist() == [0]

    def test_sum_equals(self):
        dom = PortfolioInstance([[1.0, 0.0], [0.0, 1.0]], [0.1, 0.2], (0, 0)).domain()
        coeffs = {v: (-1.0, 0.0, 1.0) for v in dom.ids}
        proj = feasibility_projector("sum_equals", dom, target=1.0, coeffs=coeffs)
        assert sorted(map(tuple, (list(dom.states())[i] for i in proj.feasible_states()))) == [(1, 2), (2, 1)]

    def test_encoded_mask(self):
        inst = TspInstance(np.array(DIST[:3], dtype=float)[:, :3])
        proj = feasibility_projector("permutation", inst.domain())
        assignment = EncodingAssignment.uniform(inst.domain(), CodeSpec.unary())
        mask = proj.encoded(assignment)
        assert mask.sum() == 6
        for perm in permutations(range(3)):
            assert mask[assignment.encode_state(perm)] == 1

    def test_encoded_cap(self):
        dom = ColoringInstance.complete(3, 3).domain()
        proj = feasibility_projector("all_valid", dom)
        with pytest.raises(DimensionCapError):
            proj.encoded(EncodingAssignment.uniform(dom, CodeSpec.unary()), Settings(dense_cap_qubits=8))

    def test_unknown_kind(self, pair3):
        with pytest.raises(ContractError):
            feasibility_projector("cardinality", pair3)

"""Varreduras de ponta a ponta: oráculos densos, misturadores e profundidades."""
from itertools import permutations
from pathlib import Path

import numpy as np
import pytest

from src.api import Pipeline, build_case, sweep
from src.core.circuits import emit_product_formula
from src.core.circuits.report import to_csv
from src.core.dqir import DomainSpec
from src.core.encodings import EncodingAssignment, decode_word, is_valid_word, lower_operator
from src.core.simulator import exp_check, pauli_matrix, restricted_equiv
from src.core.types.code import CodeSpec
from src.mixers import component_count, design_pmg, gdpm_search, max_leakage, ppm_construct, verify_criteria
from src.penalties import f_lin, f_perm, f_ss, f_sum
from src.problems import ColoringInstance, IlpInstance, PortfolioInstance, SmsInstance, TspInstance, problem_cost

pytestmark = pytest.mark.integration

JOBS = Path(__file__).resolve().parents[2] / "config" / "jobs"
QUBIT_LIMIT = 12
EXP_QUBIT_LIMIT = 8
CODES = {
    "sb": CodeSpec.sb(),
    "gray": CodeSpec.gray(),
    "unary": CodeSpec.unary(),
    "dw": CodeSpec.domain_wall(),
    "bu": CodeSpec.block_unary(3, "gray"),
}

INSTANCES = {
    "coloring-d2": ColoringInstance.complete(3, 2),
    "coloring-d3": ColoringInstance.complete(3, 3),
    "tsp-m3": TspInstance(np.array([[0, 2, 9], [2, 0, 6], [9, 6, 0]])),
    "tsp-m4": TspInstance(np.array([[0, 3, 4, 2], [3, 0, 5, 6], [4, 5, 0, 1], [2, 6, 1, 0]])),
    "sms-m2": SmsInstance(np.array([1.0, 1.0]), np.array([1.0, 2.0]), np.array([1.0, 1.0])),
    "sms-m3": SmsInstance(np.array([1.0, 2.0, 1.0]), np.array([2.0, 3.0, 4.0]), np.array([1.0, 2.0, 1.0])),
    "portfolio-m1": PortfolioInstance(np.array([[0.0]]), np.array([1.0]), (0,), lam=0.0),
    "portfolio-m2": PortfolioInstance(
        np.array([[0.1, 0.02], [0.02, 0.08]]), np.array([0.06, 0.11]), (0, 1), trade_cost=0.01
    ),
    "ilp": IlpInstance(np.array([1.0, 2.0]), (3, 4), np.array([[1.0, 1.0]]), np.array([3.0])),
}


def _cases():
    for name, inst in INSTANCES.items():
        for label, code in CODES.items():
            assignment = EncodingAssignment.uniform(inst.domain(), code)
            if assignment.n_qubits <= QUBIT_LIMIT:
                yield pytest.param(inst, assignment, id=f"{name}-{label}")


CASES = list(_cases())


class TestRestrictedEquivalence:
    @pytest.mark.parametrize("instance,assignment", CASES)
    def test_lowered_cost_matches_dqir(self, instance, assignment):
        """Testa o custo rebaixado contra a matriz DQIR nos estados válidos."""
        op, _ = problem_cost(instance)
        assert restricted_equiv(op, lower_operator(op, assignment), assignment) <= 1e-9

    @pytest.mark.slow
    @pytest.mark.parametrize("instance,assignment", CASES)
    def test_diagonal_exponentials_are_exact(self, instance, assignment, rng):
        if assignment.n_qubits > EXP_QUBIT_LIMIT:
            pytest.skip("exponencial densa limitada a 8 qubits")
        poly = lower_operator(problem_cost(instance)[0], assignment).simplify()
        assert poly.is_diagonal()
        h = pauli_matrix(poly)
        for beta in rng.uniform(0.1, 2.0, size=5):
            assert exp_check(h, emit_product_formula(poly, beta), beta) <= 1e-9


class TestPenaltyCorrectness:
    def _check(self, op, feasible):
        diag = op.diagonal().real
        for x in op.domain.states():
            value = diag[op.domain.state_index(x)]
            if feasible(x):
                assert value == pytest.approx(0.0, abs=1e-9)
            else:
                assert value >= 1 - 1e-9

    def test_f_perm(self):
        domain = DomainSpec.uniform("p", 3, 3)
        self._check(f_perm(domain), lambda x: len(set(x)) == 3)

    def test_f_sum(self):
        domain = DomainSpec.of(("a", 4), ("b", 4))
        ramp = [0.0, 1.0, 2.0, 3.0]
        self._check(f_sum(domain, {"a": ramp, "b": ramp}, 3), lambda x: sum(x) == 3)

    def test_f_lin(self):
        domain = DomainSpec.of(("x0", 3), ("x1", 4))
        self._check(f_lin(domain, {"x0": 1.0, "x1": 2.0}, 4), lambda x: x[0] + 2 * x[1] <= 4)

    @pytest.mark.parametrize("label", ["sb", "gray", "dw", "unary"])
    @pytest.mark.parametrize("d", [3, 5, 6])
    def test_f_ss(self, label, d):
        code = CODES[label]
        diag = f_ss(d, code, allow_unary=True).diagonal().real
        for w, value in enumerate(diag):
            if is_valid_word(w, d, code):
                assert value == pytest.approx(0.0, abs=1e-9)
            else:
                assert value >= 1 - 1e-9


class TestStrictMixers:
    @pytest.mark.slow
    @pytest.mark.parametrize("d", range(3, 9))
    @pytest.mark.parametrize("label", ["sb", "gray"])
    def test_gdpm_at_full_angle_budget(self, label, d):
        """Testa separação, conexão e vazamento em 100 ângulos semeados."""
        design = gdpm_search(d, CODES[label])
        report = verify_criteria(design, "single_var")
        assert report.details["crossing_edges"] == 0
        assert report.details["components"] == 1
        assert max_leakage(design) <= 1e-10

    @pytest.mark.parametrize("d", [2, 4, 8, 16])
    @pytest.mark.parametrize("label", ["sb", "gray"])
    def test_powers_of_two_give_depth_one(self, label, d):
        design = gdpm_search(d, CODES[label])
        assert design.kind == "sbm"
        assert design.depth() == 1

    def test_sb_d6_leaves_invalid_words_isolated(self):
        graph = design_pmg(gdpm_search(6, CODES["sb"]))
        assert not graph.crossing(range(6))
        assert component_count(range(6), graph.edges) == 1

    @pytest.mark.slow
    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_ppm_gray(self, d):
        design = ppm_construct(d, CODES["gray"])
        assert verify_criteria(design, "ppm").passed
        assert max_leakage(design) <= 1e-10

    def test_ppm_d5_pair_graph_is_a_path(self):
        code = CODES["gray"]
        design = ppm_construct(5, code)
        n = design.register_width
        mask = (1 << n) - 1
        pairs = {tuple(sorted((decode_word(u & mask, 5, code), decode_word(u >> n, 5, code)))) for u, _ in design.certificate}
        assert pairs == {(0, 1), (1, 2), (2, 3), (3, 4)}


def _depth(operator, label, d):
    return build_case(operator, d, CodeSpec.parse(label)).depth


@pytest.mark.slow
class TestDepthOrderings:
    def test_compact_eq_drops_at_power_of_two(self):
        for label in ("sb", "gray"):
            assert _depth("eq", label, 7) > _depth("eq", label, 8)

    def test_unary_eq_not_deeper_than_compact(self):
        for d in range(9, 17):
            assert _depth("eq", "unary", d) <= _depth("eq", "sb", d)

    def test_sms_compact_beats_unary_at_d4(self):
        assert _depth("sms", "sb", 4) < _depth("sms", "unary", 4)

    def test_block_unary_between_unary_and_compact(self):
        hits = 0
        for d in range(5, 17):
            unary, bu, compact = (_depth("eq", label, d) for label in ("unary", "bu:3:gray", "sb"))
            hits += min(unary, compact) <= bu <= max(unary, compact)
        assert hits >= 8

    @pytest.mark.parametrize("label", ["sb", "gray"])
    def test_strict_mixer_shallower_than_trotter(self, label):
        wins = sum(_depth("gdpm", label, d) < _depth("shift_trotter", label, d) for d in (3, 5, 6, 7))
        assert wins >= 3

    def test_full_sweep_is_deterministic(self):
        codes = [CodeSpec.parse(c) for c in ("sb", "gray", "unary", "bu:3:gray")]
        first = sweep("eq", codes, range(3, 17), workers=4)
        assert len(first) == 4 * 14
        assert to_csv(first) == to_csv(sweep("eq", codes, range(3, 17)))


class TestExampleJobs:
    @pytest.mark.slow
    @pytest.mark.parametrize("job", sorted(p.name for p in JOBS.glob("*.json")))
    def test_all_checks_pass(self, job):
        checks = Pipeline.from_job(JOBS / job).verify()
        failed = [c.to_dict() for c in checks if not c.passed]
        assert not failed
        assert any(c.name.startswith("restricted_equiv") for c in checks)

    def test_tsp_brute_force_matches_ground_state(self):
        pipe = Pipeline.from_job(JOBS / "tsp_unary.example.json")
        best, tour = pipe.instance.brute_force()
        diag = pipe.dqir().diagonal().real
        feasible = [pipe.domain.state_index(p) for p in permutations(range(3))]
        assert diag[feasible].min() == pytest.approx(best)
        assert pipe.instance.classical_cost(tour) == pytest.approx(best)

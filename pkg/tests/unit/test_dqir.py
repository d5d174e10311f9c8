import numpy as np
import pytest
from scipy.linalg import expm

from src.core.dqir import (
    DomainSpec,
    GeneralLocal,
    Indicator,
    OneWayTransfer,
    OperatorPoly,
    SymmetricTransfer,
    Value,
    ad,
    aeq,
    algebra,
    classify,
    cnz,
    compose_bool,
    compute_into_register,
    controlled_generator,
    dumps,
    eq,
    indicator,
    is_boolean,
    loads,
    named_function,
    neq,
    number,
    number_op,
    pd,
    permutation_generator,
    transposition_generator,
)
from src.core.errors import ContractError, DomainMismatchError, OutOfRangeError


def _perm_matrix(perm):
    u = np.zeros((len(perm), len(perm)))
    for a, t in enumerate(perm):
        u[t, a] = 1.0
    return u


class TestDomainSpec:
    def test_mixed_radix_order(self, pair3):
        """Testa que a primeira variável é o dígito menos significativo."""
        states = list(pair3.states())
        assert states[:4] == [(0, 0), (1, 0), (2, 0), (0, 1)]
        assert pair3.state_index((1, 2)) == 7
        assert pair3.n_states == 9

    def test_rejects_duplicates_and_small_d(self):
        with pytest.raises(ContractError):
            DomainSpec.of(("a", 3), ("a", 4))
        with pytest.raises(ContractError):
            DomainSpec.of(("a", 1))

    def test_unknown_variable(self, pair3):
        with pytest.raises(ContractError):
            pair3.d("z")

    def test_json(self, pair3):
        assert DomainSpec.from_json(pair3.to_json()) == pair3


class TestPrimitives:
    def test_out_of_range_level(self, single4):
        """Testa a validação de níveis fora de 0..d-1."""
        with pytest.raises(OutOfRangeError):
            OperatorPoly.primitive(single4, "x", Indicator(4))
        with pytest.raises(OutOfRangeError):
            OperatorPoly.primitive(single4, "x", OneWayTransfer(0, 7))

    def test_symmetric_transfer_needs_distinct_levels(self):
        with pytest.raises(ContractError):
            SymmetricTransfer(2, 2)

    def test_value_length_must_match(self, single4):
        with pytest.raises(ContractError):
            OperatorPoly.primitive(single4, "x", Value([1, 2]))

    def test_general_local_square(self):
        with pytest.raises(ContractError):
            GeneralLocal(np.zeros((2, 3)))

    def test_classify_recovers_kind(self):
        assert isinstance(classify(Indicator(2).matrix(4)), Indicator)
        assert isinstance(classify(OneWayTransfer(0, 3).matrix(4)), OneWayTransfer)
        assert classify(SymmetricTransfer(1, 3).matrix(4)) == SymmetricTransfer(1, 3)
        assert isinstance(classify(number(4).matrix(4)), Value)


class TestAlgebra:
    def test_number_squared(self, single4):
        """Testa 𝒩² diagonal com autovalores k²."""
        n = number_op(single4, "x")
        assert np.allclose((n ** 2).diagonal(), [0, 1, 4, 9])

    def test_indicators_sum_to_identity(self, single4):
        total = OperatorPoly.sum_of(single4, [indicator(single4, "x", k) for k in range(4)])
        assert total.n_terms == 1
        assert np.allclose(total.to_matrix(), np.eye(4))

    def test_adjoint_of_transfer(self, single4):
        t = OperatorPoly.primitive(single4, "x", OneWayTransfer(0, 2))
        assert np.allclose(t.adjoint().to_matrix(), t.to_matrix().T)
        assert not t.is_hermitian()
        assert (t + t.adjoint()).is_hermitian()

    def test_addition_is_canonical(self, pair3):
        a = indicator(pair3, "a", 1)
        b = number_op(pair3, "b")
        assert (a + b).structurally_equal(b + a)

    def test_cancellation(self, pair3):
        a = number_op(pair3, "a")
        assert (a - a).is_zero()

    def test_matrix_matches_kron(self, pair3):
        """Testa a ordem do produto de Kronecker (primeira variável mais rápida)."""
        op = OperatorPoly.product(pair3, {"a": Indicator(1), "b": OneWayTransfer(2, 0)})
        expected = np.kron(OneWayTransfer(2, 0).matrix(3), Indicator(1).matrix(3))
        assert np.allclose(op.to_matrix(), expected)

    def test_domain_mismatch(self, pair3, single4):
        with pytest.raises(DomainMismatchError):
            number_op(pair3, "a") + number_op(single4, "x")

    def test_diagonal_requires_diagonal(self, single4):
        with pytest.raises(ContractError):
            OperatorPoly.primitive(single4, "x", OneWayTransfer(0, 1)).diagonal()

    def test_named_dispatch(self, pair3):
        a, b = number_op(pair3, "a"), number_op(pair3, "b")
        assert algebra("mul", a, b).structurally_equal(a * b)
        with pytest.raises(ContractError):
            algebra("pow", a)

    def test_evaluate_matches_diagonal(self, pair3):
        op = number_op(pair3, "a") * 2.0 + eq(pair3, "a", "b")
        diag = op.diagonal()
        for x in pair3.states():
            assert op.evaluate(x) == pytest.approx(diag[pair3.state_index(x)])


class TestSimplify:
    """Testa a forma canônica: idempotência e preservação da matriz densa."""

    @staticmethod
    def _raw(domain, *ops):
        return OperatorPoly(domain, tuple(t for op in ops for t in op.terms))

    @staticmethod
    def _random_terms(domain, rng, n_terms):
        pool = [rng.integers(-1, 3, size=(3, 3)) for _ in range(3)]
        ops = []
        for _ in range(n_terms):
            support = [v for v in domain.ids if rng.random() < 0.7]
            factors = {v: GeneralLocal(pool[rng.integers(len(pool))]) for v in support}
            ops.append(OperatorPoly.product(domain, factors, coeff=int(rng.integers(-3, 4))))
        return ops

    @pytest.mark.parametrize("trial", range(8))
    def test_random_sums(self, pair3, rng, trial):
        for _ in range(trial):
            rng.random()
        raw = self._raw(pair3, *self._random_terms(pair3, rng, 7))
        s = raw.simplify()
        assert np.abs(s.to_matrix() - raw.to_matrix()).max(initial=0.0) <= 1e-12
        assert s.simplify().structurally_equal(s)

    def test_near_equal_factors_keep_matrix(self):
        dom = DomainSpec.of(("x", 2))
        a = OperatorPoly.product(dom, {"x": GeneralLocal(np.diag([1.0, 0.3]))}, coeff=1000)
        b = OperatorPoly.product(dom, {"x": GeneralLocal(np.diag([1.0, 0.3 + 4e-11]))}, coeff=1000)
        raw = self._raw(dom, a, b)
        s = raw.simplify()
        assert np.abs(s.to_matrix() - raw.to_matrix()).max() <= 1e-12
        assert s.n_terms == 1
        assert s.simplify().structurally_equal(s)

    def test_near_equal_rest_factor(self, pair3):
        """Testa a fusão por variável quando o restante difere abaixo do arredondamento."""
        m = np.array([[1.0, 0.5, 0.0], [0.5, 0.3, 0.0], [0.0, 0.0, 0.2]])
        a = OperatorPoly.product(pair3, {"a": GeneralLocal(m), "b": Indicator(1)}, coeff=1000)
        b = OperatorPoly.product(
            pair3, {"a": GeneralLocal(m + np.diag([0.0, 4e-11, 0.0])), "b": Indicator(2)}, coeff=1000
        )
        raw = self._raw(pair3, a, b)
        s = raw.simplify()
        assert np.abs(s.to_matrix() - raw.to_matrix()).max() <= 1e-12
        assert s.simplify().structurally_equal(s)


class TestBoolean:
    def test_connectives(self, pair3):
        """Testa a tabela verdade dos conectivos sobre indicadores."""
        f = indicator(pair3, "a", 1)
        g = indicator(pair3, "b", 2)
        cases = {
            "and": lambda p, q: p and q,
            "or": lambda p, q: p or q,
            "xor": lambda p, q: p != q,
            "implies": lambda p, q: (not p) or q,
        }
        for name, truth in cases.items():
            h = compose_bool(name, f, g)
            assert is_boolean(h)
            for x in pair3.states():
                expected = float(truth(x[0] == 1, x[1] == 2))
                assert h.evaluate(x).real == pytest.approx(expected)

    def test_not(self, pair3):
        h = compose_bool("not", eq(pair3, "a", "b"))
        assert h.structurally_equal(neq(pair3, "a", "b"))

    def test_rejects_non_boolean(self, pair3):
        with pytest.raises(ContractError):
            compose_bool("and", number_op(pair3, "a"), indicator(pair3, "b", 0))

    def test_linear_skips_check(self, pair3):
        h = compose_bool("linear", number_op(pair3, "a"), number_op(pair3, "b"), weights=(2.0, 1.0))
        assert h.evaluate((2, 1)).real == pytest.approx(5.0)

    def test_unknown_connective(self, pair3):
        with pytest.raises(ContractError):
            compose_bool("nand", indicator(pair3, "a", 0), indicator(pair3, "b", 0))


class TestNamedFunctions:
    def test_eq_neq(self, pair3):
        assert eq(pair3, "a", "b").evaluate((1, 1)).real == pytest.approx(1.0)
        assert eq(pair3, "a", "b").evaluate((1, 2)).real == pytest.approx(0.0)
        assert neq(pair3, "a", "b").evaluate((0, 2)).real == pytest.approx(1.0)

    def test_all_different(self):
        dom = DomainSpec.uniform("x", 3, 3)
        h = ad(dom, dom.ids)
        for x in dom.states():
            assert h.evaluate(x).real == pytest.approx(float(len(set(x)) == 3))

    def test_all_equal(self):
        dom = DomainSpec.uniform("x", 3, 2)
        h = aeq(dom, dom.ids)
        assert h.evaluate((1, 1, 1)).real == pytest.approx(1.0)
        assert h.evaluate((1, 0, 1)).real == pytest.approx(0.0)

    def test_count_nonzero(self):
        dom = DomainSpec.uniform("x", 3, 4)
        h = cnz(dom)
        assert h.evaluate((0, 3, 1)).real == pytest.approx(2.0)

    def test_proper_coloring_penalty(self):
        """Testa PD como número de arestas monocromáticas violadas (NEQ somado)."""
        dom = DomainSpec.of(("a", 3), ("b", 3), ("c", 3))
        h = pd(dom, [("a", "b"), ("b", "c"), ("a", "c")])
        assert h.evaluate((0, 1, 2)).real == pytest.approx(3.0)
        assert h.evaluate((0, 0, 0)).real == pytest.approx(0.0)

    def test_named_dispatch(self, pair3):
        assert named_function("neq", pair3).structurally_equal(neq(pair3, "a", "b"))
        with pytest.raises(ContractError):
            named_function("PD", pair3)
        with pytest.raises(ContractError):
            named_function("XYZ", pair3)

    def test_rejects_repeated_variables(self, pair3):
        with pytest.raises(ContractError):
            eq(pair3, "a", "a")
        with pytest.raises(ContractError):
            ad(pair3, ["a"])


class TestControlled:
    @pytest.mark.parametrize("perm", [(1, 2, 0), (0, 2, 1, 3), (3, 0, 1, 2)])
    def test_permutation_generator(self, perm):
        """Testa exp(−iπ/2·H_τ) = U_τ."""
        dom = DomainSpec.of(("x", len(perm)))
        h = permutation_generator(dom, "x", perm)
        assert h.is_hermitian()
        assert np.allclose(expm(-0.5j * np.pi * h.to_matrix()), _perm_matrix(perm), atol=1e-9)

    def test_transposition_closed_form(self, single4):
        h = transposition_generator(single4, "x", 1, 3)
        assert np.allclose(expm(-0.5j * np.pi * h.to_matrix()), _perm_matrix((0, 3, 2, 1)), atol=1e-9)

    def test_invalid_permutation(self, single4):
        with pytest.raises(ContractError):
            permutation_generator(single4, "x", (0, 0, 1, 2))

    def test_compute_into_register(self, pair3):
        """Testa que o registrador b só é permutado quando f(a)=1."""
        f = indicator(pair3, "a", 1)
        gen = compute_into_register(f, "b", (1, 2, 0))
        u = expm(-0.5j * np.pi * gen.to_matrix())
        for a in range(3):
            for b in range(3):
                src = pair3.state_index((a, b))
                dst = pair3.state_index((a, (b + 1) % 3 if a == 1 else b))
                assert abs(u[dst, src]) == pytest.approx(1.0, abs=1e-9)

    def test_overlapping_support(self, pair3):
        with pytest.raises(DomainMismatchError):
            controlled_generator(indicator(pair3, "a", 0), number_op(pair3, "a"))


class TestSerialization:
    def test_json_preserves_structure(self, pair3):
        op = number_op(pair3, "a") * OperatorPoly.primitive(pair3, "b", SymmetricTransfer(0, 2)) + 0.25j
        assert loads(dumps(op)).structurally_equal(op)

    def test_malformed_json(self):
        with pytest.raises(ContractError):
            loads('{"domain": [], "terms": [{"coeff": 1}]}')

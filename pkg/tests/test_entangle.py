import numpy as np
import pytest

from conjroof.antilinear import classify, expectation, hill_wootters
from conjroof.entangle import (ENTANGLED, SEPARABLE, Rank2SpanParams, bipartite_witness,
                               build_rank2_span, complete_basis, eof_2qubit, eof_lower_bound, f_hw,
                               hermitian_witness_family, pure_witness_supremum, rank2_closed_forms,
                               schmidt, schmidt_pairing_value, sup_concurrence_search,
                               tailored_conjugation, three_qubit_mixed_test, three_qubit_operators,
                               three_qubit_product_test)
from conjroof.errors import ShapeError, UnsupportedDimsError
from conjroof.measures import BlochVector, theta_concurrence, wootters_concurrence
from conjroof.sampling import (random_density, random_product_vector, random_separable,
                               random_state_vector)

from oracles import entropy_of_reduced, schmidt_from_reduced

BELL = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)


def pure(v):
    return np.outer(v, np.conj(v))


class TestSchmidt:
    def test_product(self, rng):
        psi = 2 * random_product_vector([2, 3], rng)
        assert np.allclose(schmidt(psi, 2, 3).coefficients, [2, 0], atol=1e-12)

    def test_bell(self):
        assert np.allclose(schmidt(BELL, 2, 2).coefficients, [1 / np.sqrt(2)] * 2)

    def test_random_reconstruction(self, rng):
        psi = random_state_vector(8, rng)
        sd = schmidt(psi, 2, 4)
        assert np.linalg.norm(sd.vector() - psi) < 1e-10
        assert np.sum(sd.coefficients**2) == pytest.approx(1)
        assert np.allclose(sd.coefficients, schmidt_from_reduced(psi, 2, 4)[:2], atol=1e-12)

    def test_wrong_length(self):
        with pytest.raises(ShapeError):
            schmidt(np.ones(5), 2, 2)

    def test_complete_basis(self, rng):
        cols = np.linalg.qr(rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2)))[0]
        b = complete_basis(cols, 5)
        assert np.allclose(b.conj().T @ b, np.eye(5), atol=1e-12)
        assert np.allclose(b[:, :2], cols)


class TestTailored:
    def test_bell(self):
        theta = tailored_conjugation(BELL, 2, 2)
        assert abs(expectation(theta, BELL)) == pytest.approx(1)
        assert classify(theta).conjugation

    def test_product(self, rng):
        psi = random_product_vector([2, 4], rng)
        assert abs(expectation(tailored_conjugation(psi, 2, 4), psi)) < 1e-12

    def test_random_2x4(self, rng):
        psi = random_state_vector(8, rng)
        a = schmidt_from_reduced(psi, 2, 4)
        value = abs(expectation(tailored_conjugation(psi, 2, 4), psi))
        assert value == pytest.approx(2 * a[0] * a[1], abs=1e-9)

    def test_odd_dims(self, rng):
        with pytest.raises(UnsupportedDimsError):
            tailored_conjugation(random_state_vector(6, rng), 2, 3)

    def test_pairing_value(self):
        assert schmidt_pairing_value([0.6, 0.5, 0.4, 0.3, 0.2]) == pytest.approx(2 * (0.3 + 0.12))


class TestPureSupremum:
    def test_product(self, rng):
        assert pure_witness_supremum(random_product_vector([2, 4], rng), 2, 4) < 1e-7

    def test_bell(self):
        assert pure_witness_supremum(BELL, 2, 2) == pytest.approx(1)

    def test_random(self, rng):
        psi = random_state_vector(8, rng)
        a = schmidt_from_reduced(psi, 2, 4)
        assert pure_witness_supremum(psi, 2, 4) == pytest.approx(2 * a[0] * a[1], abs=1e-12)

    def test_needs_qubit_factor(self, rng):
        with pytest.raises(UnsupportedDimsError):
            pure_witness_supremum(random_state_vector(16, rng), 4, 4)


class TestFamily:
    def test_two_qubits_is_hill_wootters(self):
        family = hermitian_witness_family((2, 2))
        assert len(family) == 1
        assert np.allclose(family[0].matrix, -hill_wootters().matrix)

    def test_three_by_two(self):
        family = hermitian_witness_family((3, 2))
        assert len(family) == 3
        for theta in family:
            assert classify(theta).hermitian
            # anti-Hermitian factor on a 2-dim subspace: rank 2 * 2
            assert np.linalg.matrix_rank(theta.matrix) == 4

    def test_sampled_members_hermitian(self, rng):
        for theta in hermitian_witness_family((3, 4), samples=5, seed=rng):
            assert classify(theta).hermitian

    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3), (2, 4), (3, 5)])
    def test_products_vanish(self, dims, rng):
        psi = random_product_vector(dims, rng)
        for theta in hermitian_witness_family(dims, samples=3, seed=1):
            assert abs(expectation(theta, psi)) < 1e-12

    def test_three_factors_unsupported(self):
        with pytest.raises(UnsupportedDimsError):
            hermitian_witness_family((2, 2, 2))


class TestSearch:
    def test_separable(self, rng):
        rho = random_separable([2, 4], rng)
        value, theta = sup_concurrence_search(rho, (2, 4), trials=10, seed=0)
        assert value <= 1e-8
        assert classify(theta).hermitian

    def test_pure_two_qubits(self, rng):
        psi = random_state_vector(4, rng)
        value, _ = sup_concurrence_search(pure(psi), (2, 2), trials=5, seed=0)
        assert value == pytest.approx(wootters_concurrence(pure(psi)), abs=1e-6)

    def test_pure_2x4_reaches_supremum(self, rng):
        psi = random_state_vector(8, rng)
        value, theta = sup_concurrence_search(pure(psi), (2, 4), trials=100, seed=0)
        target = pure_witness_supremum(psi, 2, 4)
        assert value <= target + 1e-9
        assert value >= target - 1e-3
        assert theta_concurrence(pure(psi), theta).value == pytest.approx(value, abs=1e-9)

    def test_monotone_in_trials(self, rng):
        rho = random_density(6, rng, rank=2)
        values = [sup_concurrence_search(rho, (2, 3), trials=t, seed=4)[0] for t in (1, 3, 8)]
        assert values[0] <= values[1] + 1e-12 <= values[2] + 2e-12

    def test_dims_mismatch(self):
        with pytest.raises(ValueError):
            sup_concurrence_search(np.eye(4) / 4, (2, 3), trials=1)


class TestEntanglementOfFormation:
    def test_f_hw_values(self):
        assert f_hw(0) == 0
        assert f_hw(1) == pytest.approx(np.log(2))
        assert f_hw(0.3) < f_hw(0.7)

    def test_f_hw_domain(self):
        with pytest.raises(ValueError):
            f_hw(1.5)

    def test_bell(self):
        assert eof_2qubit(pure(BELL)) == pytest.approx(np.log(2))

    def test_separable_and_mixed(self, rng):
        assert eof_2qubit(random_separable([2, 2], rng)) < 1e-12
        assert eof_2qubit(np.eye(4) / 4) == 0

    def test_pure_two_qubit_entropy(self, rng):
        psi = random_state_vector(4, rng)
        assert eof_2qubit(pure(psi)) == pytest.approx(entropy_of_reduced(psi, 2, 2), abs=1e-10)

    def test_lower_bound_two_qubits(self, rng):
        rho = random_density(4, rng, rank=2)
        assert eof_lower_bound(rho, (2, 2), trials=3, seed=0) == pytest.approx(
            eof_2qubit(rho), abs=1e-6)

    def test_lower_bound_separable(self, rng):
        assert eof_lower_bound(random_separable([2, 4], rng), (2, 4), trials=5, seed=0) < 1e-8

    def test_lower_bound_pure_2x4(self, rng):
        psi = random_state_vector(8, rng)
        exact = entropy_of_reduced(psi, 2, 4)
        assert f_hw(pure_witness_supremum(psi, 2, 4)) == pytest.approx(exact, abs=1e-10)
        assert eof_lower_bound(pure(psi), (2, 4), trials=100, seed=0) == pytest.approx(exact, abs=1e-3)

    def test_unsupported(self):
        with pytest.raises(UnsupportedDimsError):
            eof_lower_bound(np.eye(9) / 9, (3, 3))


class TestBipartiteWitness:
    def test_bell(self):
        rep = bipartite_witness(pure(BELL), (2, 2), trials=2, seed=0)
        assert rep.verdict == ENTANGLED and rep.witnessed
        assert max(v for _, v in rep.values) == pytest.approx(1)
        assert rep.certificate is not None

    def test_product(self, rng):
        rep = bipartite_witness(pure(random_product_vector([2, 2], rng)), (2, 2), trials=2, seed=0)
        assert rep.verdict == SEPARABLE
        assert all(v <= 1e-9 for _, v in rep.values)
        assert rep.certificate is None


def ket(*idx):
    v = np.zeros(8, dtype=complex)
    v[list(idx)] = 1
    return v / np.linalg.norm(v)


class TestThreeQubit:
    def test_operator_counts(self):
        assert len(three_qubit_operators("8")) == 8
        assert len(three_qubit_operators("12")) == 12

    def test_ket000(self):
        rep = three_qubit_product_test(ket(0))
        assert rep.verdict == SEPARABLE
        assert all(v == 0 for _, v in rep.values)

    def test_ghz(self):
        rep = three_qubit_product_test(ket(0, 7))
        assert rep.witnessed and max(v for _, v in rep.values) > 0.1

    def test_random_products(self, rng):
        for _ in range(20):
            rep = three_qubit_product_test(random_product_vector([2, 2, 2], rng))
            assert all(v <= 1e-10 for _, v in rep.values)

    def test_bell_on_outer_qubits(self):
        # |0>_2 (x) Bell_13 is entangled; the 8-set must see it
        psi = np.zeros(8, dtype=complex)
        psi[[0, 5]] = 1 / np.sqrt(2)
        assert three_qubit_product_test(psi, "8").witnessed
        assert three_qubit_product_test(psi, "12").witnessed

    def test_bell_pairs_all_positions(self):
        bell = BELL
        zero = np.array([1, 0], dtype=complex)
        states = [np.kron(bell, zero), np.kron(zero, bell),
                  np.einsum("ac,b->abc", bell.reshape(2, 2), zero).reshape(-1)]
        for psi in states:
            assert three_qubit_product_test(psi, "8").witnessed

    def test_mixed_matches_pure(self, rng):
        psi = random_state_vector(8, rng)
        pure_rep = three_qubit_product_test(psi, "12")
        mixed_rep = three_qubit_mixed_test(pure(psi), "12")
        assert np.allclose([v for _, v in pure_rep.values], [v for _, v in mixed_rep.values],
                           atol=1e-10)

    def test_mixed(self, rng):
        rho = random_separable([2, 2, 2], rng)
        assert three_qubit_mixed_test(rho).verdict == SEPARABLE
        assert three_qubit_mixed_test(pure(ket(0, 7))).witnessed

    def test_wrong_length(self):
        with pytest.raises(ShapeError):
            three_qubit_product_test(np.ones(4))


class TestRank2Span:
    def test_orthogonal_products(self):
        span = build_rank2_span([1, 0], [1, 0], [0, 1], [0, 1])
        p = span.params
        assert (p.a, p.b) == (0.0, 0.0)
        assert p.a_plus == pytest.approx(1) and p.a_minus == pytest.approx(1)
        for col in span.embedding.T:
            assert abs(expectation(hill_wootters(), col)) == pytest.approx(1)

    def test_half_overlaps(self):
        p = Rank2SpanParams(1 / np.sqrt(2), 1 / np.sqrt(2))
        assert p.a_plus == pytest.approx(1 / 3)
        assert p.a_minus == pytest.approx(1)
        # a_plus * a_minus carries an extra factor 1 - a^2 b^2 relative to A^2
        assert p.a_plus * p.a_minus == pytest.approx(p.amplitude**2 * (1 - 0.25))
        assert p.amplitude == pytest.approx((p.a_plus + p.a_minus) / 2)

    def test_eigen_relation(self, rng):
        span = build_rank2_span(*(random_state_vector(2, rng) for _ in range(4)))
        plus, minus = span.embedding.T
        assert np.allclose(span.theta(plus), span.params.a_plus * plus, atol=1e-12)
        assert np.allclose(span.theta(minus), span.params.a_minus * minus, atol=1e-12)

    def test_bell_like_closed_form(self):
        assert rank2_closed_forms(Rank2SpanParams(0, 0), BlochVector(1, 0, 0, 1)) == pytest.approx((1, 1))

    def test_coinciding_factor(self, rng):
        a0, b0, b1 = (random_state_vector(2, rng) for _ in range(3))
        span = build_rank2_span(a0, b0, a0, b1)
        assert span.params.a == pytest.approx(1)
        assert np.allclose(span.theta.matrix, 0, atol=1e-12)

    def test_same_vector(self, rng):
        a, b = random_state_vector(2, rng), random_state_vector(2, rng)
        with pytest.raises(ShapeError):
            build_rank2_span(a, b, 1j * a, b)

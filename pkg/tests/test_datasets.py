import math

import numpy as np
import pytest
import sympy as sp

from gsvm.core import DataSet
from gsvm.datasets import EXAMPLE_FAMILIES, FIXTURE_IDS, FamilySpec, fixture, gen_family
from gsvm.exceptions import GenerationError
from gsvm.generalized import gsvm_train
from gsvm.reproduction import EXAMPLE_IDS, reproduce_all, reproduce_example
from gsvm.svm import svm_train


def solve_margin_equalities(ds, support):
    """Exact rational solve of y_i (<w, x_i> + b) = 1 over the support points."""
    n = ds.dim
    rows = [[sp.nsimplify(float(v)) for v in ds.X[i]] + [1] for i in support]
    A = sp.Matrix(rows)
    rhs = sp.Matrix([int(ds.y[i]) for i in support])
    sol, params = A.gauss_jordan_solve(rhs)
    assert params.shape[0] == 0, "margin equalities do not determine w"
    return np.array([float(v) for v in sol[:n]]), float(sol[n])


class TestFixtures:
    def test_four_point_fixture(self):
        case = fixture("ex2_2")
        assert len(case.dataset) == 4
        np.testing.assert_array_equal(case.expected_w, [1, 1])
        assert case.expected_b == 0
        assert case.expected_norm == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_two_layer_fixture(self):
        case = fixture("ex2_3_s3")
        assert len(case.dataset) == 8
        np.testing.assert_array_equal(case.expected_w, [2, 2])
        assert case.expected_norm == pytest.approx(2 * math.sqrt(2), abs=1e-12)

    def test_three_dimensional_fixture(self):
        case = fixture("ex2_14")
        assert case.dataset.dim == 3 and len(case.dataset) == 6
        np.testing.assert_allclose(case.expected_w, [4 / 3, 0, 4 / 3])
        assert case.expected_norm == pytest.approx(4 / 3 * math.sqrt(2), abs=1e-12)

    def test_unknown(self):
        with pytest.raises(KeyError):
            fixture("ex9_9")

    @pytest.mark.parametrize("example_id", [i for i in FIXTURE_IDS if i != "ex2_14"])
    def test_svm_reproduces_fixture(self, example_id):
        case = fixture(example_id)
        sol = svm_train(case.dataset)
        np.testing.assert_allclose(sol.w, case.expected_w, atol=1e-9)
        assert sol.b == pytest.approx(case.expected_b, abs=1e-9)

    def test_three_dimensional_fixture_is_the_margin_equality_model(self):
        case = fixture("ex2_14")
        w, b = solve_margin_equalities(case.dataset, case.support)
        np.testing.assert_allclose(w, case.expected_w, atol=1e-12)
        assert b == pytest.approx(case.expected_b, abs=1e-12)
        assert case.notes["svm_optimum_differs"]


class TestFamilies:
    def test_family_a_reduces_to_four_point_fixture(self):
        case = gen_family(FamilySpec("A", 2, [1.0, 1.0], k=-1.0))
        np.testing.assert_allclose(case.expected_w, [1, 1])
        assert case.dataset.same_points(fixture("ex2_2").dataset)

    def test_family_c_unit(self):
        for k in (0.5, 2.0, 3.0):
            case = gen_family(FamilySpec("C", 3, [1.0, 1, 1], k=k, betas=[1.0, 1, 1]))
            assert case.expected_norm == pytest.approx(abs(2 / (1 - k)) * math.sqrt(3),
                                                       rel=1e-12)

    def test_family_a_k3(self):
        spec = FamilySpec("A", 3, [1.0, 2.0, 4.0], k=3.0)
        case = gen_family(spec)
        np.testing.assert_allclose(case.expected_w, [-0.5, -0.25, -0.125], atol=1e-15)
        w, b = solve_margin_equalities(case.dataset, case.support)
        np.testing.assert_allclose(w, case.expected_w, atol=1e-12)
        assert b == pytest.approx(case.expected_b, abs=1e-12)

    def test_family_b_records_printed_prefactor(self):
        case = gen_family(FamilySpec("B", 5, [1.0, 2, 3, 4, 5], k=-1.0, m=2))
        assert case.notes["prefactor"] == pytest.approx(2 / (2 * 2))
        assert case.notes["norm_prefactor_as_printed"] == pytest.approx(2 / (4 * 2))
        assert case.notes["determined"]

    def test_family_b_undetermined_when_not_coprime(self):
        case = gen_family(FamilySpec("B", 4, [1.0, 2, 3, 4], k=-1.0, m=2))
        assert not case.notes["determined"]

    def test_family_c_beta_points_break_margin(self):
        case = gen_family(EXAMPLE_FAMILIES["ex2_13"])
        assert not case.margin_feasible
        assert case.support == (0, 1, 2, 6, 7, 8)

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("k", [-1.0, 0.5, 2.0])
    def test_round_trip_grid(self, n, k, rng):
        specs = [FamilySpec("A", n, rng.choice([-1, 1], n) * rng.uniform(0.5, 3, n), k=k)]
        specs += [FamilySpec("B", n, rng.uniform(0.5, 3, n), k=k, m=m)
                  for m in range(1, n) if math.gcd(n, m) == 1]
        if n == 3:
            a = rng.uniform(0.5, 3, 3)
            specs.append(FamilySpec("C", 3, a, k=k if k > 0 else 0.25,
                                    betas=a + rng.uniform(0, 2, 3)))
        for spec in specs:
            case = gen_family(spec)
            model = gsvm_train(case.dataset, active=list(case.support))
            np.testing.assert_allclose(model.W, np.tile(case.expected_w, (n, 1)), atol=1e-8)
            np.testing.assert_allclose(model.B, case.expected_b, atol=1e-8)
            assert case.expected_norm == pytest.approx(
                abs(spec.prefactor) * math.sqrt(np.sum(1 / spec.alphas**2)), rel=1e-12)

    @pytest.mark.parametrize("kwargs", [
        dict(family="D", n=2, alphas=[1, 1], k=0),
        dict(family="A", n=1, alphas=[1], k=0),
        dict(family="A", n=3, alphas=[1, 1], k=0),
        dict(family="A", n=2, alphas=[1, 0], k=0),
        dict(family="A", n=2, alphas=[1, 1], k=1),
        dict(family="B", n=3, alphas=[1, 1, 1], k=0),
        dict(family="B", n=3, alphas=[1, 1, 1], k=0, m=3),
        dict(family="C", n=3, alphas=[1, 1, 1], k=0.5),
        dict(family="C", n=3, alphas=[1, 1, 1], k=-1, betas=[1, 1, 1]),
        dict(family="C", n=3, alphas=[2, 1, 1], k=0.5, betas=[1, 1, 1]),
        dict(family="C", n=2, alphas=[1, 1], k=0.5, betas=[1, 1]),
    ])
    def test_invalid_specs(self, kwargs):
        with pytest.raises(GenerationError):
            FamilySpec(**kwargs)

    def test_generation_is_deterministic(self):
        a = gen_family(EXAMPLE_FAMILIES["ex2_12"])
        b = gen_family(EXAMPLE_FAMILIES["ex2_12"])
        np.testing.assert_array_equal(a.dataset.X, b.dataset.X)
        np.testing.assert_array_equal(a.expected_w, b.expected_w)


class TestReproduction:
    @pytest.mark.parametrize("example_id", EXAMPLE_IDS)
    def test_each_example_matches(self, example_id):
        rep = reproduce_example(example_id)
        assert rep["matches_paper"], rep["checks"]

    def test_all(self):
        assert reproduce_all()["all_match"]

    def test_unknown(self):
        with pytest.raises(KeyError):
            reproduce_example("nope")


def test_same_points_ignores_order():
    ds = fixture("ex2_2").dataset
    flipped = DataSet(ds.X[::-1], ds.y[::-1])
    assert ds.same_points(flipped)
    assert not ds.same_points(DataSet(ds.X, -ds.y))

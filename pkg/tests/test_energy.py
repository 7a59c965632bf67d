import math
import os
import sys

import numpy as np
import pytest

# Add the source directory to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), "..", "src"))

from treeenergy.config import Config, InvalidConfigError, QuadratureConfig
from treeenergy.energy import (
    EigenCapError,
    energy_coulson,
    energy_eigen,
    energy_of_tree,
    path_energy_closed,
)
from treeenergy.models import EnergyMethod
from treeenergy.polynomials import matching_polynomial, path_mplus
from treeenergy.trees import FamilyParams, FamilyParamsError, Tree, build_path, build_Ta, build_Tb, enumerate_trees
from treeenergy.utils import (
    MatrixShapeError,
    QuadratureError,
    integrate,
    ordered_map,
    round_floats,
    symmetric_eigenvalues,
    tridiagonal_eigenvalues,
    tridiagonalize,
)


class TestEigenEnergy:
    """Test the adjacency-spectrum oracle."""

    @pytest.mark.parametrize(
        "tree,expected",
        [
            (Tree(1, ()), 0.0),
            (build_path(2), 2.0),
            (build_path(4), 2.0 * math.sqrt(5.0)),
            (Tree(4, ((0, 1), (0, 2), (0, 3))), 2.0 * math.sqrt(3.0)),
        ],
    )
    def test_known_energies(self, tree, expected):
        """Small trees with hand-computed spectra."""
        result = energy_eigen(tree)
        assert result.value == pytest.approx(expected, abs=1e-12)
        assert result.method is EnergyMethod.EIGEN

    def test_cap(self):
        """Trees above the cap are refused."""
        with pytest.raises(EigenCapError):
            energy_eigen(build_path(20), cap=10)

    @pytest.mark.parametrize("n", range(1, 31))
    def test_path_closed_form(self, n):
        """E(P_n) from the cosine sum."""
        assert energy_eigen(build_path(n)).value == pytest.approx(path_energy_closed(n), abs=1e-10)

    def test_path_closed_form_domain(self):
        """n must be positive."""
        with pytest.raises(FamilyParamsError):
            path_energy_closed(0)


class TestCoulsonEnergy:
    """Test the Coulson integral route."""

    def test_single_edge(self):
        """E(P_2) = 2."""
        result = energy_coulson(path_mplus(2))
        assert result.value == pytest.approx(2.0, abs=1e-10)
        assert result.method is EnergyMethod.COULSON
        assert result.evaluations > 0

    def test_edgeless(self):
        """No matchings, no energy."""
        assert energy_coulson(path_mplus(1)).value == 0.0

    @pytest.mark.parametrize("n", [3, 6, 9])
    def test_agrees_with_eigen_on_all_trees(self, n):
        """Coulson and eigen energies agree on every tree of small order."""
        for tree in enumerate_trees(n):
            coulson = energy_coulson(matching_polynomial(tree)).value
            assert coulson == pytest.approx(energy_eigen(tree).value, abs=1e-8)

    @pytest.mark.parametrize("delta,t", [(3, 3), (4, 7), (6, 5)])
    def test_agrees_on_family_members(self, delta, t):
        """Agreement on T_a and T_b."""
        params = FamilyParams(delta, t)
        for tree in (build_Ta(params), build_Tb(params)):
            coulson = energy_of_tree(tree, EnergyMethod.COULSON)
            eigen = energy_of_tree(tree, EnergyMethod.EIGEN)
            assert coulson.value == pytest.approx(eigen.value, abs=1e-8)

    def test_long_path_no_overflow(self):
        """m+ of a 300-vertex path is far beyond float range, the energy is not."""
        result = energy_coulson(path_mplus(300))
        assert result.value == pytest.approx(path_energy_closed(300), abs=1e-6)


class TestNumerics:
    """Test the quadrature and eigenvalue helpers."""

    def test_integrate(self):
        """Polynomials integrate exactly."""
        result = integrate(lambda x: x * x, 0.0, 1.0, 1e-12, 1e-12, 50)
        assert result.value == pytest.approx(1.0 / 3.0)
        assert result.evaluations > 0

    def test_integrate_empty_interval(self):
        """A reversed or empty interval contributes nothing."""
        assert integrate(math.exp, 1.0, 1.0, 1e-12, 1e-12, 50).value == 0.0

    def test_subdivision_limit(self):
        """Running out of subintervals is fatal."""
        with pytest.raises(QuadratureError):
            integrate(lambda x: math.sin(100.0 * x), 0.0, 10.0, 1e-14, 1e-14, 1)

    def test_eigenvalues_match_numpy(self):
        """Householder + QL agree with LAPACK on a random symmetric matrix."""
        rng = np.random.default_rng(7)
        a = rng.normal(size=(12, 12))
        matrix = a + a.T
        ours = np.sort(symmetric_eigenvalues(matrix))
        np.testing.assert_allclose(ours, np.linalg.eigvalsh(matrix), atol=1e-10)

    def test_shape_errors(self):
        """Non-square matrices and short bands are refused."""
        with pytest.raises(MatrixShapeError):
            tridiagonalize(np.zeros((2, 3)))
        with pytest.raises(MatrixShapeError):
            tridiagonal_eigenvalues([1.0, 2.0, 3.0], [0.5])

    def test_ordered_map_serial(self):
        """One worker maps in-process, order preserved."""
        assert ordered_map(abs, [-3, 1, -2]) == [3, 1, 2]

    def test_ordered_map_pool(self):
        """A process pool returns results in input order."""
        assert ordered_map(abs, range(-3, 3), workers=2) == [3, 2, 1, 0, 1, 2]

    def test_round_floats(self):
        """Nested floats keep 12 significant digits; NaN turns into null, other values pass through."""
        payload = {"margin": 0.04441819861217582, "rows": [(6.972733779997037e-14, float("nan"))], "t": 3, "ok": True}
        assert round_floats(payload) == {"margin": 0.0444181986122, "rows": [[6.97273378e-14, None]], "t": 3, "ok": True}


class TestConfig:
    """Test configuration validation and the ENERGY_TOL override."""

    def test_defaults(self, monkeypatch):
        """Default tolerances."""
        monkeypatch.delenv("ENERGY_TOL", raising=False)
        cfg = QuadratureConfig.from_env()
        assert cfg.abs_tol == 1e-12
        assert cfg.max_subdivisions == 200

    def test_env_override(self, monkeypatch):
        """ENERGY_TOL replaces the absolute tolerance."""
        monkeypatch.setenv("ENERGY_TOL", "1e-9")
        assert QuadratureConfig.from_env().abs_tol == 1e-9

    def test_env_invalid(self, monkeypatch):
        """A non-numeric ENERGY_TOL is a configuration error."""
        monkeypatch.setenv("ENERGY_TOL", "tight")
        with pytest.raises(InvalidConfigError):
            QuadratureConfig.from_env()

    def test_tightened(self):
        """Escalation divides the absolute tolerance."""
        assert QuadratureConfig().tightened(1e3).abs_tol == pytest.approx(1e-15)

    @pytest.mark.parametrize(
        "overrides",
        [{"abs_tol": 0.0}, {"max_subdivisions": 0}, {"split_point": -1.0}, {"series_cutoff": 2.0}],
    )
    def test_invalid_quadrature(self, overrides):
        """Out-of-range quadrature settings are rejected."""
        with pytest.raises(InvalidConfigError):
            QuadratureConfig(**overrides)

    def test_enumeration_cap_bounded(self):
        """The enumeration cap cannot exceed the hard cap."""
        with pytest.raises(InvalidConfigError):
            Config(enumeration_cap=17)

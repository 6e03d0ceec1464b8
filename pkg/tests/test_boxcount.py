"""
Tests para el conteo de cajas (dimensión de Minkowski)
"""

import math

import numpy as np
import pytest

from src.errors import CellIndexOverflowException, ConfigurationException, DegenerateDataException, SaturatedCurveException
from src.estimators.boxcount import (
    compare_axis_blocks,
    count_occupied,
    estimate_minkowski,
    fit_linear_region,
    fit_loglog_window,
    geometric_radii,
    sweep,
)
from src.models.box_count import BoxCountCurve, CurveEntry
from src.models.configs import MinkowskiConfig
from src.models.point_cloud import PointCloud, RandomSource


def exact_line_curve(slope: int, entries: int) -> BoxCountCurve:
    """Curva con r = 2^-k y N(r) = 2^(slope*k): log N = slope * (-log r)"""
    n_points = 2 ** (slope * entries)
    return BoxCountCurve(
        entries=[CurveEntry(r=2.0 ** -k, n=2 ** (slope * k)) for k in range(entries)],
        n_points=n_points,
        grid_anchor=[0.0]
    )


class TestCountOccupied:
    """Tests para count_occupied"""

    def setup_method(self):
        """Setup: dos puntos en la diagonal"""
        self.cloud = PointCloud([[0.1, 0.1], [0.9, 0.9]])

    def test_two_cells(self):
        """Test: r=0.5 separa los puntos en (0,0) y (1,1)"""
        assert count_occupied(self.cloud, 0.5, [0.0, 0.0]) == 2

    def test_one_cell(self):
        """Test: r=1 los reúne en la celda (0,0)"""
        assert count_occupied(self.cloud, 1.0, [0.0, 0.0]) == 1

    def test_negative_cells(self):
        """Test: Índices negativos respecto del ancla"""
        cloud = PointCloud([[-0.5, 0.0], [0.5, 0.0], [-0.4, 0.0]])
        assert count_occupied(cloud, 1.0, [0.0, 0.0]) == 2

    def test_invalid_radius(self):
        """Test: r <= 0"""
        with pytest.raises(ConfigurationException):
            count_occupied(self.cloud, 0.0, [0.0, 0.0])

    def test_anchor_dimension(self):
        """Test: El ancla debe tener m componentes"""
        with pytest.raises(ConfigurationException):
            count_occupied(self.cloud, 1.0, [0.0])

    def test_overflow(self):
        """Test: Índice de celda fuera de int64"""
        cloud = PointCloud([[0.0], [1e10]])
        with pytest.raises(CellIndexOverflowException):
            count_occupied(cloud, 1e-10, [0.0])

    def test_segment_counts_dyadic(self):
        """Test: Segmento uniforme ocupa 2^k celdas de lado 2^-k"""
        t = RandomSource(seed=3).generator().random(10000)
        cloud = PointCloud(np.column_stack((t, np.zeros_like(t))))
        for k in range(1, 9):
            assert count_occupied(cloud, 2.0 ** -k, [0.0, 0.0]) == 2 ** k

    def test_translation_covariance(self):
        """Test: Trasladar puntos y ancla no cambia el conteo"""
        grid = RandomSource(seed=5).generator().integers(0, 64, size=(500, 3)) * 0.25
        shift = np.array([8.0, -16.0, 32.0])
        base = PointCloud(grid)
        moved = PointCloud(grid + shift)
        for r in (0.25, 0.5, 1.0, 2.0):
            assert count_occupied(base, r, [0.0, 0.0, 0.0]) == count_occupied(moved, r, shift)

    def test_workers_do_not_change_count(self):
        """Test: Resultado idéntico con distinta cantidad de workers"""
        cloud = PointCloud(RandomSource(seed=9).generator().random((3000, 4)))
        anchor = cloud.points.min(axis=0)
        for r in (0.5, 0.1, 0.02):
            assert count_occupied(cloud, r, anchor, workers=1) == count_occupied(cloud, r, anchor, workers=4)

    def test_bounds(self):
        """Test: 1 <= N(r) <= N"""
        cloud = PointCloud(RandomSource(seed=1).generator().random((200, 2)))
        for r in (10.0, 0.3, 1e-6):
            count = count_occupied(cloud, r, [0.0, 0.0])
            assert 1 <= count <= 200


class TestSweep:
    """Tests para el barrido geométrico"""

    def test_geometric_radii(self):
        """Test: r_max=1, r_min=0.25, steps=3 -> {1, 0.5, 0.25}"""
        assert geometric_radii(1.0, 0.25, 3) == [1.0, 0.5, 0.25]

    def test_dyadic_radii_exact(self):
        """Test: Barrido diádico produce potencias de 2 exactas"""
        radii = geometric_radii(1.0, 2.0 ** -10, 11)
        assert radii == [2.0 ** -k for k in range(11)]

    def test_radii_invalid(self):
        """Test: r_min >= r_max"""
        with pytest.raises(ConfigurationException):
            geometric_radii(1.0, 2.0, 10)

    def test_sweep_requires_eight_steps(self):
        """Test: steps >= 8"""
        cloud = PointCloud([[0.0], [1.0]])
        with pytest.raises(ConfigurationException):
            sweep(cloud, 1.0, 0.1, 7)

    def test_sweep_reaches_saturation(self):
        """Test: Con r_min pequeño la curva llega a N(r) = N"""
        cloud = PointCloud(RandomSource(seed=2).generator().random((300, 2)))
        curve = sweep(cloud, 1.0, 1e-6, 16)
        assert curve.counts[-1] == 300
        assert curve.r_saturation_hint is not None
        assert curve.counts[curve.radii.index(curve.r_saturation_hint)] == 300
        assert curve.grid_anchor == [float(v) for v in cloud.points.min(axis=0)]

    def test_dyadic_sweep_monotone(self):
        """Test: Con grillas anidadas N(r) no decrece al bajar r"""
        cloud = PointCloud(RandomSource(seed=4).generator().random((2000, 3)))
        curve = sweep(cloud, 1.0, 2.0 ** -9, 10)
        assert all(b >= a for a, b in zip(curve.counts, curve.counts[1:]))

    def test_sweep_independent_of_workers(self):
        """Test: Misma curva con 1 y 3 workers"""
        cloud = PointCloud(RandomSource(seed=6).generator().random((1500, 3)))
        one = sweep(cloud, 1.0, 0.001, 12, workers=1)
        three = sweep(cloud, 1.0, 0.001, 12, workers=3)
        assert one == three

    def test_fixed_anchor(self):
        """Test: anchor_policy=fixed usa el ancla dada"""
        cloud = PointCloud([[0.1, 0.1], [0.9, 0.9]])
        curve = sweep(cloud, 1.0, 0.1, 8, anchor_policy="fixed", anchor=[0.0, 0.0])
        assert curve.grid_anchor == [0.0, 0.0]
        assert curve.counts[0] == 1


class TestFitLinearRegion:
    """Tests para el ajuste de la región lineal"""

    def test_exact_line(self):
        """Test: Curva exacta de pendiente 3"""
        fit = fit_linear_region(exact_line_curve(3, 10), min_window=5)
        assert fit.slope == pytest.approx(3.0, rel=1e-12)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
        assert fit.window == (0, 10)

    def test_exact_line_with_intercept(self):
        """Test: log N = 3 * (-log r) + 1"""
        x = np.linspace(0.0, 4.5, 10)
        y = 3.0 * x + 1.0
        fit = fit_loglog_window(x, y, np.ones(10, dtype=bool), 5)
        assert fit.slope == pytest.approx(3.0, rel=1e-12)
        assert fit.intercept == pytest.approx(1.0, abs=1e-12)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)

    def test_plateau_excluded(self):
        """Test: Las últimas 4 entradas saturadas quedan fuera de la ventana"""
        n_points = 4 ** 8
        counts = [4 ** k for k in range(8)] + [n_points] * 4
        curve = BoxCountCurve(
            entries=[CurveEntry(r=2.0 ** -k, n=n) for k, n in enumerate(counts)],
            n_points=n_points,
            grid_anchor=[0.0]
        )
        fit = fit_linear_region(curve, min_window=5)
        assert fit.window[1] <= 8
        assert fit.slope == pytest.approx(2.0, rel=1e-12)

    def test_fully_saturated(self):
        """Test: Sin ventana admisible"""
        curve = BoxCountCurve(
            entries=[CurveEntry(r=2.0 ** -k, n=10) for k in range(8)],
            n_points=10,
            grid_anchor=[0.0]
        )
        with pytest.raises(SaturatedCurveException) as error:
            fit_linear_region(curve, min_window=5)
        assert str(error.value) == "curve fully saturated; increase r_max or reduce steps density"

    def test_min_window_lower_bound(self):
        """Test: min_window >= 4"""
        with pytest.raises(ConfigurationException):
            fit_linear_region(exact_line_curve(2, 10), min_window=3)

    def test_flat_window_has_zero_r2(self):
        """Test: Una meseta no gana la búsqueda"""
        x = np.arange(10, dtype=float)
        y = np.concatenate((np.full(5, 2.0), 2.0 + 1.5 * np.arange(1, 6)))
        fit = fit_loglog_window(x, y, np.ones(10, dtype=bool), 5)
        assert fit.window[0] >= 4
        assert fit.slope == pytest.approx(1.5, rel=1e-12)

    def test_ties_prefer_longer_window(self):
        """Test: Con r^2 = 1 en todas las ventanas gana la más larga"""
        x = np.arange(12, dtype=float)
        fit = fit_loglog_window(x, 2.0 * x, np.ones(12, dtype=bool), 5)
        assert fit.window == (0, 12)


class TestEstimateMinkowski:
    """Tests para la estimación completa"""

    def test_unit_square(self):
        """Test: Cuadrado unitario -> dimensión cercana a 2"""
        cloud = PointCloud(RandomSource(seed=11).generator().random((100000, 2)))
        estimate = estimate_minkowski(cloud)
        assert 1.8 <= estimate.dimension <= 2.2
        assert estimate.dimension == estimate.fit.slope

    def test_flags_short_region(self):
        """Test: Ventana de tamaño mínimo marca short_linear_region"""
        cloud = PointCloud(RandomSource(seed=12).generator().random((5000, 2)))
        estimate = estimate_minkowski(cloud, MinkowskiConfig(steps=8, min_window=8))
        assert estimate.fit.window_length == 8
        assert "short_linear_region" in estimate.quality_flags

    def test_identical_points(self):
        """Test: Nube sin extensión"""
        with pytest.raises(DegenerateDataException):
            estimate_minkowski(PointCloud([[1.0, 1.0], [1.0, 1.0]]))

    def test_r_min_above_default_r_max(self):
        """Test: r_min explícito por encima de la extensión"""
        cloud = PointCloud([[0.0], [1.0], [0.5]])
        with pytest.raises(ConfigurationException):
            estimate_minkowski(cloud, MinkowskiConfig(r_min=5.0))

    def test_multi_anchor(self):
        """Test: Promedio sobre varias anclas"""
        cloud = PointCloud(RandomSource(seed=13).generator().random((5000, 2)))
        estimate = estimate_minkowski(cloud, MinkowskiConfig(n_anchors=3, seed=1))
        assert len(estimate.anchor_dimensions) == 3
        assert estimate.anchor_dimensions[0] == estimate.dimension
        assert estimate.anchor_mean == pytest.approx(float(np.mean(estimate.anchor_dimensions)))
        payload = estimate.to_payload()
        assert payload["anchor_mean"] == estimate.anchor_mean

    def test_payload_schema(self):
        """Test: Esquema JSON de la curva"""
        cloud = PointCloud(RandomSource(seed=14).generator().random((2000, 2)))
        payload = estimate_minkowski(cloud).to_payload()
        assert set(payload["fit"]) == {"slope", "intercept", "r2", "window"}
        assert set(payload["entries"][0]) == {"r", "n"}
        assert len(payload["entries"]) == 32

    def test_compare_axis_blocks(self):
        """Test: Bloques first/middle/last de una nube isotrópica"""
        cloud = PointCloud(RandomSource(seed=15).generator().random((5000, 6)))
        estimates = compare_axis_blocks(cloud, 2)
        assert set(estimates) == {"first", "middle", "last"}
        for estimate in estimates.values():
            assert len(estimate.curve.grid_anchor) == 2
            assert math.isfinite(estimate.dimension)

"""
Tests para los modelos de dominio
"""

import numpy as np
import pytest
from pydantic import ValidationError

from src.errors import CloudValidationException
from src.models.box_count import BoxCountCurve, CurveEntry, MinkowskiEstimate, SlopeFit
from src.models.configs import MinkowskiConfig, ProbabilisticConfig
from src.models.dimension_scan import DimensionCandidate, DimensionScanResult
from src.models.flattening import FlatteningTransform, UniformityReport
from src.models.generator import GeneratorSpec
from src.models.neighbors import NeighborDistances
from src.models.point_cloud import AxisProjection, PointCloud, RandomSource


class TestPointCloud:
    """Tests para el modelo PointCloud"""

    def test_create_cloud(self):
        """Test: Crear nube válida"""
        cloud = PointCloud([[0.0, 1.0], [2.0, 3.0], [4.0, 5.0]], label="demo")
        assert cloud.n_points == 3
        assert cloud.ambient_dim == 2
        assert cloud.points.dtype == np.float64

    def test_points_are_read_only(self):
        """Test: La matriz queda de solo lectura"""
        cloud = PointCloud([[0.0], [1.0]])
        with pytest.raises(ValueError):
            cloud.points[0, 0] = 5.0

    def test_cloud_copies_input(self):
        """Test: Modificar el array original no altera la nube"""
        raw = np.array([[0.0, 0.0], [1.0, 1.0]])
        cloud = PointCloud(raw)
        raw[0, 0] = 9.0
        assert cloud.points[0, 0] == 0.0

    def test_single_point_rejected(self):
        """Test: N < 2 es inválido"""
        with pytest.raises(CloudValidationException):
            PointCloud([[1.0, 2.0]])

    def test_non_finite_names_row_and_column(self):
        """Test: Valor no finito informa fila y columna"""
        with pytest.raises(CloudValidationException) as error:
            PointCloud([[0.0, 1.0], [2.0, np.nan]])
        assert error.value.row == 1
        assert error.value.column == 1

    def test_vector_rejected(self):
        """Test: Un vector no es una matriz N x m"""
        with pytest.raises(CloudValidationException):
            PointCloud([1.0, 2.0, 3.0])

    def test_ragged_rows_rejected(self):
        """Test: Filas de distinta longitud"""
        with pytest.raises(CloudValidationException):
            PointCloud([[1.0, 2.0], [3.0]])

    def test_equality(self):
        """Test: Igualdad por coordenadas y etiqueta"""
        a = PointCloud([[0.0], [1.0]], label="x")
        assert a == PointCloud([[0.0], [1.0]], label="x")
        assert a != PointCloud([[0.0], [1.0]], label="y")
        assert a != PointCloud([[0.0], [2.0]], label="x")


class TestAxisProjection:
    """Tests para el modelo AxisProjection"""

    def test_valid_projection(self):
        """Test: Índices crecientes"""
        projection = AxisProjection(axis_indices=[0, 2, 5])
        assert projection.axis_indices == [0, 2, 5]

    def test_empty_rejected(self):
        """Test: Al menos un eje"""
        with pytest.raises(ValidationError):
            AxisProjection(axis_indices=[])

    def test_non_increasing_rejected(self):
        """Test: Índices repetidos o desordenados"""
        with pytest.raises(ValidationError):
            AxisProjection(axis_indices=[2, 1])
        with pytest.raises(ValidationError):
            AxisProjection(axis_indices=[1, 1])


class TestRandomSource:
    """Tests para la fuente aleatoria"""

    def test_same_seed_same_sequence(self):
        """Test: Misma semilla => misma secuencia"""
        a = RandomSource(seed=42).generator().random(5)
        b = RandomSource(seed=42).generator().random(5)
        assert np.array_equal(a, b)

    def test_children_are_independent_and_deterministic(self):
        """Test: Flujos hijos por nombre"""
        source = RandomSource(seed=7)
        first = source.child("directions").random(4)
        again = source.child("directions").random(4)
        other = source.child("anchors").random(4)
        assert np.array_equal(first, again)
        assert not np.array_equal(first, other)

    def test_seed_range(self):
        """Test: Semilla fuera de 64 bits"""
        with pytest.raises(ValidationError):
            RandomSource(seed=-1)
        with pytest.raises(ValidationError):
            RandomSource(seed=2 ** 64)


class TestBoxCountModels:
    """Tests para curvas y ajustes"""

    def test_curve_requires_decreasing_r(self):
        """Test: r estrictamente decreciente"""
        with pytest.raises(ValidationError):
            BoxCountCurve(
                entries=[CurveEntry(r=0.5, n=2), CurveEntry(r=1.0, n=1)],
                n_points=4,
                grid_anchor=[0.0]
            )

    def test_curve_counts_bounded_by_n(self):
        """Test: 1 <= N(r) <= N"""
        with pytest.raises(ValidationError):
            BoxCountCurve(entries=[CurveEntry(r=1.0, n=5)], n_points=4, grid_anchor=[0.0])

    def test_slope_fit_serializes_r2(self):
        """Test: El ajuste se exporta con la clave r2"""
        fit = SlopeFit(slope=2.0, intercept=0.5, r_squared=0.99, window=(1, 6))
        data = fit.model_dump(by_alias=True)
        assert data["r2"] == 0.99
        assert fit.window_length == 5

    def test_estimate_dimension_equals_slope(self):
        """Test: dimension debe ser la pendiente"""
        curve = BoxCountCurve(entries=[CurveEntry(r=1.0, n=1)], n_points=2, grid_anchor=[0.0])
        fit = SlopeFit(slope=1.5, intercept=0.0, r_squared=1.0, window=(0, 5))
        with pytest.raises(ValidationError):
            MinkowskiEstimate(curve=curve, fit=fit, dimension=1.4)
        estimate = MinkowskiEstimate(curve=curve, fit=fit, dimension=1.5)
        payload = estimate.to_payload()
        assert payload["dimension"] == 1.5
        assert payload["fit"]["r2"] == 1.0
        assert "anchor_dimensions" not in payload


class TestConfigs:
    """Tests para las configuraciones"""

    def test_minkowski_defaults(self):
        """Test: Valores por defecto"""
        config = MinkowskiConfig()
        assert config.steps == 32
        assert config.min_window == 5
        assert config.anchor_policy == "data_min"

    def test_minkowski_r_min_above_r_max(self):
        """Test: r_min >= r_max es inválido"""
        with pytest.raises(ValidationError):
            MinkowskiConfig(r_max=1.0, r_min=2.0)

    def test_minkowski_limits(self):
        """Test: steps >= 8 y min_window >= 4"""
        with pytest.raises(ValidationError):
            MinkowskiConfig(steps=7)
        with pytest.raises(ValidationError):
            MinkowskiConfig(min_window=3)

    def test_fixed_anchor_required(self):
        """Test: anchor_policy=fixed sin ancla"""
        with pytest.raises(ValidationError):
            MinkowskiConfig(anchor_policy="fixed")

    def test_probabilistic_range(self):
        """Test: n_min <= n_max"""
        with pytest.raises(ValidationError):
            ProbabilisticConfig(n_min=5, n_max=4)


class TestDimensionScanModels:
    """Tests para los resultados del barrido"""

    def _candidate(self, n: int) -> DimensionCandidate:
        return DimensionCandidate(n=n, a1=1.0, a2=1.0, a1_squared=1.0, moment_ratio=1.0, ks=0.1, lambda_hat=1.0)

    def test_contiguous_range_required(self):
        """Test: Los candidatos cubren un rango contiguo"""
        with pytest.raises(ValidationError):
            DimensionScanResult(candidates=[self._candidate(1), self._candidate(3)])

    def test_selected_must_be_candidate(self):
        """Test: selected_n dentro del rango"""
        with pytest.raises(ValidationError):
            DimensionScanResult(candidates=[self._candidate(1)], selected_n=2)

    def test_unknown_warning(self):
        """Test: Solo advertencias conocidas"""
        with pytest.raises(ValidationError):
            DimensionScanResult(candidates=[self._candidate(1)], warnings=["otra"])

    def test_payload_arrays(self):
        """Test: Arrays por n en el payload"""
        result = DimensionScanResult(
            candidates=[self._candidate(1), self._candidate(2)],
            selected_n=2,
            confidence="high"
        )
        payload = result.to_payload()
        assert payload["n"] == [1, 2]
        assert payload["ks"] == [0.1, 0.1]
        assert payload["selected_n"] == 2
        assert result.candidate(2).n == 2


class TestNeighborAndFlatteningModels:
    """Tests para distancias y aplanamiento"""

    def test_neighbor_distances_summary(self):
        """Test: global_min y zero_fraction derivados"""
        distances = NeighborDistances.from_distances(np.array([0.0, 0.5, 0.5, 2.0]))
        assert distances.global_min == 0.0
        assert distances.zero_fraction == 0.25
        assert distances.n_points == 4

    def test_ecdf_evaluation(self):
        """Test: F(t) = #{pool <= t} / |pool|"""
        transform = FlatteningTransform(sorted_pool=np.array([0.0, 1.0, 1.0, 3.0]))
        values = transform.evaluate([-1.0, 0.0, 1.0, 2.0, 3.0])
        assert values.tolist() == [0.0, 0.25, 0.75, 0.75, 1.0]

    def test_uniformity_report_consistency(self):
        """Test: passed equivale a max_ks <= threshold"""
        UniformityReport(n_directions=10, max_ks=0.01, threshold=0.05, passed=True)
        with pytest.raises(ValidationError):
            UniformityReport(n_directions=10, max_ks=0.1, threshold=0.05, passed=True)


class TestGeneratorSpec:
    """Tests para la descripción de datasets"""

    def test_swiss_roll_dimensions(self):
        """Test: Swiss Roll requiere d=2, D=3"""
        GeneratorSpec(kind="swiss_roll", intrinsic_dim=2, ambient_dim=3, n_samples=10)
        with pytest.raises(ValidationError):
            GeneratorSpec(kind="swiss_roll", intrinsic_dim=2, ambient_dim=4, n_samples=10)

    def test_intrinsic_above_ambient(self):
        """Test: d <= D"""
        with pytest.raises(ValidationError):
            GeneratorSpec(kind="linear_embed", intrinsic_dim=5, ambient_dim=3, n_samples=10)

    def test_identity_requires_square(self):
        """Test: identity_embedding solo con d = D"""
        with pytest.raises(ValidationError):
            GeneratorSpec(kind="linear_embed", intrinsic_dim=2, ambient_dim=3, n_samples=10, identity_embedding=True)

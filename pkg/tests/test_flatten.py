"""
Tests para la verificación de simetría y el aplanamiento
"""

import numpy as np
import pytest
from scipy.stats import kstest

from src.errors import ConfigurationException, DegenerateDataException
from src.estimators.flatten import apply_flattening, build_flattening, check_rotational_symmetry, projection_ks
from src.models.point_cloud import PointCloud, RandomSource
from src.synth.generators import gen_sphere_surface


class TestFlatteningTransform:
    """Tests para build_flattening y apply_flattening"""

    def test_ecdf_one_dimension(self):
        """Test: Valores {1,2,3,4}"""
        transform = build_flattening(PointCloud([[1.0], [2.0], [3.0], [4.0]]))
        assert transform.pool_size == 4
        assert transform.evaluate([1.0, 2.5, 4.0]).tolist() == [0.25, 0.5, 1.0]

    def test_below_pool_minimum(self):
        """Test: F(t) = 0 debajo del mínimo y 1 arriba del máximo"""
        transform = build_flattening(PointCloud([[1.0], [2.0]]))
        assert transform.evaluate(-np.inf) == 0.0
        assert transform.evaluate(np.inf) == 1.0

    def test_pool_across_coordinates(self):
        """Test: [[1,3],[2,4]] agrupa {1,2,3,4}"""
        transform = build_flattening(PointCloud([[1.0, 3.0], [2.0, 4.0]]))
        assert transform.sorted_pool.tolist() == [1.0, 2.0, 3.0, 4.0]
        assert transform.evaluate(2.5) == 0.5

    def test_apply_own_transform(self):
        """Test: [[1],[2],[3],[4]] -> cuartiles"""
        cloud = PointCloud([[1.0], [2.0], [3.0], [4.0]])
        flattened = apply_flattening(cloud, build_flattening(cloud))
        assert flattened.points.ravel().tolist() == [0.25, 0.5, 0.75, 1.0]

    def test_range_and_order_preserved(self):
        """Test: Resultado en [0,1], orden por coordenada conservado"""
        cloud = PointCloud(RandomSource(seed=1).generator().standard_normal((500, 3)))
        flattened = apply_flattening(cloud, build_flattening(cloud))
        twice = apply_flattening(flattened, build_flattening(flattened))
        for points in (flattened.points, twice.points):
            assert points.min() >= 0.0 and points.max() <= 1.0
        for j in range(3):
            order = np.argsort(cloud.points[:, j], kind="stable")
            assert np.all(np.diff(flattened.points[order, j]) >= 0)

    def test_symmetry_waived_recorded(self):
        """Test: Se registra que la simetría se omitió"""
        transform = build_flattening(PointCloud([[0.0], [1.0]]), symmetry_waived=True)
        assert transform.symmetry_waived is True

    def test_gaussian_uniformization(self):
        """Test: Gaussiana en R^20 -> cada coordenada uniforme en [0,1]"""
        cloud = PointCloud(RandomSource(seed=2).generator().standard_normal((10000, 20)))
        flattened = apply_flattening(cloud, build_flattening(cloud))
        for j in range(20):
            assert kstest(flattened.points[:, j], "uniform").statistic < 0.02


class TestRotationalSymmetry:
    """Tests para check_rotational_symmetry"""

    def test_sphere_passes(self):
        """Test: Esfera uniforme en R^10 pasa la verificación"""
        cloud = gen_sphere_surface(10, 10000, RandomSource(seed=3))
        report = check_rotational_symmetry(cloud, n_directions=100, threshold=0.05, rng=RandomSource(seed=4))
        assert report.passed
        assert report.metadata["reference"] == "first_direction"
        assert report.metadata["norm_mean"] == pytest.approx(1.0, abs=0.01)

    def test_segment_fails(self):
        """Test: Segmento sobre el eje 1 en R^10 no es simétrico"""
        t = RandomSource(seed=5).generator().random(10000)
        points = np.zeros((10000, 10))
        points[:, 0] = t
        report = check_rotational_symmetry(PointCloud(points), n_directions=100, rng=RandomSource(seed=6))
        assert not report.passed
        assert report.max_ks > 0.05

    def test_equal_directions(self):
        """Test: Dos direcciones iguales -> K-S nulo"""
        centered = RandomSource(seed=7).generator().standard_normal((300, 3))
        direction = np.array([[0.6, 0.8, 0.0], [0.6, 0.8, 0.0]])
        assert projection_ks(centered, direction) == [0.0, 0.0]

    def test_per_direction_kept(self):
        """Test: K-S por dirección con la referencia en 0"""
        cloud = gen_sphere_surface(3, 2000, RandomSource(seed=8))
        report = check_rotational_symmetry(cloud, n_directions=10, keep_per_direction=True)
        assert len(report.per_direction_ks) == 10
        assert report.per_direction_ks[0] == 0.0
        assert report.max_ks == max(report.per_direction_ks)

    def test_deterministic_across_workers(self):
        """Test: Mismo reporte con distinta cantidad de workers"""
        cloud = gen_sphere_surface(5, 2000, RandomSource(seed=9))
        one = check_rotational_symmetry(cloud, n_directions=200, keep_per_direction=True, workers=1)
        four = check_rotational_symmetry(cloud, n_directions=200, keep_per_direction=True, workers=4)
        assert one == four

    def test_identical_points(self):
        """Test: Nube degenerada"""
        with pytest.raises(DegenerateDataException):
            check_rotational_symmetry(PointCloud([[1.0, 1.0], [1.0, 1.0]]))

    def test_too_few_directions(self):
        """Test: n_directions >= 2"""
        with pytest.raises(ConfigurationException):
            check_rotational_symmetry(PointCloud([[0.0, 1.0], [1.0, 0.0]]), n_directions=1)

"""
Verificación de simetría rotacional y transformación de aplanamiento.
"""

from typing import List, Optional

import numpy as np
from scipy.stats import ks_2samp

from src.core.parallel import index_chunks, map_ordered, resolve_workers
from src.errors import ConfigurationException, DegenerateDataException
from src.models.flattening import FlatteningTransform, UniformityReport
from src.models.point_cloud import PointCloud, RandomSource
from src.utils.logging import setup_logger

logger = setup_logger(__name__)

DIRECTION_BATCH = 64


def random_directions(n_directions: int, ambient_dim: int, rng: RandomSource) -> np.ndarray:
    """
    Vectores unitarios uniformes en la esfera (gaussianas normalizadas).

    Returns:
        np.ndarray: Matriz n_directions x ambient_dim
    """
    gaussians = rng.child("directions").standard_normal((n_directions, ambient_dim))
    return gaussians / np.linalg.norm(gaussians, axis=1, keepdims=True)


def projection_ks(centered: np.ndarray, directions: np.ndarray, workers: int = 1) -> List[float]:
    """
    K-S de dos muestras entre cada proyección y la de la primera dirección.

    Args:
        centered: Puntos ya centrados (N x m)
        directions: Direcciones unitarias (k x m); la fila 0 es la referencia
        workers: Workers para procesar lotes de direcciones

    Returns:
        List[float]: Estadístico por dirección (el de la referencia es 0)
    """
    reference = centered @ directions[0]

    def batch_ks(rows: np.ndarray) -> List[float]:
        projections = centered @ directions[rows].T
        return [
            float(ks_2samp(projections[:, i], reference, method="asymp").statistic)
            for i in range(projections.shape[1])
        ]

    n_batches = max(1, directions.shape[0] // DIRECTION_BATCH)
    batches = index_chunks(directions.shape[0], n_batches)
    return [value for batch in map_ordered(batch_ks, batches, workers) for value in batch]


def check_rotational_symmetry(
    cloud: PointCloud,
    n_directions: int = 1000,
    threshold: float = 0.05,
    rng: Optional[RandomSource] = None,
    keep_per_direction: bool = False,
    workers: Optional[int] = None
) -> UniformityReport:
    """
    Comprueba que las proyecciones de la nube centrada sobre direcciones
    aleatorias compartan una misma distribución.

    La referencia es la proyección sobre la primera dirección sorteada.
    Además se resume la distribución de normas ||x - media||, que para datos
    uniformes en alta dimensión se concentra cerca de la esfera frontera.

    Args:
        cloud: Nube de puntos (se centra restando la media)
        n_directions: Direcciones aleatorias (>= 2)
        threshold: Cota de aprobación del K-S máximo
        rng: Fuente aleatoria (por defecto semilla 0)
        keep_per_direction: Incluir el K-S de cada dirección en el reporte
        workers: Workers

    Returns:
        UniformityReport: passed = max_ks <= threshold

    Raises:
        DegenerateDataException: Si todos los puntos son idénticos
    """
    if n_directions < 2:
        raise ConfigurationException("n_directions debe ser al menos 2")
    rng = rng or RandomSource()
    centered = cloud.points - cloud.points.mean(axis=0)
    norms = np.linalg.norm(centered, axis=1)
    if not norms.any():
        raise DegenerateDataException("Nube degenerada: todos los puntos son idénticos")

    directions = random_directions(n_directions, cloud.ambient_dim, rng)
    per_direction = projection_ks(centered, directions, resolve_workers(workers))
    max_ks = max(per_direction)

    report = UniformityReport(
        n_directions=n_directions,
        max_ks=max_ks,
        threshold=threshold,
        passed=max_ks <= threshold,
        per_direction_ks=per_direction if keep_per_direction else None,
        metadata={
            "reference": "first_direction",
            "norm_mean": float(norms.mean()),
            "norm_std": float(norms.std()),
            "seed": rng.seed,
            "flattening_waived": False,
        }
    )
    logger.info("Simetría rotacional: max_ks=%.4f umbral=%.4f (%d direcciones)", max_ks, threshold, n_directions)
    if not report.passed:
        logger.warning("La nube no es rotacionalmente simétrica: max_ks=%.4f > %.4f", max_ks, threshold)
    return report


def build_flattening(cloud: PointCloud, symmetry_waived: bool = False) -> FlatteningTransform:
    """
    Construye la ECDF común agrupando las N*m coordenadas.

    Args:
        cloud: Nube (se asume simetría rotacional verificada)
        symmetry_waived: Registrar que la verificación se omitió

    Returns:
        FlatteningTransform: F(t) = #{pool <= t} / (N*m)
    """
    pool = np.sort(cloud.points, axis=None)
    pool.setflags(write=False)
    logger.info("Aplanamiento: pool de %d coordenadas", pool.shape[0])
    return FlatteningTransform(sorted_pool=pool, symmetry_waived=symmetry_waived)


def apply_flattening(cloud: PointCloud, transform: FlatteningTransform) -> PointCloud:
    """Reemplaza cada coordenada x por F(x); el resultado queda en [0, 1]"""
    return cloud.with_points(transform.evaluate(cloud.points))

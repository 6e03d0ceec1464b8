"""
Dimensión de correlación (Grassberger-Procaccia) como método de comparación.

rho(r) es la fracción de pares no ordenados a distancia estrictamente
menor que r. Los conteos de pares son enteros y se suman por bloques, así
el resultado no depende del número de workers.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial.distance import cdist

from src.core.parallel import map_ordered, resolve_workers
from src.errors import ConfigurationException, DegenerateDataException
from src.estimators.boxcount import fit_loglog_window, geometric_radii
from src.estimators.neighbors import squared_distances
from src.models.box_count import CorrelationCurve, CorrelationEntry
from src.models.configs import CorrelationConfig
from src.models.point_cloud import PointCloud, RandomSource
from src.utils.logging import setup_logger

logger = setup_logger(__name__)

PAIR_BLOCK = 256
# Elementos float64 por bloque de distancias (32 MiB)
PAIR_BLOCK_ELEMENTS = 1 << 22
MAX_CONCURRENT_PAIR_BLOCKS = 8
RADIUS_SAMPLE_PAIRS = 20000
RADIUS_QUANTILE = 0.1
DEFAULT_DECADES_LOG2 = 6
EMPTY_SWEEP_MESSAGE = "r range below smallest pairwise distance"


def count_pairs_below(
    points: np.ndarray,
    radii: Sequence[float],
    workers: int = 1
) -> np.ndarray:
    """
    Cantidad de pares i < j con ||X_i - X_j|| < r para cada r.

    Args:
        points: Matriz N x m
        radii: Radios (cualquier orden)
        workers: Workers sobre bloques de filas

    Returns:
        np.ndarray: Conteos int64 alineados con radii
    """
    radii = np.asarray(radii, dtype=np.float64)
    order = np.argsort(radii, kind="stable")
    sorted_radii = radii[order]
    n_points = points.shape[0]
    block = max(1, min(PAIR_BLOCK, PAIR_BLOCK_ELEMENTS // max(n_points, 1)))

    def block_counts(start: int) -> np.ndarray:
        stop = min(start + block, n_points)
        distances = cdist(points[start:stop], points[start:])
        counts = np.zeros(sorted_radii.shape[0], dtype=np.int64)
        for k in range(stop - start):
            row = np.sort(distances[k, k + 1:])
            # side="left": d == r no cuenta
            counts += np.searchsorted(row, sorted_radii, side="left")
        return counts

    workers = min(workers, MAX_CONCURRENT_PAIR_BLOCKS)
    partial = map_ordered(block_counts, range(0, n_points, block), workers)
    totals = np.sum(partial, axis=0, dtype=np.int64)
    counts = np.empty_like(totals)
    counts[order] = totals
    return counts


def correlation_integral(cloud: PointCloud, r: float) -> float:
    """
    rho(r) = 2 / (N (N - 1)) * #{pares a distancia < r}.

    Args:
        cloud: Nube con N >= 2
        r: Radio (> 0)

    Returns:
        float: Fracción exacta de pares en [0, 1]
    """
    if not r > 0:
        raise ConfigurationException(f"El radio debe ser positivo, se recibió {r}")
    total_pairs = cloud.n_points * (cloud.n_points - 1) // 2
    pairs = int(count_pairs_below(cloud.points, [r])[0])
    return pairs / total_pairs


def _sample_pair_distances(cloud: PointCloud, rng: np.random.Generator, size: int) -> np.ndarray:
    """Distancias de pares (i, j), i != j, elegidos al azar con la semilla dada"""
    first = rng.integers(0, cloud.n_points, size=size)
    second = rng.integers(0, cloud.n_points - 1, size=size)
    second = second + (second >= first)
    return np.sqrt(squared_distances(cloud.points[first], cloud.points[second]))


def resolve_correlation_radii(cloud: PointCloud, config: CorrelationConfig) -> Tuple[float, float]:
    """
    r_max por defecto: cuantil 10% de las distancias entre pares (muestra
    sembrada de hasta 20000 pares); r_min por defecto: r_max / 2^6.
    """
    r_max = config.r_max
    if r_max is None:
        rng = RandomSource(seed=config.seed).child("pairs")
        total_pairs = cloud.n_points * (cloud.n_points - 1) // 2
        sample = _sample_pair_distances(cloud, rng, min(RADIUS_SAMPLE_PAIRS, total_pairs))
        r_max = float(np.quantile(sample, RADIUS_QUANTILE))
        if r_max == 0.0:
            raise DegenerateDataException(EMPTY_SWEEP_MESSAGE)
    r_min = config.r_min if config.r_min is not None else r_max / 2 ** DEFAULT_DECADES_LOG2
    if r_min >= r_max:
        raise ConfigurationException(f"r_min ({r_min}) debe ser menor que r_max ({r_max})")
    return r_max, r_min


def estimate_correlation_dimension(
    cloud: PointCloud,
    config: Optional[CorrelationConfig] = None,
    workers: Optional[int] = None
) -> CorrelationCurve:
    """
    Pendiente de la región lineal de log rho(r) contra log r.

    Para N > max_points la suma de pares se hace sobre una submuestra
    uniforme sembrada. Las entradas con rho = 0 o rho = 1 no entran en la
    búsqueda de ventana.

    Raises:
        DegenerateDataException: Si rho = 0 en todo el barrido
        SaturatedCurveException: Si no queda ninguna ventana admisible
    """
    config = config or CorrelationConfig()
    workers = resolve_workers(workers)

    subsampled = cloud.n_points > config.max_points
    working = cloud
    if subsampled:
        rng = RandomSource(seed=config.seed).child("subsample")
        rows = np.sort(rng.choice(cloud.n_points, size=config.max_points, replace=False))
        working = cloud.with_points(cloud.points[rows])
        logger.info("Integral de correlación sobre %d de %d puntos", config.max_points, cloud.n_points)

    r_max, r_min = resolve_correlation_radii(working, config)
    radii: List[float] = geometric_radii(r_max, r_min, config.steps)[::-1]
    pairs = count_pairs_below(working.points, radii, workers)
    total_pairs = working.n_points * (working.n_points - 1) // 2
    rhos = [int(p) / total_pairs for p in pairs]

    if not any(rhos):
        raise DegenerateDataException(EMPTY_SWEEP_MESSAGE)

    rho_array = np.array(rhos, dtype=np.float64)
    admissible = (rho_array > 0) & (rho_array < 1)
    with np.errstate(divide="ignore"):
        y = np.log(rho_array)
    fit = fit_loglog_window(np.log(np.array(radii)), y, admissible, config.min_window)

    logger.info(
        "Dimensión de correlación: %.4f (r2=%.5f, r en [%g, %g], %d workers)",
        fit.slope, fit.r_squared, r_min, r_max, workers
    )
    return CorrelationCurve(
        entries=[CorrelationEntry(r=r, rho=rho, pairs=int(p)) for r, rho, p in zip(radii, rhos, pairs)],
        fit=fit,
        n_points_used=working.n_points,
        subsampled=subsampled
    )

"""
Distancias exactas al vecino más cercano.

Todas las distancias se acumulan como suma de cuadrados en float64
recorriendo las coordenadas en orden fijo, con una única raíz al final:
la versión acelerada y la de fuerza bruta producen los mismos bits.
"""

from typing import List, Optional

import numpy as np
from scipy.spatial import cKDTree

from src.core.parallel import index_chunks, map_ordered, resolve_workers
from src.models.neighbors import NeighborDistances
from src.models.point_cloud import PointCloud
from src.utils.logging import setup_logger

logger = setup_logger(__name__)

NEAR_DUPLICATE_RATIO = 0.01
# candidatos del árbol por punto: el propio punto, posibles duplicados y empates
KD_CANDIDATES = 4
BRUTE_FORCE_BLOCK = 256


def squared_distances(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Distancias al cuadrado fila a fila entre a y b (misma forma k x m).

    La suma recorre las columnas en orden 0..m-1.
    """
    total = np.zeros(a.shape[0], dtype=np.float64)
    for j in range(a.shape[1]):
        diff = a[:, j] - b[:, j]
        total += diff * diff
    return total


def _pairwise_block(block: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Matriz len(block) x N de distancias al cuadrado, mismo orden de suma"""
    total = np.zeros((block.shape[0], points.shape[0]), dtype=np.float64)
    for j in range(points.shape[1]):
        diff = block[:, j][:, None] - points[:, j][None, :]
        total += diff * diff
    return total


def _near_duplicate_fraction(first: np.ndarray, second: np.ndarray, ratio: float) -> float:
    """Fracción de puntos con d1 < ratio * d2 (vecinos dependientes)"""
    flagged = np.isfinite(second) & (first < ratio * second)
    return float(np.count_nonzero(flagged)) / first.shape[0]


def nn_distances_bruteforce(
    cloud: PointCloud,
    near_duplicate_ratio: float = NEAR_DUPLICATE_RATIO
) -> NeighborDistances:
    """
    Vecino más cercano por barrido completo de pares, O(N^2 m).

    Es el oráculo contra el que se compara la versión acelerada.

    Args:
        cloud: Nube con N >= 2
        near_duplicate_ratio: Umbral d1 < ratio * d2 para casi-duplicados

    Returns:
        NeighborDistances: d_min exactas en el orden de la nube
    """
    points = cloud.points
    n_points = cloud.n_points
    first = np.empty(n_points, dtype=np.float64)
    second = np.full(n_points, np.inf, dtype=np.float64)

    for start in range(0, n_points, BRUTE_FORCE_BLOCK):
        stop = min(start + BRUTE_FORCE_BLOCK, n_points)
        squared = _pairwise_block(points[start:stop], points)
        squared[np.arange(stop - start), np.arange(start, stop)] = np.inf
        if n_points > 2:
            two = np.partition(squared, 1, axis=1)[:, :2]
            first[start:stop] = two[:, 0]
            second[start:stop] = two[:, 1]
        else:
            first[start:stop] = squared.min(axis=1)

    first = np.sqrt(first)
    second = np.sqrt(second)
    return NeighborDistances.from_distances(
        first, _near_duplicate_fraction(first, second, near_duplicate_ratio)
    )


def nn_distances(
    cloud: PointCloud,
    workers: Optional[int] = None,
    near_duplicate_ratio: float = NEAR_DUPLICATE_RATIO
) -> NeighborDistances:
    """
    Vecino más cercano exacto usando un cKDTree para podar candidatos.

    El árbol solo propone candidatos; la distancia final se recalcula con
    squared_distances (orden de suma fijo) y se toma el mínimo excluyendo
    el propio índice. El resultado coincide con nn_distances_bruteforce.

    Args:
        cloud: Nube con N >= 2
        workers: Workers (bloques de puntos consultados en paralelo)
        near_duplicate_ratio: Umbral d1 < ratio * d2 para casi-duplicados

    Returns:
        NeighborDistances: d_min exactas en el orden de la nube
    """
    points = cloud.points
    n_points = cloud.n_points
    k = min(n_points, KD_CANDIDATES)
    tree = cKDTree(points)
    workers = resolve_workers(workers)

    def solve(rows: np.ndarray) -> np.ndarray:
        _, candidates = tree.query(points[rows], k=k)
        candidates = candidates.reshape(rows.shape[0], k)
        squared = np.empty(candidates.shape, dtype=np.float64)
        for c in range(k):
            squared[:, c] = squared_distances(points[rows], points[candidates[:, c]])
        squared[candidates == rows[:, None]] = np.inf
        squared.sort(axis=1)
        return squared[:, :2]

    chunks = index_chunks(n_points, workers)
    parts: List[np.ndarray] = map_ordered(solve, chunks, workers)
    two = np.vstack(parts)
    first = np.sqrt(two[:, 0])
    second = np.sqrt(two[:, 1])

    result = NeighborDistances.from_distances(
        first, _near_duplicate_fraction(first, second, near_duplicate_ratio)
    )
    logger.info(
        "Vecinos más cercanos: N=%d, m=%d, d_min global=%g, fracción nula=%.4f, casi-duplicados=%.4f",
        n_points, cloud.ambient_dim, result.global_min, result.zero_fraction, result.near_duplicate_fraction
    )
    return result


def near_duplicate_report(distances: NeighborDistances, percentile: float = 0.1) -> List[int]:
    """
    Índices de puntos cuyo d_min está en o por debajo del percentil dado.

    Args:
        distances: Resultado de nn_distances
        percentile: Percentil en porcentaje (0.1 = 0.1%)

    Returns:
        List[int]: Índices ordenados por distancia creciente
    """
    cutoff = np.percentile(distances.d_min, percentile)
    flagged = np.flatnonzero(distances.d_min <= cutoff)
    order = np.argsort(distances.d_min[flagged], kind="stable")
    return [int(i) for i in flagged[order]]

"""
Dimensión de Minkowski para datos dispersos (conteo de cajas).

Las celdas ocupadas se cuentan recorriendo los puntos y agrupando sus
índices de celda; nunca se enumera la grilla, cuyo tamaño crece como
(1/r)^m.
"""

import math
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy.stats import linregress

from src.core.cloud_ops import axis_block, project_axes
from src.core.parallel import index_chunks, map_ordered, resolve_workers
from src.errors import (
    CellIndexOverflowException,
    ConfigurationException,
    DegenerateDataException,
    SaturatedCurveException,
)
from src.models.box_count import BoxCountCurve, CurveEntry, MinkowskiEstimate, SlopeFit
from src.models.configs import MinkowskiConfig
from src.models.point_cloud import PointCloud, RandomSource
from src.policies.quality_policy import FitQualityPolicy
from src.utils.logging import setup_logger

logger = setup_logger(__name__)

MIN_STEPS = 8
MIN_WINDOW = 4
DEFAULT_DECADES_LOG2 = 10
R2_TIE_TOLERANCE = 1e-12
# |índice| por debajo de 2^62 deja margen al cast a int64
MAX_CELL_INDEX = float(2 ** 62)


def _unique_cells(cells: np.ndarray) -> np.ndarray:
    """Filas distintas de una matriz int64, comparando la clave completa"""
    cells = np.ascontiguousarray(cells)
    keys = cells.view(np.dtype((np.void, cells.dtype.itemsize * cells.shape[1]))).ravel()
    return np.unique(keys)


def count_occupied(
    cloud: PointCloud,
    r: float,
    anchor: Sequence[float],
    workers: int = 1
) -> int:
    """
    Cuenta las celdas de lado r que contienen al menos un punto.

    La celda de un punto P es el vector floor((P - anchor) / r). Cada
    worker arma el conjunto de celdas de un bloque de puntos y los
    conjuntos se unen al final: el resultado es idéntico al secuencial.

    Args:
        cloud: Nube de puntos
        r: Lado de la celda (> 0)
        anchor: Origen de la grilla (m coordenadas)
        workers: Workers para particionar los puntos

    Returns:
        int: Número de celdas distintas ocupadas (1 <= count <= N)

    Raises:
        ConfigurationException: Si r <= 0 o el ancla no tiene m componentes
        CellIndexOverflowException: Si algún índice de celda no cabe en int64
    """
    if not r > 0:
        raise ConfigurationException(f"El lado de caja debe ser positivo, se recibió {r}")
    anchor = np.asarray(anchor, dtype=np.float64)
    if anchor.shape != (cloud.ambient_dim,):
        raise ConfigurationException(
            f"El ancla debe tener {cloud.ambient_dim} componentes, tiene {anchor.size}"
        )

    def local_cells(rows: np.ndarray) -> np.ndarray:
        scaled = np.floor((cloud.points[rows] - anchor) / r)
        if not np.isfinite(scaled).all() or np.abs(scaled).max() >= MAX_CELL_INDEX:
            raise CellIndexOverflowException(
                f"Índice de celda fuera de rango int64 para r={r!r}"
            )
        return _unique_cells(scaled.astype(np.int64))

    chunks = index_chunks(cloud.n_points, workers)
    partial = map_ordered(local_cells, chunks, workers)
    if len(partial) == 1:
        return int(partial[0].shape[0])
    return int(np.unique(np.concatenate(partial)).shape[0])


def geometric_radii(r_max: float, r_min: float, steps: int) -> List[float]:
    """
    Radios r_max * (r_min / r_max)^(k / (steps - 1)), k = 0..steps-1.

    El exponente se calcula en base 2 como (k * log2(ratio)) / (steps - 1),
    así un barrido diádico produce potencias de 2 exactas (grillas anidadas).
    """
    if not r_max > r_min > 0:
        raise ConfigurationException(
            f"Se requiere r_max > r_min > 0, se recibió r_max={r_max}, r_min={r_min}"
        )
    if steps < 2:
        raise ConfigurationException(f"steps debe ser al menos 2, se recibió {steps}")

    log2_ratio = math.log2(r_min / r_max)
    radii = [r_max * 2.0 ** ((k * log2_ratio) / (steps - 1)) for k in range(steps)]
    radii[0], radii[-1] = r_max, r_min
    return radii


def sweep(
    cloud: PointCloud,
    r_max: float,
    r_min: float,
    steps: int,
    anchor_policy: str = "data_min",
    anchor: Optional[Sequence[float]] = None,
    workers: Optional[int] = None
) -> BoxCountCurve:
    """
    Evalúa count_occupied sobre un barrido geométrico de r.

    Args:
        cloud: Nube de puntos
        r_max: Mayor lado de caja
        r_min: Menor lado de caja
        steps: Cantidad de radios (>= 8)
        anchor_policy: "data_min" (mínimo coordenada a coordenada) o "fixed"
        anchor: Origen de la grilla cuando anchor_policy = "fixed"
        workers: Workers (None: DIMEST_THREADS o núcleos disponibles)

    Returns:
        BoxCountCurve: Curva con r decreciente y la pista de saturación
    """
    if steps < MIN_STEPS:
        raise ConfigurationException(f"steps debe ser al menos {MIN_STEPS}, se recibió {steps}")
    radii = geometric_radii(r_max, r_min, steps)

    if anchor_policy == "data_min":
        grid_anchor = cloud.points.min(axis=0)
    elif anchor_policy == "fixed":
        if anchor is None:
            raise ConfigurationException("anchor_policy=fixed requiere un ancla")
        grid_anchor = np.asarray(anchor, dtype=np.float64)
    else:
        raise ConfigurationException(f"Política de ancla desconocida: {anchor_policy}")

    workers = resolve_workers(workers)
    counts = map_ordered(lambda r: count_occupied(cloud, r, grid_anchor), radii, workers)

    decreases = [i for i in range(1, len(counts)) if counts[i] < counts[i - 1]]
    if decreases:
        # posible con grillas no anidadas y pocos puntos por celda
        logger.info("El conteo decrece en %d pasos del barrido (grillas no anidadas)", len(decreases))

    saturated = [r for r, n in zip(radii, counts) if n == cloud.n_points]
    logger.info(
        "Barrido de %d radios en [%g, %g] con %d workers; saturación en r=%s",
        steps, r_min, r_max, workers, saturated[0] if saturated else None
    )
    return BoxCountCurve(
        entries=[CurveEntry(r=r, n=n) for r, n in zip(radii, counts)],
        n_points=cloud.n_points,
        grid_anchor=[float(a) for a in grid_anchor],
        r_saturation_hint=saturated[0] if saturated else None
    )


def fit_loglog_window(
    x: np.ndarray,
    y: np.ndarray,
    admissible: np.ndarray,
    min_window: int
) -> SlopeFit:
    """
    Busca la ventana contigua más lineal de y contra x.

    Solo se consideran ventanas de longitud >= min_window formadas
    exclusivamente por entradas admisibles. Gana el mayor r^2; los empates
    (tolerancia 1e-12) los gana la ventana más larga y luego la que empieza
    antes. Una ventana con y constante tiene r^2 = 0.

    Raises:
        SaturatedCurveException: Si no existe ninguna ventana admisible
    """
    best = None
    best_key = None
    n_entries = len(x)
    start = 0
    while start < n_entries:
        if not admissible[start]:
            start += 1
            continue
        stop = start
        while stop < n_entries and admissible[stop]:
            stop += 1
        # [start, stop) es un tramo admisible maximal
        for i in range(start, stop - min_window + 1):
            for j in range(i + min_window, stop + 1):
                result = linregress(x[i:j], y[i:j])
                r_squared = 0.0 if np.ptp(y[i:j]) == 0 else min(1.0, float(result.rvalue) ** 2)
                key = (r_squared, j - i, -i)
                if best_key is None or _better(key, best_key):
                    best_key = key
                    best = SlopeFit(
                        slope=float(result.slope),
                        intercept=float(result.intercept),
                        r_squared=r_squared,
                        window=(i, j)
                    )
        start = stop

    if best is None:
        raise SaturatedCurveException()
    return best


def _better(key, best_key) -> bool:
    """Orden de selección de ventanas con tolerancia en r^2"""
    r2, length, neg_start = key
    best_r2, best_length, best_neg_start = best_key
    if abs(r2 - best_r2) > R2_TIE_TOLERANCE:
        return r2 > best_r2
    return (length, neg_start) > (best_length, best_neg_start)


def fit_linear_region(curve: BoxCountCurve, min_window: int = 5) -> SlopeFit:
    """
    Ajusta log N(r) contra -log r en la región lineal de la curva.

    Las entradas saturadas (N(r) = N) quedan excluidas.

    Args:
        curve: Curva de conteo
        min_window: Tamaño mínimo de ventana (>= 4)

    Returns:
        SlopeFit: Pendiente = estimación de la dimensión

    Raises:
        ConfigurationException: Si min_window < 4 o la curva es más corta
        SaturatedCurveException: Si toda la curva está saturada
    """
    if min_window < MIN_WINDOW:
        raise ConfigurationException(f"min_window debe ser al menos {MIN_WINDOW}")
    if len(curve.entries) < min_window:
        raise ConfigurationException(
            f"La curva tiene {len(curve.entries)} entradas, se necesitan al menos {min_window}"
        )
    radii = np.array(curve.radii, dtype=np.float64)
    counts = np.array(curve.counts, dtype=np.float64)
    admissible = counts < curve.n_points
    return fit_loglog_window(-np.log(radii), np.log(counts), admissible, min_window)


def resolve_radii(cloud: PointCloud, config: MinkowskiConfig) -> tuple:
    """
    r_max por defecto: mayor extensión de la caja envolvente;
    r_min por defecto: r_max / 2^10.
    """
    extent = float(np.ptp(cloud.points, axis=0).max())
    if extent == 0.0:
        raise DegenerateDataException("Todos los puntos son idénticos; no hay escala que barrer")
    r_max = config.r_max if config.r_max is not None else extent
    r_min = config.r_min if config.r_min is not None else r_max / 2 ** DEFAULT_DECADES_LOG2
    if r_min >= r_max:
        raise ConfigurationException(f"r_min ({r_min}) debe ser menor que r_max ({r_max})")
    return r_max, r_min


def estimate_minkowski(
    cloud: PointCloud,
    config: Optional[MinkowskiConfig] = None,
    workers: Optional[int] = None
) -> MinkowskiEstimate:
    """
    Estimación completa: barrido + ajuste + flags de calidad.

    Args:
        cloud: Nube de puntos
        config: Parámetros (por defecto MinkowskiConfig())
        workers: Workers para el barrido

    Returns:
        MinkowskiEstimate: dimension = pendiente del ajuste
    """
    config = config or MinkowskiConfig()
    r_max, r_min = resolve_radii(cloud, config)
    if config.anchor_policy == "fixed" and len(config.anchor) != cloud.ambient_dim:
        raise ConfigurationException(
            f"El ancla debe tener {cloud.ambient_dim} componentes, tiene {len(config.anchor)}"
        )

    curve = sweep(cloud, r_max, r_min, config.steps, config.anchor_policy, config.anchor, workers)
    fit = fit_linear_region(curve, config.min_window)
    flags = FitQualityPolicy(min_window=config.min_window).flags(curve, fit)

    anchor_dimensions: List[float] = []
    anchor_mean = None
    if config.n_anchors > 1:
        rng = RandomSource(seed=config.seed).child("anchors")
        data_min = cloud.points.min(axis=0)
        anchor_dimensions.append(fit.slope)
        for _ in range(config.n_anchors - 1):
            shifted = data_min - rng.random(cloud.ambient_dim) * r_max
            extra_curve = sweep(cloud, r_max, r_min, config.steps, "fixed", shifted, workers)
            anchor_dimensions.append(fit_linear_region(extra_curve, config.min_window).slope)
        anchor_mean = float(np.mean(anchor_dimensions))

    logger.info(
        "Dimensión de Minkowski para %s: %.4f (r2=%.5f, ventana=%s)",
        cloud.label or "nube", fit.slope, fit.r_squared, list(fit.window)
    )
    for flag in flags:
        logger.warning("Ajuste de Minkowski con advertencia: %s", flag)

    return MinkowskiEstimate(
        curve=curve,
        fit=fit,
        dimension=fit.slope,
        quality_flags=flags,
        anchor_dimensions=anchor_dimensions,
        anchor_mean=anchor_mean
    )


def compare_axis_blocks(
    cloud: PointCloud,
    block_size: int,
    config: Optional[MinkowskiConfig] = None,
    workers: Optional[int] = None
) -> Dict[str, MinkowskiEstimate]:
    """
    Estima la dimensión sobre los bloques de ejes first, middle y last.

    Estimaciones cercanas entre sí indican que la dimensión medida es la
    de toda la nube y no un artefacto de la proyección.
    """
    config = config or MinkowskiConfig()
    estimates = {}
    for block in ("first", "middle", "last"):
        projected = project_axes(cloud, axis_block(cloud.ambient_dim, block, block_size))
        estimates[block] = estimate_minkowski(projected, config, workers)
    slopes = [estimate.dimension for estimate in estimates.values()]
    logger.info("Bloques de %d ejes: pendientes %s (dispersión %.3f)", block_size, slopes, max(slopes) - min(slopes))
    return estimates

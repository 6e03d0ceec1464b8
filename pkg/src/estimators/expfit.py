"""
Prueba de exponencialidad de V^n(d_min) y selección de la dimensión.

Para puntos independientes y uniformes sobre una variedad de dimensión n,
el volumen de la n-bola de radio d_min sigue una ley exponencial. Para
cada candidato n se comparan A1^2 con A2 y se mide el estadístico K-S
contra la exponencial ajustada por máxima verosimilitud.
"""

import math
from typing import Optional, Tuple

import numpy as np
from scipy.special import gammaln
from scipy.stats import kstest

from src.errors import ConfigurationException, DegenerateDataException, SymmetryCheckException
from src.estimators.flatten import apply_flattening, build_flattening, check_rotational_symmetry
from src.estimators.neighbors import nn_distances
from src.models.configs import ProbabilisticConfig
from src.models.dimension_scan import DimensionCandidate, DimensionScanResult
from src.models.neighbors import NeighborDistances
from src.models.point_cloud import PointCloud, RandomSource
from src.policies.selection_policy import DimensionSelectionPolicy
from src.utils.logging import setup_logger

logger = setup_logger(__name__)

HIGH_ZERO_FRACTION = 0.001
NEAR_DUPLICATE_WARNING_FRACTION = 0.05
# exp() de float64 desborda por encima de ~709.78
MAX_LOG_FLOAT = 709.0


def log_ball_volume(n: int, t) -> np.ndarray:
    """
    log V^n(t) = (n/2) log(pi) + n log(t) - log Gamma(n/2 + 1).

    Devuelve -inf donde t = 0.
    """
    if n < 1:
        raise ConfigurationException(f"n debe ser al menos 1, se recibió {n}")
    t = np.asarray(t, dtype=np.float64)
    if (t < 0).any():
        raise ConfigurationException("El radio debe ser no negativo")
    constant = 0.5 * n * math.log(math.pi) - gammaln(0.5 * n + 1.0)
    with np.errstate(divide="ignore"):
        return constant + n * np.log(t)


def ball_volume(n: int, t):
    """
    Volumen de la bola n-dimensional de radio t, evaluado en espacio log.

    Args:
        n: Dimensión (>= 1)
        t: Radio (>= 0), escalar o array

    Returns:
        float o np.ndarray: V^n(t); 0 para t = 0
    """
    volume = np.exp(log_ball_volume(n, t))
    return float(volume) if np.ndim(volume) == 0 else volume


def ks_exponential(samples) -> Tuple[float, float]:
    """
    Estadístico K-S contra la exponencial ajustada por máxima verosimilitud.

    lambda = 1 / media; F(x) = 1 - exp(-lambda x);
    D = max_k max(k/N - F(x_k), F(x_k) - (k-1)/N).

    Args:
        samples: Al menos 2 valores no negativos, no todos nulos

    Returns:
        Tuple[float, float]: (D, lambda)

    Raises:
        DegenerateDataException: Si todas las muestras son cero
    """
    samples = np.asarray(samples, dtype=np.float64)
    if samples.size < 2:
        raise ConfigurationException("Se necesitan al menos 2 muestras")
    if (samples < 0).any():
        raise ConfigurationException("Las muestras deben ser no negativas")
    mean = float(samples.mean())
    if mean == 0.0:
        raise DegenerateDataException("degenerate distances; dataset has duplicate points")

    statistic = float(kstest(samples, "expon", args=(0.0, mean)).statistic)
    return statistic, 1.0 / mean


def _finite_exp(log_value: float) -> Optional[float]:
    """exp() o None si el valor no es representable en float64"""
    if log_value > MAX_LOG_FLOAT:
        return None
    return math.exp(log_value) if log_value > -math.inf else 0.0


def evaluate_candidate(n: int, d_min: np.ndarray) -> DimensionCandidate:
    """
    Estadísticos de V^n(d_min) para un candidato.

    Las muestras se escalan por el máximo en espacio log antes de los
    momentos y del K-S (ambos son invariantes de escala); A1 y A2 se
    reconstruyen en escala absoluta solo para el reporte.
    """
    log_volumes = log_ball_volume(n, d_min)
    finite = np.isfinite(log_volumes)
    if not finite.any():
        raise DegenerateDataException("degenerate distances; dataset has duplicate points")
    shift = float(log_volumes[finite].max())
    scaled = np.exp(log_volumes - shift)

    ks, _ = ks_exponential(scaled)
    mean = float(scaled.mean())
    variance = float(scaled.var(ddof=1))
    moment_ratio = mean * mean / variance if variance > 0 else None

    log_a1 = math.log(mean) + shift
    log_a2 = math.log(variance) + 2.0 * shift if variance > 0 else -math.inf
    a1 = _finite_exp(log_a1)
    lambda_hat = 1.0 / a1 if a1 and math.isfinite(1.0 / a1) else None
    return DimensionCandidate(
        n=n,
        a1=a1,
        a2=_finite_exp(log_a2),
        a1_squared=_finite_exp(2.0 * log_a1),
        moment_ratio=moment_ratio,
        ks=ks,
        lambda_hat=lambda_hat
    )


def scan_dimensions(
    distances: NeighborDistances,
    n_min: int = 1,
    n_max: int = 64,
    moment_tolerance: float = 0.2,
    near_duplicate_warning_fraction: float = NEAR_DUPLICATE_WARNING_FRACTION
) -> DimensionScanResult:
    """
    Evalúa cada candidato n del rango y elige la dimensión.

    Las distancias nulas entran como muestras V^n = 0.

    Args:
        distances: Distancias al vecino más cercano
        n_min, n_max: Rango de candidatos (1 <= n_min <= n_max)
        moment_tolerance: Tolerancia de |A1^2/A2 - 1|
        near_duplicate_warning_fraction: Fracción de casi-duplicados que
            dispara la advertencia near_duplicates

    Returns:
        DimensionScanResult: Candidatos, dimensión elegida y advertencias
    """
    if not 1 <= n_min <= n_max:
        raise ConfigurationException(f"Rango de candidatos inválido: [{n_min}, {n_max}]")
    if not moment_tolerance > 0:
        raise ConfigurationException("moment_tolerance debe ser positiva")

    candidates = [evaluate_candidate(n, distances.d_min) for n in range(n_min, n_max + 1)]
    selected_n, confidence, matched = DimensionSelectionPolicy(moment_tolerance).select(candidates)

    warnings = []
    if distances.zero_fraction > HIGH_ZERO_FRACTION:
        warnings.append("high_zero_fraction")
    if distances.near_duplicate_fraction > near_duplicate_warning_fraction:
        warnings.append("near_duplicates")
    if not matched:
        warnings.append("no_moment_match")
    for warning in warnings:
        logger.warning("Barrido de dimensiones con advertencia: %s", warning)

    logger.info("Dimensión seleccionada: %s (confianza=%s)", selected_n, confidence)
    return DimensionScanResult(
        candidates=candidates,
        selected_n=selected_n,
        confidence=confidence,
        warnings=warnings,
        metadata={
            "moment_tolerance": moment_tolerance,
            "zero_fraction": distances.zero_fraction,
            "near_duplicate_fraction": distances.near_duplicate_fraction,
            "n_points": distances.n_points,
        }
    )


def run_probabilistic(
    cloud: PointCloud,
    config: Optional[ProbabilisticConfig] = None,
    workers: Optional[int] = None
) -> Tuple[DimensionScanResult, NeighborDistances]:
    """
    Método geométrico-probabilístico completo.

    1. Simetría rotacional (si flatten=True; si no, advertencia flattening_waived)
    2. Aplanamiento con la ECDF común
    3. d_min sobre la nube aplanada (o la original si se omitió)
    4. Barrido de candidatos y selección

    Returns:
        Tuple: (resultado del barrido, distancias d_min usadas)

    Raises:
        SymmetryCheckException: Si flatten=True y la simetría no se verifica
    """
    config = config or ProbabilisticConfig()
    metadata = {}
    warnings = []

    if config.flatten:
        symmetry = config.symmetry
        report = check_rotational_symmetry(
            cloud,
            n_directions=symmetry.n_directions,
            threshold=symmetry.threshold,
            rng=RandomSource(seed=symmetry.seed),
            keep_per_direction=symmetry.keep_per_direction,
            workers=workers
        )
        metadata["uniformity"] = report.model_dump()
        if not report.passed:
            raise SymmetryCheckException(
                f"La nube no es rotacionalmente simétrica (max_ks={report.max_ks:.4f} > {report.threshold}); "
                "vuelva a ejecutar con el aplanamiento omitido (--no-flatten) o corrija los datos",
                report=report
            )
        working = apply_flattening(cloud, build_flattening(cloud))
        metadata["distances_on"] = "flattened"
    else:
        warnings.append("flattening_waived")
        logger.warning("Aplanamiento omitido: d_min se calcula sobre la nube original")
        working = cloud
        metadata["distances_on"] = "original"

    distances = nn_distances(working, workers=workers, near_duplicate_ratio=config.near_duplicate_ratio)
    scan = scan_dimensions(
        distances,
        n_min=config.n_min,
        n_max=config.n_max,
        moment_tolerance=config.moment_tolerance,
        near_duplicate_warning_fraction=config.near_duplicate_warning_fraction
    )
    scan = scan.model_copy(update={
        "warnings": warnings + scan.warnings,
        "metadata": {**scan.metadata, **metadata, "label": cloud.label},
    })
    return scan, distances


def estimate_probabilistic(
    cloud: PointCloud,
    config: Optional[ProbabilisticConfig] = None,
    workers: Optional[int] = None
) -> DimensionScanResult:
    """Igual que run_probabilistic, devolviendo solo el barrido"""
    scan, _ = run_probabilistic(cloud, config, workers)
    return scan

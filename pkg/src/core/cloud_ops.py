from typing import Literal, Optional

from src.errors import CloudValidationException
from src.models.point_cloud import AxisProjection, PointCloud
from src.utils.logging import setup_logger

logger = setup_logger(__name__)


def project_axes(cloud: PointCloud, projection: AxisProjection) -> PointCloud:
    """
    Proyecta la nube sobre un subconjunto ordenado de ejes coordenados.

    Args:
        cloud: Nube de origen
        projection: Ejes a conservar (índices crecientes)

    Returns:
        PointCloud: Mismo N, ambient_dim = len(axis_indices)

    Raises:
        CloudValidationException: Si algún índice es >= ambient_dim
    """
    out_of_range = [i for i in projection.axis_indices if i >= cloud.ambient_dim]
    if out_of_range:
        raise CloudValidationException(
            f"Índices de ejes fuera de rango para m={cloud.ambient_dim}: {out_of_range}",
            column=out_of_range[0]
        )
    return cloud.with_points(cloud.points[:, projection.axis_indices])


def subsample(cloud: PointCloud, step: int, limit: Optional[int] = None) -> PointCloud:
    """
    Toma las filas 0, step, 2*step, ... (hasta limit filas).

    Determinista y conserva el orden de las filas.

    Raises:
        CloudValidationException: Si step < 1, limit < 1 o quedan menos de 2 puntos
    """
    if step < 1:
        raise CloudValidationException(f"step debe ser >= 1, se recibió {step}")
    if limit is not None and limit < 1:
        raise CloudValidationException(f"limit debe ser >= 1, se recibió {limit}")

    rows = cloud.points[::step]
    if limit is not None:
        rows = rows[:limit]
    if rows.shape[0] < 2:
        raise CloudValidationException(
            f"El submuestreo deja {rows.shape[0]} puntos; se necesitan al menos 2"
        )
    if rows.shape[0] != cloud.n_points:
        logger.info("Submuestreo: %d -> %d puntos (step=%d)", cloud.n_points, rows.shape[0], step)
    return cloud.with_points(rows)


def axis_block(ambient_dim: int, block: Literal["first", "middle", "last"], size: int) -> AxisProjection:
    """
    Bloque contiguo de ejes al inicio, centro o final del rango.

    Args:
        ambient_dim: Dimensión ambiente m
        block: "first", "middle" o "last"
        size: Cantidad de ejes del bloque

    Returns:
        AxisProjection: Índices del bloque
    """
    if size < 1 or size > ambient_dim:
        raise CloudValidationException(
            f"El tamaño de bloque debe estar entre 1 y {ambient_dim}, se recibió {size}"
        )
    if block == "first":
        start = 0
    elif block == "middle":
        start = (ambient_dim - size) // 2
    elif block == "last":
        start = ambient_dim - size
    else:
        raise CloudValidationException(f"Bloque desconocido: {block}")
    return AxisProjection(axis_indices=list(range(start, start + size)))

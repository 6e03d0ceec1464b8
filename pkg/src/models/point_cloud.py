from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator

from src.errors import CloudValidationException

ALGORITHM_ID = "numpy.PCG64"


def validate_points(points) -> np.ndarray:
    """
    Normaliza y valida la matriz de coordenadas de una nube.

    Args:
        points: Matriz N x m (cualquier array-like numérico)

    Returns:
        np.ndarray: Copia float64 C-contigua, de solo lectura

    Raises:
        CloudValidationException: Si la forma es inválida, N < 2 o hay
            valores no finitos (se nombra fila y columna)
    """
    try:
        array = np.array(points, dtype=np.float64, order="C", copy=True)
    except (TypeError, ValueError) as e:
        raise CloudValidationException(f"Coordenadas no numéricas o filas irregulares: {e}") from e
    if array.ndim != 2:
        raise CloudValidationException(
            f"La nube debe ser una matriz N x m, se recibió ndim={array.ndim}"
        )
    n_points, ambient_dim = array.shape
    if ambient_dim < 1:
        raise CloudValidationException("La dimensión ambiente debe ser al menos 1")
    if n_points < 2:
        raise CloudValidationException(
            f"La nube debe tener al menos 2 puntos, tiene {n_points}"
        )

    finite = np.isfinite(array)
    if not finite.all():
        row, column = (int(i) for i in np.argwhere(~finite)[0])
        raise CloudValidationException(
            f"Valor no finito en fila {row}, columna {column}",
            row=row,
            column=column
        )

    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class PointCloud:
    """
    Nube de N puntos en R^m.

    Inmutable tras la construcción: la matriz queda de solo lectura y puede
    compartirse entre workers sin copias.

    Attributes:
        points: Matriz N x m de coordenadas (float64)
        label: Identificador libre del dataset
    """
    points: np.ndarray
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "points", validate_points(self.points))

    @property
    def n_points(self) -> int:
        return int(self.points.shape[0])

    @property
    def ambient_dim(self) -> int:
        return int(self.points.shape[1])

    def with_points(self, points, label: Optional[str] = None) -> "PointCloud":
        """Crea una nube nueva con otras coordenadas y la misma etiqueta"""
        return PointCloud(points=points, label=self.label if label is None else label)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointCloud):
            return NotImplemented
        return self.label == other.label and np.array_equal(self.points, other.points)

    def __repr__(self) -> str:
        return f"PointCloud(label={self.label!r}, n_points={self.n_points}, ambient_dim={self.ambient_dim})"


class AxisProjection(BaseModel):
    """
    Selección ordenada de ejes coordenados.

    Attributes:
        axis_indices: Índices de columna estrictamente crecientes
        source_label: Etiqueta de la nube de origen
    """
    axis_indices: List[int] = Field(..., min_length=1, description="Índices de ejes (crecientes)")
    source_label: str = Field("", description="Etiqueta de la nube de origen")

    @field_validator('axis_indices')
    @classmethod
    def validate_axis_indices(cls, value: List[int]) -> List[int]:
        """Valida que los índices sean no negativos y estrictamente crecientes"""
        if any(index < 0 for index in value):
            raise ValueError("Los índices de ejes deben ser no negativos")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("Los índices de ejes deben ser estrictamente crecientes")
        return value


class RandomSource(BaseModel):
    """
    Fuente aleatoria explícita y reproducible.

    Misma semilla => misma secuencia de números, sin importar el número de
    threads. No existe estado aleatorio global en el paquete.

    Attributes:
        seed: Semilla entera sin signo de 64 bits
        algorithm_id: Familia del generador
    """
    seed: int = Field(0, ge=0, lt=2 ** 64, description="Semilla de 64 bits")
    algorithm_id: str = Field(ALGORITHM_ID, description="Familia del generador")

    @field_validator('algorithm_id')
    @classmethod
    def validate_algorithm_id(cls, value: str) -> str:
        """Solo se soporta PCG64 de numpy"""
        if value != ALGORITHM_ID:
            raise ValueError(f"Generador no soportado: {value}")
        return value

    def generator(self) -> np.random.Generator:
        """Generador numpy inicializado con la semilla"""
        return np.random.Generator(np.random.PCG64(self.seed))

    def child(self, tag: str) -> np.random.Generator:
        """
        Flujo independiente y determinista para una subtarea con nombre.

        Args:
            tag: Nombre de la subtarea ("directions", "anchors", ...)

        Returns:
            np.random.Generator: Generador derivado de (seed, tag)
        """
        spawn_key = tuple(tag.encode("utf-8"))
        sequence = np.random.SeedSequence(self.seed, spawn_key=spawn_key)
        return np.random.Generator(np.random.PCG64(sequence))

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class NeighborDistances:
    """
    Distancias al vecino más cercano de cada punto.

    Attributes:
        d_min: Vector de longitud N con d_min(x) >= 0, en el orden de la nube
        global_min: Menor distancia entre pares (mínimo de d_min)
        zero_fraction: Fracción de puntos con d_min = 0 (duplicados exactos)
        near_duplicate_fraction: Fracción de puntos cuyo vecino más cercano
            está a menos de ratio * (distancia al segundo vecino)
    """
    d_min: np.ndarray
    global_min: float
    zero_fraction: float
    near_duplicate_fraction: float = 0.0

    @property
    def n_points(self) -> int:
        return int(self.d_min.shape[0])

    @classmethod
    def from_distances(cls, d_min: np.ndarray, near_duplicate_fraction: float = 0.0) -> "NeighborDistances":
        """Construye el resultado derivando global_min y zero_fraction"""
        d_min = np.asarray(d_min, dtype=np.float64)
        d_min.setflags(write=False)
        return cls(
            d_min=d_min,
            global_min=float(d_min.min()),
            zero_fraction=float(np.count_nonzero(d_min == 0.0)) / d_min.shape[0],
            near_duplicate_fraction=float(near_duplicate_fraction)
        )

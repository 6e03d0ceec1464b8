from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator


@dataclass(frozen=True)
class FlatteningTransform:
    """
    Función de distribución común F de las coordenadas (ECDF agrupada).

    Attributes:
        sorted_pool: Las N*m coordenadas de la nube, ordenadas
        symmetry_waived: True si se construyó sin verificar simetría
    """
    sorted_pool: np.ndarray
    symmetry_waived: bool = False

    @property
    def pool_size(self) -> int:
        return int(self.sorted_pool.shape[0])

    def evaluate(self, values) -> np.ndarray:
        """
        Evalúa F(t) = #{pool <= t} / pool_size (continua por la derecha).

        Args:
            values: Escalar o array de cualquier forma

        Returns:
            np.ndarray: Valores en [0, 1] con la misma forma
        """
        values = np.asarray(values, dtype=np.float64)
        ranks = np.searchsorted(self.sorted_pool, values, side="right")
        return ranks / self.pool_size


class UniformityReport(BaseModel):
    """
    Resultado de la verificación de simetría rotacional.

    Attributes:
        n_directions: Direcciones aleatorias usadas
        max_ks: Mayor estadístico K-S de dos muestras contra la referencia
        threshold: Cota de aprobación configurada
        passed: max_ks <= threshold
        per_direction_ks: Estadístico de cada dirección (la referencia vale 0)
        metadata: Resumen de normas y convenciones usadas
    """
    n_directions: int = Field(..., ge=2)
    max_ks: float = Field(..., ge=0.0, le=1.0)
    threshold: float = Field(..., gt=0.0, lt=1.0)
    passed: bool
    per_direction_ks: Optional[List[float]] = None
    metadata: Dict = Field(default_factory=dict)

    @model_validator(mode='after')
    def validate_passed(self) -> "UniformityReport":
        """passed debe coincidir con max_ks <= threshold"""
        if self.passed != (self.max_ks <= self.threshold):
            raise ValueError("passed debe ser equivalente a max_ks <= threshold")
        return self

from typing import Dict, Literal, Optional

from pydantic import BaseModel, Field


class CrossCheckResult(BaseModel):
    """
    Resultado de aplicar ambos métodos a la misma nube.

    Attributes:
        minkowski_dimension: Pendiente del conteo de cajas
        selected_n: Dimensión del método probabilístico
        confidence: Confianza de la selección probabilística
        difference: |minkowski_dimension - selected_n|
        tolerance: Banda de acuerdo usada
        verdict: "agree" o "disagree"
        detail: Resumen legible
        minkowski: Payload completo del conteo de cajas
        probabilistic: Payload completo del barrido de dimensiones
    """
    minkowski_dimension: float
    selected_n: Optional[int] = None
    confidence: str = Field("low", pattern="^(high|low)$")
    difference: Optional[float] = None
    tolerance: float = Field(1.0, ge=0.0)
    verdict: Literal["agree", "disagree"]
    detail: str
    minkowski: Dict = Field(default_factory=dict)
    probabilistic: Dict = Field(default_factory=dict)

    @property
    def agrees(self) -> bool:
        return self.verdict == "agree"

    def to_payload(self) -> Dict:
        return self.model_dump()

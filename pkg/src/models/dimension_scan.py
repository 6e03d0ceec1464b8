from typing import Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

WARNINGS = ("high_zero_fraction", "no_moment_match", "flattening_waived", "near_duplicates")


class DimensionCandidate(BaseModel):
    """
    Estadísticos de V^n(d_min) para una dimensión candidata n.

    Attributes:
        n: Dimensión candidata
        a1: Media A1(n) (None si no es representable en float64)
        a2: Varianza A2(n) (denominador N-1)
        a1_squared: A1(n)^2
        moment_ratio: A1^2 / A2, calculado sin desbordes
        ks: Estadístico K-S contra la exponencial ajustada
        lambda_hat: Intensidad ajustada 1 / A1 (None si A1 se anula)
    """
    n: int = Field(..., ge=1)
    a1: Optional[float] = Field(None, ge=0.0)
    a2: Optional[float] = Field(None, ge=0.0)
    a1_squared: Optional[float] = Field(None, ge=0.0)
    moment_ratio: Optional[float] = Field(None, ge=0.0)
    ks: float = Field(..., ge=0.0, le=1.0)
    lambda_hat: Optional[float] = Field(None, gt=0.0)


class DimensionScanResult(BaseModel):
    """
    Barrido de dimensiones candidatas y la dimensión seleccionada.

    Attributes:
        candidates: Candidatos para un rango contiguo de n
        selected_n: Dimensión elegida (None si no hay candidatos)
        confidence: "high" si hubo coincidencia de momentos, "low" si no
        warnings: Subconjunto de WARNINGS
        metadata: Convenciones usadas (distancias sobre nube aplanada, etc.)
    """
    candidates: List[DimensionCandidate]
    selected_n: Optional[int] = None
    confidence: str = Field("low", pattern="^(high|low)$")
    warnings: List[str] = Field(default_factory=list)
    metadata: Dict = Field(default_factory=dict)

    @model_validator(mode='after')
    def validate_selection(self) -> "DimensionScanResult":
        """selected_n debe ser el n de algún candidato; rango contiguo"""
        ns = [candidate.n for candidate in self.candidates]
        if any(b != a + 1 for a, b in zip(ns, ns[1:])):
            raise ValueError("Los candidatos deben cubrir un rango contiguo de n")
        if self.selected_n is not None and self.selected_n not in ns:
            raise ValueError("selected_n debe corresponder a un candidato")
        unknown = set(self.warnings) - set(WARNINGS)
        if unknown:
            raise ValueError(f"Advertencias desconocidas: {sorted(unknown)}")
        return self

    def candidate(self, n: int) -> DimensionCandidate:
        """Devuelve el candidato de dimensión n"""
        for candidate in self.candidates:
            if candidate.n == n:
                return candidate
        raise KeyError(n)

    def to_payload(self) -> Dict:
        """Arrays por n listos para graficar (A1^2 vs A2, curva K-S)"""
        return {
            "n": [c.n for c in self.candidates],
            "a1": [c.a1 for c in self.candidates],
            "a1_squared": [c.a1_squared for c in self.candidates],
            "a2": [c.a2 for c in self.candidates],
            "moment_ratio": [c.moment_ratio for c in self.candidates],
            "ks": [c.ks for c in self.candidates],
            "lambda_hat": [c.lambda_hat for c in self.candidates],
            "selected_n": self.selected_n,
            "confidence": self.confidence,
            "warnings": list(self.warnings),
            "metadata": self.metadata,
        }

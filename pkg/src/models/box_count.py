from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

QUALITY_FLAGS = ("saturated_region_excluded", "short_linear_region", "low_r_squared")


class CurveEntry(BaseModel):
    """Un punto de la curva: lado de caja r y conteo N(r)"""
    r: float = Field(..., gt=0, description="Lado de caja")
    n: int = Field(..., ge=0, description="Celdas ocupadas N(r)")


class BoxCountCurve(BaseModel):
    """
    Curva de conteo de cajas sobre un barrido de r.

    Attributes:
        entries: Pares (r, N(r)) con r estrictamente decreciente
        n_points: Tamaño N de la nube (cota superior de N(r))
        grid_anchor: Origen de la grilla (m coordenadas)
        r_saturation_hint: r más grande con N(r) = N, si se alcanzó
    """
    entries: List[CurveEntry]
    n_points: int = Field(..., ge=2)
    grid_anchor: List[float]
    r_saturation_hint: Optional[float] = None

    @model_validator(mode='after')
    def validate_curve(self) -> "BoxCountCurve":
        """
        Verifica r estrictamente decreciente y 1 <= N(r) <= N.

        N(r) no decreciente solo está garantizado con grillas anidadas
        (radios diádicos); con radios arbitrarios el conteo puede bajar.
        """
        radii = [entry.r for entry in self.entries]
        counts = [entry.n for entry in self.entries]
        if any(b >= a for a, b in zip(radii, radii[1:])):
            raise ValueError("Los valores de r deben ser estrictamente decrecientes")
        if any(c < 1 or c > self.n_points for c in counts):
            raise ValueError("N(r) debe estar entre 1 y N")
        return self

    @property
    def radii(self) -> List[float]:
        return [entry.r for entry in self.entries]

    @property
    def counts(self) -> List[int]:
        return [entry.n for entry in self.entries]


class SlopeFit(BaseModel):
    """
    Ajuste lineal de mínimos cuadrados sobre una ventana de la curva.

    Attributes:
        slope: Pendiente (estimación de la dimensión)
        intercept: Intercepto (estima log V)
        r_squared: Coeficiente de determinación en [0, 1]
        window: Rango [inicio, fin) de índices usados en el ajuste
    """
    model_config = ConfigDict(populate_by_name=True)

    slope: float
    intercept: float
    r_squared: float = Field(..., ge=0.0, le=1.0, serialization_alias="r2")
    window: Tuple[int, int]

    @property
    def window_length(self) -> int:
        return self.window[1] - self.window[0]


class MinkowskiEstimate(BaseModel):
    """
    Resultado completo del método de conteo de cajas.

    Attributes:
        curve: Curva medida
        fit: Ajuste sobre la región lineal
        dimension: Igual a fit.slope (sin redondear)
        quality_flags: Subconjunto de QUALITY_FLAGS
        anchor_dimensions: Pendientes por ancla (solo con n_anchors > 1)
        anchor_mean: Media de anchor_dimensions
    """
    curve: BoxCountCurve
    fit: SlopeFit
    dimension: float
    quality_flags: List[str] = Field(default_factory=list)
    anchor_dimensions: List[float] = Field(default_factory=list)
    anchor_mean: Optional[float] = None

    @model_validator(mode='after')
    def validate_dimension(self) -> "MinkowskiEstimate":
        """La dimensión reportada es exactamente la pendiente del ajuste"""
        if self.dimension != self.fit.slope:
            raise ValueError("dimension debe ser igual a fit.slope")
        unknown = set(self.quality_flags) - set(QUALITY_FLAGS)
        if unknown:
            raise ValueError(f"Flags de calidad desconocidos: {sorted(unknown)}")
        return self

    def to_payload(self) -> Dict:
        """Representación JSON: entries, fit, flags y metadatos de la grilla"""
        payload = {
            "entries": [entry.model_dump() for entry in self.curve.entries],
            "fit": self.fit.model_dump(by_alias=True),
            "flags": list(self.quality_flags),
            "dimension": self.dimension,
            "n_points": self.curve.n_points,
            "grid_anchor": list(self.curve.grid_anchor),
            "r_saturation_hint": self.curve.r_saturation_hint,
        }
        if self.anchor_dimensions:
            payload["anchor_dimensions"] = list(self.anchor_dimensions)
            payload["anchor_mean"] = self.anchor_mean
        return payload


class CorrelationEntry(BaseModel):
    """Un punto de la curva de correlación: radio r e integral rho(r)"""
    r: float = Field(..., gt=0)
    rho: float = Field(..., ge=0.0, le=1.0)
    pairs: int = Field(..., ge=0, description="Pares con distancia < r")


class CorrelationCurve(BaseModel):
    """
    Integral de correlación sobre un barrido de r y su ajuste log-log.

    Attributes:
        entries: Pares (r, rho) con r creciente
        fit: Ajuste lineal de log rho contra log r
        n_points_used: Puntos usados en la suma de pares
        subsampled: True si la nube se submuestreó por costo
    """
    entries: List[CorrelationEntry]
    fit: SlopeFit
    n_points_used: int
    subsampled: bool = False

    @model_validator(mode='after')
    def validate_monotone(self) -> "CorrelationCurve":
        """rho debe ser no decreciente en r"""
        rhos = [entry.rho for entry in self.entries]
        if any(b < a for a, b in zip(rhos, rhos[1:])):
            raise ValueError("rho debe ser no decreciente en r")
        return self

    @property
    def dimension(self) -> float:
        return self.fit.slope

    def to_payload(self) -> Dict:
        """Mismo esquema que la curva de conteo de cajas"""
        return {
            "entries": [{"r": e.r, "n": e.pairs, "rho": e.rho} for e in self.entries],
            "fit": self.fit.model_dump(by_alias=True),
            "flags": [],
            "dimension": self.dimension,
            "n_points_used": self.n_points_used,
            "subsampled": self.subsampled,
        }

from typing import List, Literal, Optional

from pydantic import BaseModel, Field, model_validator


class MinkowskiConfig(BaseModel):
    """
    Parámetros del barrido y del ajuste de conteo de cajas.

    r_max/r_min en None se resuelven desde los datos: r_max es la mayor
    extensión de la caja envolvente y r_min = r_max / 2^10.
    """
    r_max: Optional[float] = Field(None, gt=0, description="Mayor lado de caja")
    r_min: Optional[float] = Field(None, gt=0, description="Menor lado de caja")
    steps: int = Field(32, ge=8, description="Valores de r en el barrido")
    min_window: int = Field(5, ge=4, description="Tamaño mínimo de ventana lineal")
    anchor_policy: Literal["data_min", "fixed"] = "data_min"
    anchor: Optional[List[float]] = Field(None, description="Origen fijo (anchor_policy=fixed)")
    n_anchors: int = Field(1, ge=1, description="Anclas para el promedio multi-ancla")
    seed: int = Field(0, ge=0)

    @model_validator(mode='after')
    def validate_ranges(self) -> "MinkowskiConfig":
        """r_max > r_min y ancla presente cuando la política es fija"""
        if self.r_max is not None and self.r_min is not None and self.r_min >= self.r_max:
            raise ValueError("r_min debe ser menor que r_max")
        if self.anchor_policy == "fixed" and self.anchor is None:
            raise ValueError("anchor_policy=fixed requiere anchor")
        if self.steps < self.min_window:
            raise ValueError("steps debe ser al menos min_window")
        return self


class CorrelationConfig(BaseModel):
    """
    Parámetros del estimador de integral de correlación.

    r_max en None se toma como el cuantil 10% de las distancias entre
    pares (muestra sembrada) y r_min = r_max / 2^6.
    """
    r_max: Optional[float] = Field(None, gt=0)
    r_min: Optional[float] = Field(None, gt=0)
    steps: int = Field(32, ge=8)
    min_window: int = Field(5, ge=4)
    max_points: int = Field(20000, ge=2, description="Tope de puntos para la suma de pares")
    seed: int = Field(0, ge=0)

    @model_validator(mode='after')
    def validate_ranges(self) -> "CorrelationConfig":
        """r_max > r_min"""
        if self.r_max is not None and self.r_min is not None and self.r_min >= self.r_max:
            raise ValueError("r_min debe ser menor que r_max")
        if self.steps < self.min_window:
            raise ValueError("steps debe ser al menos min_window")
        return self


class SymmetryConfig(BaseModel):
    """Parámetros de la verificación de simetría rotacional"""
    n_directions: int = Field(1000, ge=2)
    threshold: float = Field(0.05, gt=0.0, lt=1.0)
    keep_per_direction: bool = Field(False, description="Incluir el K-S de cada dirección")
    seed: int = Field(0, ge=0)


class ProbabilisticConfig(BaseModel):
    """
    Parámetros del método geométrico-probabilístico completo.

    Attributes:
        flatten: Aplicar el aplanamiento (requiere simetría rotacional)
        n_min, n_max: Rango de dimensiones candidatas
        moment_tolerance: Tolerancia de |A1^2/A2 - 1|
        near_duplicate_ratio: Umbral d1 < ratio * d2 para casi-duplicados
        near_duplicate_warning_fraction: Fracción que dispara la advertencia
        symmetry: Parámetros de la verificación de simetría
    """
    flatten: bool = True
    n_min: int = Field(1, ge=1)
    n_max: int = Field(64, ge=1)
    moment_tolerance: float = Field(0.2, gt=0.0)
    near_duplicate_ratio: float = Field(0.01, gt=0.0, lt=1.0)
    near_duplicate_warning_fraction: float = Field(0.05, gt=0.0, le=1.0)
    symmetry: SymmetryConfig = Field(default_factory=SymmetryConfig)

    @model_validator(mode='after')
    def validate_range(self) -> "ProbabilisticConfig":
        """El rango de candidatos no puede estar vacío"""
        if self.n_min > self.n_max:
            raise ValueError("n_min no puede ser mayor que n_max")
        return self

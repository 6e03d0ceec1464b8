from typing import Literal

from pydantic import BaseModel, Field, model_validator


class GeneratorSpec(BaseModel):
    """
    Descripción reproducible de un dataset sintético.

    Attributes:
        kind: swiss_roll, linear_embed, unit_cube o sphere_surface
        intrinsic_dim: Dimensión intrínseca d
        ambient_dim: Dimensión ambiente D
        n_samples: Número de puntos N
        seed: Semilla de la fuente aleatoria
        identity_embedding: Solo linear_embed con d = D: Q = identidad
    """
    kind: Literal["swiss_roll", "linear_embed", "unit_cube", "sphere_surface"]
    intrinsic_dim: int = Field(..., ge=1)
    ambient_dim: int = Field(..., ge=1)
    n_samples: int = Field(..., ge=2)
    seed: int = Field(0, ge=0, lt=2 ** 64)
    identity_embedding: bool = False

    @model_validator(mode='after')
    def validate_kind(self) -> "GeneratorSpec":
        """Restricciones propias de cada tipo de dataset"""
        if self.intrinsic_dim > self.ambient_dim:
            raise ValueError("intrinsic_dim no puede superar ambient_dim")
        if self.kind == "swiss_roll" and (self.intrinsic_dim, self.ambient_dim) != (2, 3):
            raise ValueError("swiss_roll requiere d=2 y D=3")
        if self.kind == "unit_cube" and self.intrinsic_dim != self.ambient_dim:
            raise ValueError("unit_cube requiere d = D")
        if self.kind == "sphere_surface" and self.intrinsic_dim != self.ambient_dim - 1:
            raise ValueError("sphere_surface requiere d = D - 1")
        if self.identity_embedding and (self.kind != "linear_embed" or self.intrinsic_dim != self.ambient_dim):
            raise ValueError("identity_embedding solo aplica a linear_embed con d = D")
        return self

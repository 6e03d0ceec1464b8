from typing import Dict, Optional

from pydantic import BaseModel, Field


class RunManifest(BaseModel):
    """
    Procedencia de una ejecución de la CLI.

    Se escribe junto al archivo de salida (<out>.manifest.json); el archivo
    de resultados no lleva marcas de tiempo para que sea reproducible byte a byte.
    """
    command: str
    config: Dict = Field(default_factory=dict)
    seed: Optional[int] = None
    input_digest: Optional[str] = Field(None, description="sha256 del archivo de entrada")
    tool_version: str
    duration_seconds: float = Field(..., ge=0.0)

import os
from typing import Optional

from pydantic import BaseModel, Field, ValidationError, field_validator

from src.errors import ConfigurationException

TOOL_VERSION = "1.0.0"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseModel):
    """
    Configuración de entorno de la herramienta.

    Attributes:
        threads: Límite de workers para los cálculos paralelos
        log_level: Nivel de log del paquete
    """
    threads: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    log_level: str = Field("WARNING", description="Nivel de log (DEBUG, INFO, WARNING, ERROR)")

    @field_validator('log_level')
    @classmethod
    def validate_log_level(cls, value: str) -> str:
        """Valida que el nivel de log sea uno de los conocidos"""
        value = value.upper()
        if value not in LOG_LEVELS:
            raise ValueError(f"Nivel de log desconocido: {value}")
        return value

    @classmethod
    def from_env(cls, threads: Optional[int] = None) -> "Settings":
        """
        Construye la configuración desde variables de entorno.

        Prioridad para threads: argumento explícito > DIMEST_THREADS > os.cpu_count().

        Args:
            threads: Valor explícito (por ejemplo desde --threads)

        Returns:
            Settings: Configuración resuelta

        Raises:
            ConfigurationException: Si DIMEST_THREADS, DIMEST_LOG_LEVEL o
                threads no son válidos
        """
        values = {}
        if threads is not None:
            values["threads"] = threads
        elif os.environ.get("DIMEST_THREADS"):
            raw = os.environ["DIMEST_THREADS"]
            try:
                values["threads"] = int(raw)
            except ValueError as e:
                raise ConfigurationException(f"DIMEST_THREADS debe ser un entero, se recibió {raw!r}") from e
        values["log_level"] = cls.log_level_from_env()
        try:
            return cls(**values)
        except ValidationError as e:
            raise ConfigurationException(f"Configuración de entorno inválida: {e}") from e

    @classmethod
    def log_level_from_env(cls) -> str:
        """
        Nivel de log de DIMEST_LOG_LEVEL (WARNING si no está definido).

        Raises:
            ConfigurationException: Si el nivel no es uno de los conocidos
        """
        try:
            return cls(log_level=os.environ.get("DIMEST_LOG_LEVEL") or "WARNING").log_level
        except ValidationError as e:
            raise ConfigurationException(f"DIMEST_LOG_LEVEL inválido: {e}") from e

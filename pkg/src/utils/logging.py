import logging
import sys

from src.config import Settings
from src.errors import ConfigurationException

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
DEFAULT_LEVEL = "WARNING"

_root_configured = False


def resolve_level() -> str:
    """
    Nivel inicial del paquete según Settings.

    Un DIMEST_LOG_LEVEL inválido no impide importar el paquete: se usa el
    nivel por defecto y la CLI lo reporta al validar el entorno.
    """
    try:
        return Settings.log_level_from_env()
    except ConfigurationException:
        return DEFAULT_LEVEL


def _configure_root() -> None:
    """Configura una sola vez el logger raíz del paquete (stderr)"""
    global _root_configured
    if _root_configured:
        return

    root = logging.getLogger("src")
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(resolve_level())
    root.propagate = False
    _root_configured = True


def setup_logger(name: str) -> logging.Logger:
    """
    Obtiene el logger de un módulo.

    Todos los loggers cuelgan de "src", de modo que el nivel se controla
    en un único punto (DIMEST_LOG_LEVEL o set_level).

    Args:
        name: Nombre del módulo (normalmente __name__)

    Returns:
        logging.Logger: Logger listo para usar
    """
    _configure_root()
    return logging.getLogger(name)


def set_level(level: str) -> None:
    """Cambia el nivel de log de todo el paquete"""
    _configure_root()
    logging.getLogger("src").setLevel(level.upper())

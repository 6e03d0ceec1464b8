import json
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from src.errors import CloudIOException
from src.models.manifest import RunManifest
from src.models.neighbors import NeighborDistances
from src.utils.logging import setup_logger

logger = setup_logger(__name__)

MANIFEST_SUFFIX = ".manifest.json"


class JsonStorage:
    """
    Persistencia de resultados en archivos JSON.

    Los resultados se escriben sin marcas de tiempo ni datos del entorno:
    misma entrada => mismos bytes. La procedencia (duración, versión,
    digest de la entrada) va en un manifiesto separado junto al resultado.
    """

    def __init__(self, indent: int = 2):
        """
        Inicializa el gestor.

        Args:
            indent: Sangría del JSON emitido
        """
        self.indent = indent

    def _read_json(self, file_path: Path) -> Any:
        """
        Lee un archivo JSON.

        Raises:
            CloudIOException: Si el archivo no existe o está corrupto
        """
        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                return json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise CloudIOException(f"No se pudo leer {file_path}: {e}") from e

    def _write_json(self, file_path: Path, data: Any) -> None:
        """
        Escribe datos a un archivo JSON de forma determinista.

        Raises:
            CloudIOException: Si el destino no es escribible
        """
        try:
            with open(file_path, 'w', encoding='utf-8') as f:
                f.write(self.dumps(data))
        except OSError as e:
            raise CloudIOException(f"No se pudo escribir {file_path}: {e}") from e

    def dumps(self, data: Any) -> str:
        """Serializa con el mismo formato que se escribe a disco"""
        return json.dumps(data, indent=self.indent, ensure_ascii=False, allow_nan=False) + "\n"

    def save_result(self, path: Union[str, Path], payload: Dict) -> Path:
        """
        Guarda el payload de un resultado.

        Args:
            path: Archivo destino
            payload: Diccionario serializable (to_payload() de los modelos)

        Returns:
            Path: Ruta escrita
        """
        path = Path(path)
        self._write_json(path, payload)
        logger.info("Resultado guardado en %s", path)
        return path

    def load_result(self, path: Union[str, Path]) -> Dict:
        """Carga un resultado previamente guardado"""
        return self._read_json(Path(path))

    def manifest_path(self, path: Union[str, Path]) -> Path:
        """Ruta del manifiesto que acompaña a un resultado"""
        path = Path(path)
        return path.with_name(path.name + MANIFEST_SUFFIX)

    def save_manifest(self, path: Union[str, Path], manifest: RunManifest) -> Path:
        """Guarda el manifiesto junto al resultado en <path>.manifest.json"""
        target = self.manifest_path(path)
        self._write_json(target, manifest.model_dump(mode="json"))
        return target

    def load_manifest(self, path: Union[str, Path]) -> RunManifest:
        """Carga el manifiesto que acompaña a un resultado"""
        return RunManifest(**self._read_json(self.manifest_path(path)))

    def save_distances_csv(self, path: Union[str, Path], distances: NeighborDistances) -> Path:
        """
        Vuelca las distancias d_min, una por línea, en el orden de la nube.
        """
        path = Path(path)
        try:
            np.savetxt(path, distances.d_min, fmt="%.17g")
        except OSError as e:
            raise CloudIOException(f"No se pudo escribir {path}: {e}") from e
        return path

import struct
from pathlib import Path
from typing import Literal, Union

import numpy as np

from src.errors import CloudIOException, CloudParseException, CloudValidationException
from src.models.point_cloud import PointCloud
from src.utils.logging import setup_logger

logger = setup_logger(__name__)

CloudFormat = Literal["csv", "binary"]

MAGIC = b"DIMC"
VERSION = 1
HEADER = struct.Struct("<4sIQQ")  # magic, version, N, m: 24 bytes
CSV_FORMAT = "%.17g"


def infer_format(path: Union[str, Path]) -> CloudFormat:
    """Deduce el formato por extensión: .csv/.txt -> csv, cualquier otra -> binary"""
    return "csv" if Path(path).suffix.lower() in (".csv", ".txt") else "binary"


def load_cloud(path: Union[str, Path], format: CloudFormat = "binary", label: str = "") -> PointCloud:
    """
    Carga una nube de puntos desde archivo.

    Args:
        path: Ruta del archivo
        format: "csv" (una fila por punto, cabecera opcional con '#')
                o "binary" (cabecera DIMC + float64 little-endian)
        label: Etiqueta del dataset (por defecto el nombre del archivo)

    Returns:
        PointCloud: Nube con N y m deducidos del archivo

    Raises:
        CloudIOException: Si el archivo no se puede leer
        CloudParseException: Si una fila no respeta el formato (se nombra la línea)
        CloudValidationException: Valores no finitos o N < 2
    """
    path = Path(path)
    label = label or path.stem
    if format == "csv":
        points = _read_csv(path)
    elif format == "binary":
        points = _read_binary(path)
    else:
        raise CloudParseException(f"Formato desconocido: {format}")

    cloud = PointCloud(points=points, label=label)
    logger.info("Nube cargada desde %s: N=%d, m=%d", path, cloud.n_points, cloud.ambient_dim)
    return cloud


def save_cloud(cloud: PointCloud, path: Union[str, Path], format: CloudFormat = "binary") -> None:
    """
    Guarda una nube en CSV (17 dígitos significativos) o binario.

    Raises:
        CloudIOException: Si el destino no es escribible (incluye ruta vacía)
    """
    if not str(path):
        raise CloudIOException("La ruta de destino está vacía")
    path = Path(path)
    try:
        if format == "csv":
            np.savetxt(path, cloud.points, fmt=CSV_FORMAT, delimiter=",")
        elif format == "binary":
            with open(path, "wb") as f:
                f.write(HEADER.pack(MAGIC, VERSION, cloud.n_points, cloud.ambient_dim))
                f.write(cloud.points.astype("<f8", copy=False).tobytes(order="C"))
        else:
            raise CloudParseException(f"Formato desconocido: {format}")
    except OSError as e:
        raise CloudIOException(f"No se pudo escribir {path}: {e}") from e
    logger.info("Nube guardada en %s (%s)", path, format)


def _read_bytes(path: Path) -> bytes:
    """Lee el archivo completo traduciendo errores del sistema"""
    try:
        return path.read_bytes()
    except OSError as e:
        raise CloudIOException(f"No se pudo leer {path}: {e}") from e


def _read_csv(path: Path) -> np.ndarray:
    """
    Parsea el CSV línea por línea.

    Se admite una única cabecera inicial que empiece con '#'. Las líneas
    vacías se ignoran.
    """
    try:
        text = _read_bytes(path).decode("utf-8")
    except UnicodeDecodeError as e:
        raise CloudParseException(f"{path}: contenido no UTF-8 en el byte {e.start}") from e
    rows = []
    width = None
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            if line_number == 1:
                continue
            raise CloudParseException(
                f"Línea {line_number}: solo se permite una cabecera '#' en la primera línea",
                line=line_number
            )
        fields = stripped.split(",")
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise CloudParseException(
                f"Línea {line_number}: se esperaban {width} columnas, hay {len(fields)}",
                line=line_number
            )
        try:
            rows.append([float(value) for value in fields])
        except ValueError as e:
            raise CloudParseException(f"Línea {line_number}: valor no numérico ({e})", line=line_number) from e

    if len(rows) < 2:
        raise CloudValidationException(f"La nube debe tener al menos 2 puntos, tiene {len(rows)}")
    return np.array(rows, dtype=np.float64)


def _read_binary(path: Path) -> np.ndarray:
    """Lee el formato binario DIMC validando cabecera y tamaño"""
    data = _read_bytes(path)
    if len(data) < HEADER.size:
        raise CloudParseException(f"Archivo binario truncado: {len(data)} bytes")

    magic, version, n_points, ambient_dim = HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise CloudParseException(f"Magic inválido: {magic!r}")
    if version != VERSION:
        raise CloudParseException(f"Versión no soportada: {version}")

    expected = HEADER.size + n_points * ambient_dim * 8
    if len(data) != expected:
        raise CloudParseException(
            f"Tamaño inválido: se esperaban {expected} bytes para N={n_points}, m={ambient_dim}, hay {len(data)}"
        )
    if n_points < 2:
        raise CloudValidationException(f"La nube debe tener al menos 2 puntos, tiene {n_points}")

    values = np.frombuffer(data, dtype="<f8", count=n_points * ambient_dim, offset=HEADER.size)
    return values.reshape(n_points, ambient_dim).astype(np.float64)

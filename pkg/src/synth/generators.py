"""
Datasets sintéticos de prueba: Swiss Roll, embebidos lineales, cubo
unitario y esfera. Cada llamada es secuencial y depende solo de la semilla.
"""

import numpy as np

from src.errors import ConfigurationException
from src.models.generator import GeneratorSpec
from src.models.point_cloud import PointCloud, RandomSource
from src.utils.logging import setup_logger

logger = setup_logger(__name__)


def swiss_roll_map(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """(x, y) -> (x cos 2 pi y, y, x sin 2 pi y)"""
    angle = 2.0 * np.pi * y
    return np.column_stack((x * np.cos(angle), y, x * np.sin(angle)))


def gen_swiss_roll(n: int, rng: RandomSource) -> PointCloud:
    """
    Swiss Roll: imagen de una muestra uniforme de [0,1]^2 en R^3.

    Args:
        n: Número de puntos (>= 2)
        rng: Fuente aleatoria

    Returns:
        PointCloud: n x 3
    """
    uv = rng.generator().random((n, 2))
    return PointCloud(swiss_roll_map(uv[:, 0], uv[:, 1]), label="swiss_roll")


def random_orthonormal(ambient_dim: int, intrinsic_dim: int, generator: np.random.Generator) -> np.ndarray:
    """
    Matriz D x d con columnas ortonormales: QR de una matriz gaussiana, con
    el signo de cada columna fijado por diag(R) para que sea única.
    """
    gaussian = generator.standard_normal((ambient_dim, intrinsic_dim))
    q, r = np.linalg.qr(gaussian)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


def gen_linear_embed(
    d: int,
    D: int,
    n: int,
    rng: RandomSource,
    identity_embedding: bool = False
) -> PointCloud:
    """
    Muestra uniforme de [0,1]^d embebida linealmente en R^D.

    La muestra u se sortea antes que la matriz Q: con identity_embedding
    (d = D) el resultado es exactamente gen_unit_cube(d, n) con la misma semilla.

    Args:
        d: Dimensión intrínseca
        D: Dimensión ambiente (>= d)
        n: Número de puntos
        rng: Fuente aleatoria
        identity_embedding: Usar Q = identidad (requiere d = D)

    Returns:
        PointCloud: n x D con puntos Q u
    """
    if identity_embedding and d != D:
        raise ConfigurationException("identity_embedding requiere d = D")
    generator = rng.generator()
    sample = generator.random((n, d))
    if identity_embedding:
        return PointCloud(sample, label=f"linear_{d}_{D}")
    q = random_orthonormal(D, d, generator)
    return PointCloud(sample @ q.T, label=f"linear_{d}_{D}")


def gen_unit_cube(d: int, n: int, rng: RandomSource) -> PointCloud:
    """n puntos uniformes en [0,1]^d"""
    return PointCloud(rng.generator().random((n, d)), label=f"unit_cube_{d}")


def gen_sphere_surface(D: int, n: int, rng: RandomSource) -> PointCloud:
    """n puntos uniformes sobre S^{D-1} (gaussianas normalizadas)"""
    gaussian = rng.generator().standard_normal((n, D))
    norms = np.linalg.norm(gaussian, axis=1, keepdims=True)
    return PointCloud(gaussian / norms, label=f"sphere_{D}")


def generate(spec: GeneratorSpec) -> PointCloud:
    """
    Genera el dataset descrito por spec.

    Args:
        spec: Tipo, dimensiones, tamaño y semilla

    Returns:
        PointCloud: Nube generada (bit a bit igual para specs iguales)
    """
    rng = RandomSource(seed=spec.seed)
    if spec.kind == "swiss_roll":
        cloud = gen_swiss_roll(spec.n_samples, rng)
    elif spec.kind == "linear_embed":
        cloud = gen_linear_embed(
            spec.intrinsic_dim, spec.ambient_dim, spec.n_samples, rng, spec.identity_embedding
        )
    elif spec.kind == "unit_cube":
        cloud = gen_unit_cube(spec.intrinsic_dim, spec.n_samples, rng)
    else:
        cloud = gen_sphere_surface(spec.ambient_dim, spec.n_samples, rng)
    logger.info("Generado %s: N=%d, m=%d, semilla=%d", spec.kind, cloud.n_points, cloud.ambient_dim, spec.seed)
    return cloud

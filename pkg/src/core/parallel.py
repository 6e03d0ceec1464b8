from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

import numpy as np

from src.config import Settings

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(threads: Optional[int] = None) -> int:
    """
    Número de workers: explícito > DIMEST_THREADS > os.cpu_count().

    Args:
        threads: Valor explícito (None para usar el entorno)

    Returns:
        int: Workers (al menos 1)
    """
    return Settings.from_env(threads=threads).threads


def map_ordered(func: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """
    Aplica func a cada item en un pool de threads conservando el orden.

    El resultado nunca depende del orden de planificación.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(func, items))


def index_chunks(n_items: int, n_chunks: int) -> List[np.ndarray]:
    """Parte range(n_items) en a lo sumo n_chunks bloques contiguos no vacíos"""
    n_chunks = max(1, min(n_chunks, n_items))
    return [chunk for chunk in np.array_split(np.arange(n_items), n_chunks) if chunk.size]

from typing import List, Optional, Tuple

from src.models.dimension_scan import DimensionCandidate


class DimensionSelectionPolicy:
    """
    Regla de selección de la dimensión a partir de los candidatos.

    Se buscan simultáneamente A1^2 = A2 y D_n mínimo: entre los candidatos
    con |A1^2/A2 - 1| <= tolerancia se toma el de menor D_n (confianza
    alta); si ninguno coincide en momentos, el menor D_n global (confianza
    baja). Los empates en D_n los gana el n más chico.
    """

    def __init__(self, moment_tolerance: float = 0.2):
        """
        Args:
            moment_tolerance: Tolerancia relativa de la igualdad de momentos
        """
        self.moment_tolerance = moment_tolerance

    def check_moment_match(self, candidate: DimensionCandidate) -> bool:
        """True si |A1^2/A2 - 1| <= tolerancia"""
        if candidate.moment_ratio is None:
            return False
        return abs(candidate.moment_ratio - 1.0) <= self.moment_tolerance

    def select(self, candidates: List[DimensionCandidate]) -> Tuple[Optional[int], str, bool]:
        """
        Aplica la regla de selección.

        Args:
            candidates: Candidatos del barrido (rango contiguo de n)

        Returns:
            Tuple: (n elegido o None, confianza "high"/"low", hubo coincidencia de momentos)
        """
        if not candidates:
            return None, "low", False

        matching = [c for c in candidates if self.check_moment_match(c)]
        pool = matching or candidates
        best = min(pool, key=lambda c: (c.ks, c.n))
        return best.n, ("high" if matching else "low"), bool(matching)

from typing import Optional


class AgreementPolicy:
    """
    Coherencia entre los dos métodos de estimación.

    Los métodos concuerdan si |pendiente de Minkowski - n seleccionado| <= tolerancia.
    """

    def __init__(self, tolerance: float = 1.0):
        """
        Args:
            tolerance: Banda de acuerdo en unidades de dimensión
        """
        if tolerance < 0:
            raise ValueError("La tolerancia de acuerdo no puede ser negativa")
        self.tolerance = tolerance

    def difference(self, minkowski_dimension: float, selected_n: Optional[int]) -> Optional[float]:
        """Diferencia absoluta entre ambas estimaciones (None si no hubo selección)"""
        if selected_n is None:
            return None
        return abs(minkowski_dimension - selected_n)

    def check_agreement(self, minkowski_dimension: float, selected_n: Optional[int]) -> bool:
        """
        Verifica si ambas estimaciones son coherentes.

        Returns:
            bool: True si la diferencia cae dentro de la banda
        """
        difference = self.difference(minkowski_dimension, selected_n)
        return difference is not None and difference <= self.tolerance

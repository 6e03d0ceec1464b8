from typing import List

from src.models.box_count import BoxCountCurve, SlopeFit

LOW_R_SQUARED = 0.99


class FitQualityPolicy:
    """
    Política de calidad del ajuste de la región lineal.

    Traduce la curva y el ajuste elegido en flags que advierten sobre
    resultados poco confiables, sin alterar la estimación.
    """

    def __init__(self, min_window: int = 5, low_r_squared: float = LOW_R_SQUARED):
        """
        Args:
            min_window: Tamaño mínimo de ventana configurado
            low_r_squared: Umbral debajo del cual el ajuste es poco lineal
        """
        self.min_window = min_window
        self.low_r_squared = low_r_squared

    def check_saturation_excluded(self, curve: BoxCountCurve) -> bool:
        """True si alguna entrada de la curva alcanzó N(r) = N"""
        return any(n == curve.n_points for n in curve.counts)

    def check_short_region(self, fit: SlopeFit) -> bool:
        """True si la ventana elegida tiene exactamente el tamaño mínimo"""
        return fit.window_length == self.min_window

    def check_low_r_squared(self, fit: SlopeFit) -> bool:
        """True si r^2 < umbral"""
        return fit.r_squared < self.low_r_squared

    def flags(self, curve: BoxCountCurve, fit: SlopeFit) -> List[str]:
        """
        Lista ordenada de flags de calidad.

        Returns:
            List[str]: Subconjunto de saturated_region_excluded,
                       short_linear_region, low_r_squared
        """
        flags = []
        if self.check_saturation_excluded(curve):
            flags.append("saturated_region_excluded")
        if self.check_short_region(fit):
            flags.append("short_linear_region")
        if self.check_low_r_squared(fit):
            flags.append("low_r_squared")
        return flags

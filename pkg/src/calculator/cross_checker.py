from typing import Optional

from src.estimators.boxcount import estimate_minkowski
from src.estimators.expfit import estimate_probabilistic
from src.models.box_count import MinkowskiEstimate
from src.models.configs import MinkowskiConfig, ProbabilisticConfig
from src.models.crosscheck import CrossCheckResult
from src.models.dimension_scan import DimensionScanResult
from src.models.point_cloud import PointCloud
from src.policies.agreement_policy import AgreementPolicy
from src.utils.logging import setup_logger

logger = setup_logger(__name__)


class DimensionCrossChecker:
    """
    Aplica los dos métodos de estimación y compara sus resultados.

    Garantiza determinismo: misma nube y misma configuración siempre
    producen el mismo veredicto, sin importar el número de workers.

    Attributes:
        agreement_policy: Banda de acuerdo entre métodos
    """

    def __init__(self, agreement_policy: Optional[AgreementPolicy] = None):
        """Inicializa el verificador con la política de acuerdo"""
        self.agreement_policy = agreement_policy or AgreementPolicy()

    def crosscheck(
        self,
        cloud: PointCloud,
        minkowski_config: Optional[MinkowskiConfig] = None,
        probabilistic_config: Optional[ProbabilisticConfig] = None,
        workers: Optional[int] = None
    ) -> CrossCheckResult:
        """
        Estima la dimensión con ambos métodos.

        Proceso:
        1. Conteo de cajas (pendiente de Minkowski)
        2. Método geométrico-probabilístico (n seleccionado)
        3. Veredicto con la política de acuerdo
        4. Detalle legible

        Args:
            cloud: Nube de puntos
            minkowski_config: Parámetros del conteo de cajas
            probabilistic_config: Parámetros del método probabilístico
            workers: Workers para ambos estimadores

        Returns:
            CrossCheckResult: Ambas estimaciones y el veredicto

        Raises:
            DimestException: Los errores de cada estimador se propagan
        """
        minkowski = estimate_minkowski(cloud, minkowski_config, workers)
        scan = estimate_probabilistic(cloud, probabilistic_config, workers)

        agrees = self.agreement_policy.check_agreement(minkowski.dimension, scan.selected_n)
        difference = self.agreement_policy.difference(minkowski.dimension, scan.selected_n)
        verdict = "agree" if agrees else "disagree"
        if not agrees:
            logger.warning(
                "Los métodos no concuerdan: Minkowski=%.4f, n=%s (tolerancia %.2f)",
                minkowski.dimension, scan.selected_n, self.agreement_policy.tolerance
            )

        return CrossCheckResult(
            minkowski_dimension=minkowski.dimension,
            selected_n=scan.selected_n,
            confidence=scan.confidence,
            difference=difference,
            tolerance=self.agreement_policy.tolerance,
            verdict=verdict,
            detail=self._generate_detail(minkowski, scan, verdict),
            minkowski=minkowski.to_payload(),
            probabilistic=scan.to_payload()
        )

    def _generate_detail(
        self,
        minkowski: MinkowskiEstimate,
        scan: DimensionScanResult,
        verdict: str
    ) -> str:
        """
        Resumen de ambas estimaciones.

        Returns:
            str: Detalle en formato legible
        """
        detail_parts = [
            f"Minkowski: {minkowski.dimension:.4f} (r2={minkowski.fit.r_squared:.5f})",
            f"Probabilístico: n = {scan.selected_n} (confianza={scan.confidence})",
        ]
        if scan.warnings:
            detail_parts.append(f"Advertencias: {', '.join(scan.warnings)}")
        detail_parts.append(f"Veredicto: {verdict}")
        return " | ".join(detail_parts)

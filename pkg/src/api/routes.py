from typing import Callable, Dict, List, TypeVar

from fastapi import APIRouter, HTTPException, status
from pydantic import BaseModel, Field, ValidationError

from src.calculator.cross_checker import DimensionCrossChecker
from src.errors import DimestException, SymmetryCheckException
from src.estimators.baselines import estimate_correlation_dimension
from src.estimators.boxcount import estimate_minkowski
from src.estimators.expfit import estimate_probabilistic
from src.models.configs import CorrelationConfig, MinkowskiConfig, ProbabilisticConfig
from src.models.generator import GeneratorSpec
from src.models.point_cloud import PointCloud
from src.policies.agreement_policy import AgreementPolicy
from src.synth.generators import generate
from src.utils.logging import setup_logger

logger = setup_logger(__name__)
router = APIRouter()

T = TypeVar("T")


# Modelos de request para la API
class CloudRequest(BaseModel):
    """Nube de puntos en memoria"""
    points: List[List[float]] = Field(..., description="Filas de la nube (N x m)")
    label: str = Field("", description="Etiqueta de la nube")


class MinkowskiRequest(CloudRequest):
    config: MinkowskiConfig = Field(default_factory=MinkowskiConfig)


class ProbabilisticRequest(CloudRequest):
    config: ProbabilisticConfig = Field(default_factory=ProbabilisticConfig)


class CorrelationRequest(CloudRequest):
    config: CorrelationConfig = Field(default_factory=CorrelationConfig)


class CrossCheckRequest(CloudRequest):
    minkowski: MinkowskiConfig = Field(default_factory=MinkowskiConfig)
    probabilistic: ProbabilisticConfig = Field(default_factory=ProbabilisticConfig)
    tolerance: float = Field(1.0, ge=0.0, description="Banda de acuerdo")


class GeneratedCloudResponse(BaseModel):
    """Response de la generación de un dataset"""
    points: List[List[float]]
    n_points: int
    ambient_dim: int
    spec: GeneratorSpec


def _run(action: Callable[[], T]) -> T:
    """Ejecuta un estimador traduciendo sus errores a respuestas HTTP"""
    try:
        return action()
    except SymmetryCheckException as e:
        detail: Dict = {"message": str(e)}
        if e.report is not None:
            detail["report"] = e.report.model_dump()
        raise HTTPException(status_code=status.HTTP_409_CONFLICT, detail=detail)
    except (DimestException, ValidationError) as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))


def _cloud(request: CloudRequest) -> PointCloud:
    return _run(lambda: PointCloud(request.points, label=request.label))


@router.post(
    "/minkowski",
    tags=["Estimadores"],
    summary="Dimensión de Minkowski por conteo de cajas"
)
def minkowski(request: MinkowskiRequest):
    """Curva log N(r) contra -log r, ajuste de la región lineal y flags de calidad"""
    cloud = _cloud(request)
    return _run(lambda: estimate_minkowski(cloud, request.config).to_payload())


@router.post(
    "/probabilistic",
    tags=["Estimadores"],
    summary="Método geométrico-probabilístico"
)
def probabilistic(request: ProbabilisticRequest):
    """
    Barrido de candidatos n con A1^2, A2 y K-S.

    Responde 409 si la nube no es rotacionalmente simétrica y se pidió aplanamiento.
    """
    cloud = _cloud(request)
    return _run(lambda: estimate_probabilistic(cloud, request.config).to_payload())


@router.post(
    "/correlation",
    tags=["Estimadores"],
    summary="Dimensión de correlación"
)
def correlation(request: CorrelationRequest):
    """Integral de correlación sobre un barrido de r y su pendiente log-log"""
    cloud = _cloud(request)
    return _run(lambda: estimate_correlation_dimension(cloud, request.config).to_payload())


@router.post(
    "/crosscheck",
    tags=["Estimadores"],
    summary="Verificación cruzada de ambos métodos"
)
def crosscheck(request: CrossCheckRequest):
    """Ambas estimaciones y el veredicto agree/disagree"""
    cloud = _cloud(request)
    checker = DimensionCrossChecker(AgreementPolicy(request.tolerance))
    return _run(lambda: checker.crosscheck(cloud, request.minkowski, request.probabilistic).to_payload())


@router.post(
    "/generate",
    response_model=GeneratedCloudResponse,
    tags=["Datasets"],
    summary="Generar un dataset sintético"
)
def generate_cloud(spec: GeneratorSpec):
    """Swiss Roll, embebido lineal, cubo unitario o esfera"""
    cloud = _run(lambda: generate(spec))
    logger.info("Dataset generado por API: %s", spec.kind)
    return GeneratedCloudResponse(
        points=cloud.points.tolist(),
        n_points=cloud.n_points,
        ambient_dim=cloud.ambient_dim,
        spec=spec
    )

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from src.api.routes import router
from src.config import TOOL_VERSION

app = FastAPI(
    title="Intrinsic Dimension Estimator API",
    description="""
    Estimación de la dimensión intrínseca de nubes de puntos en R^m.

    ## Métodos

    * **Conteo de cajas** (dimensión de Minkowski para datos dispersos)
    * **Geométrico-probabilístico** (ley exponencial de V^n(d_min) con aplanamiento)
    * **Integral de correlación** (método de comparación)
    * **Verificación cruzada** de ambos métodos principales

    ## Garantías

    * Resultados deterministas para una semilla dada
    * Independientes del número de workers
    """,
    version=TOOL_VERSION
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(router, prefix="/api/v1")


@app.get("/", tags=["Health"])
async def root():
    """Endpoint raíz para verificar que la API está funcionando"""
    return {
        "message": "Intrinsic Dimension Estimator API",
        "version": TOOL_VERSION,
        "status": "running",
        "docs": "/docs",
        "redoc": "/redoc"
    }


@app.get("/health", tags=["Health"])
async def health_check():
    """Health check endpoint"""
    return {"status": "healthy"}

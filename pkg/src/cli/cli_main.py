#!/usr/bin/env python
"""
CLI de estimación de dimensión intrínseca.

Cada comando imprime en stdout una línea de resumen con prefijo fijo y,
si se indica --out, escribe el resultado JSON (sin marcas de tiempo) y su
manifiesto <out>.manifest.json.

Códigos de salida:
    0 éxito / métodos en acuerdo
    1 error de lectura, formato o validación de la entrada
    2 argumentos o configuración inválidos
    3 curva completamente saturada
    4 simetría rotacional no verificada
    5 verificación cruzada en desacuerdo
    6 datos degenerados
"""

import argparse
import hashlib
import sys
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

# Add project root to Python path
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from pydantic import ValidationError

from src.calculator.cross_checker import DimensionCrossChecker
from src.config import TOOL_VERSION, Settings
from src.core.cloud_ops import axis_block, project_axes, subsample
from src.errors import (
    CellIndexOverflowException,
    CloudIOException,
    CloudParseException,
    CloudValidationException,
    ConfigurationException,
    DegenerateDataException,
    DimestException,
    SaturatedCurveException,
    SymmetryCheckException,
)
from src.estimators.baselines import estimate_correlation_dimension
from src.estimators.boxcount import estimate_minkowski
from src.estimators.expfit import run_probabilistic
from src.estimators.flatten import check_rotational_symmetry
from src.models.configs import CorrelationConfig, MinkowskiConfig, ProbabilisticConfig, SymmetryConfig
from src.models.generator import GeneratorSpec
from src.models.manifest import RunManifest
from src.models.point_cloud import AxisProjection, PointCloud, RandomSource
from src.policies.agreement_policy import AgreementPolicy
from src.storage.cloud_storage import infer_format, load_cloud, save_cloud
from src.storage.json_storage import JsonStorage
from src.synth.generators import generate
from src.utils.logging import set_level, setup_logger

logger = setup_logger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_USAGE = 2
EXIT_SATURATED = 3
EXIT_SYMMETRY = 4
EXIT_DISAGREE = 5
EXIT_DEGENERATE = 6

KIND_ALIASES = {
    "swiss-roll": "swiss_roll",
    "linear": "linear_embed",
    "unit-cube": "unit_cube",
    "sphere": "sphere_surface",
}


def exit_code_for(error: Exception) -> int:
    """Traduce una excepción al código de salida de la CLI"""
    if isinstance(error, (CloudIOException, CloudParseException, CloudValidationException)):
        return EXIT_INPUT
    if isinstance(error, SaturatedCurveException):
        return EXIT_SATURATED
    if isinstance(error, SymmetryCheckException):
        return EXIT_SYMMETRY
    if isinstance(error, DegenerateDataException):
        return EXIT_DEGENERATE
    if isinstance(error, (ConfigurationException, CellIndexOverflowException, ValidationError)):
        return EXIT_USAGE
    return EXIT_INPUT


def _axis_list(value: str) -> List[int]:
    """Parsea "0,1,2" a [0, 1, 2]"""
    try:
        return [int(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Lista de ejes inválida: {value!r}")


def _file_digest(path: Path) -> Optional[str]:
    """sha256 del contenido del archivo de entrada"""
    try:
        return hashlib.sha256(path.read_bytes()).hexdigest()
    except OSError:
        return None


def add_common_arguments(parser: argparse.ArgumentParser) -> None:
    """Opciones compartidas por todos los comandos"""
    parser.add_argument("--threads", type=int, default=None, help="Máximo de workers (por defecto DIMEST_THREADS o núcleos)")
    parser.add_argument("--verbose", action="store_true", help="Log a nivel INFO en stderr")
    parser.add_argument("--seed", type=int, default=0, help="Semilla de la fuente aleatoria")


def add_input_arguments(parser: argparse.ArgumentParser) -> None:
    """Entrada de la nube y transformaciones previas a la estimación"""
    parser.add_argument("input", type=Path, help="Archivo de la nube (CSV o binario DIMC)")
    parser.add_argument("--format", choices=["csv", "binary"], default=None, help="Formato (por defecto según extensión)")
    parser.add_argument("--out", type=Path, default=None, help="Archivo JSON de resultados")
    parser.add_argument("--axes", type=_axis_list, default=None, help="Ejes a conservar, p. ej. 0,1,2")
    parser.add_argument("--axis-block", choices=["first", "middle", "last"], default=None, help="Bloque contiguo de ejes")
    parser.add_argument("--block-size", type=int, default=None, help="Tamaño del bloque de ejes")
    parser.add_argument("--step", type=int, default=1, help="Tomar una de cada step filas")
    parser.add_argument("--limit", type=int, default=None, help="Máximo de filas tras el submuestreo")


def add_minkowski_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--r-min", type=float, default=None)
    parser.add_argument("--r-max", type=float, default=None)
    parser.add_argument("--steps", type=int, default=32)
    parser.add_argument("--min-window", type=int, default=5)
    parser.add_argument("--n-anchors", type=int, default=1, help="Anclas de grilla a promediar")


def add_probabilistic_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--no-flatten", action="store_true", help="Omitir simetría y aplanamiento")
    parser.add_argument("--n-min", type=int, default=1)
    parser.add_argument("--n-max", type=int, default=64)
    parser.add_argument("--moment-tol", type=float, default=0.2)
    add_symmetry_arguments(parser)


def add_symmetry_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--symmetry-dirs", type=int, default=1000)
    parser.add_argument("--symmetry-threshold", type=float, default=0.05)


def build_parser() -> argparse.ArgumentParser:
    """Construye el parser con un subcomando por operación"""
    parser = argparse.ArgumentParser(
        prog="dimest",
        description="Estimación de la dimensión intrínseca de nubes de puntos"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    gen = subparsers.add_parser("generate", help="Generar un dataset sintético")
    gen.add_argument("--kind", required=True, choices=sorted(KIND_ALIASES) + sorted(KIND_ALIASES.values()))
    gen.add_argument("--n", type=int, required=True, help="Número de puntos")
    gen.add_argument("--d", type=int, default=None, help="Dimensión intrínseca")
    gen.add_argument("--D", type=int, default=None, help="Dimensión ambiente")
    gen.add_argument("--identity", action="store_true", help="linear con d = D: embebido identidad")
    gen.add_argument("--out", type=Path, required=True)
    gen.add_argument("--format", choices=["csv", "binary"], default=None)
    add_common_arguments(gen)

    mink = subparsers.add_parser("minkowski", help="Dimensión de Minkowski por conteo de cajas")
    add_input_arguments(mink)
    add_minkowski_arguments(mink)
    add_common_arguments(mink)

    prob = subparsers.add_parser("probabilistic", help="Método geométrico-probabilístico")
    add_input_arguments(prob)
    add_probabilistic_arguments(prob)
    prob.add_argument("--dump-distances", type=Path, default=None, help="CSV con las distancias d_min")
    add_common_arguments(prob)

    corr = subparsers.add_parser("correlation", help="Dimensión de correlación (comparación)")
    add_input_arguments(corr)
    corr.add_argument("--r-min", type=float, default=None)
    corr.add_argument("--r-max", type=float, default=None)
    corr.add_argument("--steps", type=int, default=32)
    corr.add_argument("--min-window", type=int, default=5)
    corr.add_argument("--max-points", type=int, default=20000)
    add_common_arguments(corr)

    cross = subparsers.add_parser("crosscheck", help="Verificación cruzada de ambos métodos")
    add_input_arguments(cross)
    add_minkowski_arguments(cross)
    add_probabilistic_arguments(cross)
    cross.add_argument("--agree-tol", type=float, default=1.0, help="Banda de acuerdo |pendiente - n|")
    add_common_arguments(cross)

    sym = subparsers.add_parser("symmetry", help="Verificación de simetría rotacional")
    add_input_arguments(sym)
    add_symmetry_arguments(sym)
    sym.add_argument("--keep-per-direction", action="store_true")
    add_common_arguments(sym)

    return parser


def load_input(args: argparse.Namespace) -> PointCloud:
    """Carga la nube y aplica proyección de ejes y submuestreo"""
    fmt = args.format or infer_format(args.input)
    cloud = load_cloud(args.input, format=fmt)

    if args.axes is not None and args.axis_block is not None:
        raise ConfigurationException("--axes y --axis-block son excluyentes")
    if args.axes is not None:
        cloud = project_axes(cloud, AxisProjection(axis_indices=args.axes, source_label=cloud.label))
    elif args.axis_block is not None:
        if args.block_size is None:
            raise ConfigurationException("--axis-block requiere --block-size")
        cloud = project_axes(cloud, axis_block(cloud.ambient_dim, args.axis_block, args.block_size))

    if args.step != 1 or args.limit is not None:
        cloud = subsample(cloud, args.step, args.limit)
    return cloud


def minkowski_config(args: argparse.Namespace) -> MinkowskiConfig:
    return MinkowskiConfig(
        r_max=args.r_max,
        r_min=args.r_min,
        steps=args.steps,
        min_window=args.min_window,
        n_anchors=args.n_anchors,
        seed=args.seed
    )


def symmetry_config(args: argparse.Namespace) -> SymmetryConfig:
    return SymmetryConfig(
        n_directions=args.symmetry_dirs,
        threshold=args.symmetry_threshold,
        keep_per_direction=getattr(args, "keep_per_direction", False),
        seed=args.seed
    )


def probabilistic_config(args: argparse.Namespace) -> ProbabilisticConfig:
    return ProbabilisticConfig(
        flatten=not args.no_flatten,
        n_min=args.n_min,
        n_max=args.n_max,
        moment_tolerance=args.moment_tol,
        symmetry=symmetry_config(args)
    )


def cmd_generate(args: argparse.Namespace) -> Tuple[Dict, Dict, str, int]:
    """Genera un dataset sintético y lo guarda en --out"""
    kind = KIND_ALIASES.get(args.kind, args.kind)
    d, D = args.d, args.D
    if kind == "swiss_roll":
        d, D = d or 2, D or 3
    elif kind == "unit_cube":
        d = d or D
        D = D or d
    elif kind == "sphere_surface" and D is not None and d is None:
        d = D - 1
    if d is None or D is None:
        raise ConfigurationException(f"--kind {args.kind} requiere --d y/o --D")

    spec = GeneratorSpec(
        kind=kind,
        intrinsic_dim=d,
        ambient_dim=D,
        n_samples=args.n,
        seed=args.seed,
        identity_embedding=args.identity
    )
    cloud = generate(spec)
    save_cloud(cloud, args.out, format=args.format or infer_format(args.out))
    summary = f"generated {kind}: N={cloud.n_points}, m={cloud.ambient_dim} -> {args.out}"
    return spec.model_dump(), {}, summary, EXIT_OK


def cmd_minkowski(args: argparse.Namespace) -> Tuple[Dict, Dict, str, int]:
    """Conteo de cajas sobre la nube de entrada"""
    config = minkowski_config(args)
    cloud = load_input(args)
    estimate = estimate_minkowski(cloud, config, args.threads)
    fit = estimate.fit
    summary = (
        f"dimension ≈ {estimate.dimension:.4f} "
        f"(r²={fit.r_squared:.5f}, window=[{fit.window[0]}, {fit.window[1]}))"
    )
    return config.model_dump(), estimate.to_payload(), summary, EXIT_OK


def cmd_probabilistic(args: argparse.Namespace) -> Tuple[Dict, Dict, str, int]:
    """Método geométrico-probabilístico sobre la nube de entrada"""
    config = probabilistic_config(args)
    cloud = load_input(args)
    scan, distances = run_probabilistic(cloud, config, args.threads)
    if args.dump_distances is not None:
        JsonStorage().save_distances_csv(args.dump_distances, distances)
    summary = f"selected n = {scan.selected_n} (confidence={scan.confidence})"
    if scan.warnings:
        summary += f" warnings: {', '.join(scan.warnings)}"
    return config.model_dump(), scan.to_payload(), summary, EXIT_OK


def cmd_correlation(args: argparse.Namespace) -> Tuple[Dict, Dict, str, int]:
    """Dimensión de correlación sobre la nube de entrada"""
    config = CorrelationConfig(
        r_max=args.r_max,
        r_min=args.r_min,
        steps=args.steps,
        min_window=args.min_window,
        max_points=args.max_points,
        seed=args.seed
    )
    cloud = load_input(args)
    curve = estimate_correlation_dimension(cloud, config, args.threads)
    fit = curve.fit
    summary = (
        f"dimension ≈ {curve.dimension:.4f} "
        f"(r²={fit.r_squared:.5f}, window=[{fit.window[0]}, {fit.window[1]}))"
    )
    return config.model_dump(), curve.to_payload(), summary, EXIT_OK


def cmd_crosscheck(args: argparse.Namespace) -> Tuple[Dict, Dict, str, int]:
    """Ambos métodos y el veredicto; exit 5 en desacuerdo"""
    mink_config = minkowski_config(args)
    prob_config = probabilistic_config(args)
    checker = DimensionCrossChecker(AgreementPolicy(args.agree_tol))
    cloud = load_input(args)
    result = checker.crosscheck(cloud, mink_config, prob_config, args.threads)
    difference = "n/a" if result.difference is None else f"{result.difference:.4f}"
    summary = (
        f"crosscheck: {result.verdict} (minkowski={result.minkowski_dimension:.4f}, "
        f"n={result.selected_n}, |diff|={difference}, tol={result.tolerance})"
    )
    config = {
        "minkowski": mink_config.model_dump(),
        "probabilistic": prob_config.model_dump(),
        "agree_tol": args.agree_tol,
    }
    return config, result.to_payload(), summary, EXIT_OK if result.agrees else EXIT_DISAGREE


def cmd_symmetry(args: argparse.Namespace) -> Tuple[Dict, Dict, str, int]:
    """Verificación de simetría rotacional sola; exit 4 si falla"""
    config = symmetry_config(args)
    cloud = load_input(args)
    report = check_rotational_symmetry(
        cloud,
        n_directions=config.n_directions,
        threshold=config.threshold,
        rng=RandomSource(seed=config.seed),
        keep_per_direction=config.keep_per_direction,
        workers=args.threads
    )
    verdict = "passed" if report.passed else "failed"
    summary = f"symmetry: {verdict} (max_ks={report.max_ks:.4f}, threshold={report.threshold})"
    return config.model_dump(), report.model_dump(), summary, EXIT_OK if report.passed else EXIT_SYMMETRY


COMMANDS: Dict[str, Callable[[argparse.Namespace], Tuple[Dict, Dict, str, int]]] = {
    "generate": cmd_generate,
    "minkowski": cmd_minkowski,
    "probabilistic": cmd_probabilistic,
    "correlation": cmd_correlation,
    "crosscheck": cmd_crosscheck,
    "symmetry": cmd_symmetry,
}


def write_outputs(args: argparse.Namespace, config: Dict, payload: Dict, duration: float) -> None:
    """Escribe el resultado (si corresponde) y el manifiesto"""
    storage = JsonStorage()
    if args.command != "generate":
        storage.save_result(args.out, payload)
    input_path = getattr(args, "input", None)
    manifest = RunManifest(
        command=args.command,
        config={**config, "threads": args.threads},
        seed=args.seed,
        input_digest=_file_digest(input_path) if input_path is not None else None,
        tool_version=TOOL_VERSION,
        duration_seconds=duration
    )
    storage.save_manifest(args.out, manifest)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Punto de entrada de la CLI.

    Args:
        argv: Argumentos (por defecto sys.argv[1:])

    Returns:
        int: Código de salida
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    start = time.perf_counter()
    try:
        settings = Settings.from_env(threads=args.threads)
        set_level("INFO" if args.verbose else settings.log_level)
        config, payload, summary, code = COMMANDS[args.command](args)
        if args.out is not None:
            write_outputs(args, config, payload, time.perf_counter() - start)
    except (DimestException, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return exit_code_for(e)

    print(summary)
    return code


if __name__ == "__main__":
    sys.exit(main())

from typing import Optional


class DimestException(Exception):
    """Excepción base para todos los errores de estimación de dimensión"""
    pass


class CloudValidationException(DimestException):
    """
    La nube de puntos no cumple sus invariantes (N >= 2, valores finitos,
    índices de ejes válidos).

    Attributes:
        row: Fila del valor inválido (si aplica)
        column: Columna del valor inválido (si aplica)
    """

    def __init__(self, message: str, row: Optional[int] = None, column: Optional[int] = None):
        super().__init__(message)
        self.row = row
        self.column = column


class CloudParseException(DimestException):
    """
    Error de formato al leer una nube desde archivo.

    Attributes:
        line: Número de línea (1-based) donde falló el parseo
    """

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message)
        self.line = line


class CloudIOException(DimestException):
    """Error del sistema de archivos; la causa original queda encadenada"""
    pass


class ConfigurationException(DimestException):
    """Combinación de parámetros inválida (r_min >= r_max, steps < 8, ...)"""
    pass


class SaturatedCurveException(DimestException):
    """Ninguna ventana de la curva está libre de saturación"""

    def __init__(self):
        super().__init__("curve fully saturated; increase r_max or reduce steps density")


class DegenerateDataException(DimestException):
    """Datos degenerados: distancias nulas, nube colapsada o barrido vacío"""
    pass


class CellIndexOverflowException(DimestException):
    """El índice de celda no cabe en un entero de 64 bits"""
    pass


class SymmetryCheckException(DimestException):
    """
    La verificación de simetría rotacional falló y se pidió flattening.

    Attributes:
        report: UniformityReport con el resultado de la verificación
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report

"""
Jerarquía de excepciones del paquete y su traducción a códigos de salida del CLI.

Códigos: 0 éxito, 1 error de validación, 2 divergencia en tiempo de ejecución, 3 I/O.
"""

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_DIVERGENCE = 2
EXIT_IO = 3


class GradPushError(Exception):
    """Base de todos los errores propios del paquete."""

    exit_code = EXIT_VALIDATION


class ConfigError(GradPushError, ValueError):
    """Configuración inválida. `field` indica la ruta del campo (p. ej. 'graph.hub_b')."""

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class GraphError(GradPushError, ValueError):
    """Grafo corrupto o parámetros de generador inválidos."""


class ObjectiveError(GradPushError, ValueError):
    """Objetivo mal definido (p. ej. Q no simétrica definida positiva)."""


class ConnectivityError(GradPushError, ValueError):
    """La secuencia no es B-fuertemente conexa en el horizonte comprobado."""

    def __init__(self, message: str, window: int | None = None):
        self.window = window
        super().__init__(message)


class SpectralError(GradPushError):
    """Fallo al calcular valores singulares o constantes no representables en float64."""


class NumericalBreakdownError(GradPushError):
    """Algún peso y_i cayó por debajo del umbral de underflow."""

    exit_code = EXIT_DIVERGENCE


class DivergenceError(GradPushError):
    """Valores no finitos o por encima del límite de divergencia."""

    exit_code = EXIT_DIVERGENCE

    def __init__(self, message: str, t: int):
        self.t = t
        super().__init__(message)


class UnsoundInputsError(GradPushError, ValueError):
    """Entradas de la cota que la harían inválida (p. ej. D menor que la norma medida)."""


class NonPositiveMetricError(GradPushError, ValueError):
    """La métrica a ajustar tiene valores <= 0 dentro de la ventana."""


class TraceIOError(GradPushError):
    """Fallo de lectura/escritura de trazas; siempre incluye la ruta."""

    exit_code = EXIT_IO

    def __init__(self, path, cause: Exception):
        self.path = path
        super().__init__(f"{path}: {cause}")

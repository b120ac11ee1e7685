from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

MetricName = Literal[
    "ln_error_zhat",
    "ln_error_z",
    "dist_z",
    "dist_zhat",
    "gap_zhat",
    "theorem1_lhs",
    "zhat",
    "consensus_residual",
    "max_iterate_norm",
    "perturbation_l1",
]
ALL_METRICS: tuple[str, ...] = MetricName.__args__

GeneratorName = Literal[
    "cycle_plus_random",
    "alternating_stars",
    "complete",
    "directed_cycle",
    "alternating_one_way",
    "edge_list",
]


class GraphConfig(BaseModel):
    """Generador de la secuencia G(0), G(1), ... y sus parámetros."""
    model_config = ConfigDict(extra="forbid")

    generator: GeneratorName = Field(..., description="Familia de grafos.")
    seed: int | None = Field(
        default=None,
        ge=0,
        description="Semilla de cycle_plus_random. Si se omite, cada run deriva la suya de la semilla maestra.",
    )
    hub_a: int | None = Field(default=None, ge=0, description="Hub de los t pares (alternating_stars / alternating_one_way).")
    hub_b: int | None = Field(default=None, ge=0, description="Hub de los t impares (alternating_stars / alternating_one_way).")
    path: str | None = Field(default=None, description="Fichero 't src dst' (solo edge_list).")
    B: int | None = Field(default=None, ge=1, description="B declarado; solo se usa para edge_list.")

    @model_validator(mode="after")
    def generator_params(self) -> "GraphConfig":
        if self.generator == "alternating_stars" and (self.hub_a is None or self.hub_b is None):
            raise ValueError("alternating_stars necesita hub_a y hub_b")
        if self.hub_a is not None and self.hub_a == self.hub_b:
            raise ValueError("hub_a y hub_b deben ser distintos")
        if self.generator == "edge_list" and not self.path:
            raise ValueError("edge_list necesita path")
        return self


class ObjectiveConfig(BaseModel):
    """Preset de objetivo y oráculo de gradiente."""
    model_config = ConfigDict(extra="forbid")

    preset: Literal["quadratic_estimation", "random_quadratic"] = Field(..., description="Familia de objetivos.")
    seed: int | None = Field(default=None, ge=0, description="Semilla del objetivo; por defecto la semilla maestra.")
    theta_hat: float = Field(default=0.0, description="Parámetro verdadero θ̂ (quadratic_estimation).")
    noise_bound: float = Field(default=0.0, ge=0.0, description="Cota c de ‖N_i(u)‖; 0 = gradiente exacto.")
    noise_law: Literal["uniform_ball", "gaussian_ball"] = Field(default="uniform_ball", description="Ley del ruido.")
    condition: float = Field(default=10.0, ge=1.0, description="Cota superior de los autovalores de Q_i (random_quadratic).")


class ScheduleConfig(BaseModel):
    """Regla para elegir p en α(t) = p/t."""
    model_config = ConfigDict(extra="forbid")

    rule: Literal["theorem1", "conservative_min", "explicit"] = Field(default="theorem1", description="Regla de elección de p.")
    p: float | None = Field(default=None, gt=0.0, description="p explícito (solo rule=explicit).")
    consensus_rounds: int | None = Field(default=None, ge=1, description="Rondas de min-consenso; por defecto n·B.")

    @model_validator(mode="after")
    def explicit_needs_p(self) -> "ScheduleConfig":
        if self.rule == "explicit" and self.p is None:
            raise ValueError("rule=explicit necesita p > 0")
        if self.rule != "explicit" and self.p is not None:
            raise ValueError("p solo se admite con rule=explicit")
        return self


class ExperimentConfig(BaseModel):
    """Documento YAML completo de un experimento. Las claves desconocidas son error."""
    model_config = ConfigDict(extra="forbid")

    n: int = Field(..., ge=1, description="Número de nodos.")
    d: int = Field(default=1, ge=1, description="Dimensión de z.")
    horizon: int = Field(default=200, ge=2, description="Número de pasos T.")
    runs: int = Field(default=25, ge=1, description="Runs Monte Carlo R.")
    seed: int = Field(default=0, ge=0, description="Semilla maestra.")
    n_jobs: int | None = Field(default=None, description="Procesos en paralelo; por defecto GRADPUSH_N_JOBS.")
    init: Literal["gaussian", "zeros"] = Field(default="gaussian", description="Ley de x_i(0).")
    tracked_nodes: int | list[int] = Field(
        default=5,
        description="Cuántos nodos seguir (elegidos con la semilla) o la lista explícita.",
    )
    metrics: list[MetricName] = Field(default_factory=lambda: list(ALL_METRICS), description="Métricas a registrar.")
    output: str = Field(default="traces.csv", description="Ruta del CSV de trazas.")
    graph: GraphConfig
    objective: ObjectiveConfig
    schedule: ScheduleConfig = Field(default_factory=ScheduleConfig)

    @model_validator(mode="after")
    def consistent_dimensions(self) -> "ExperimentConfig":
        if self.objective.preset == "quadratic_estimation" and self.d != 1:
            raise ValueError("quadratic_estimation es escalar: d debe ser 1")
        for hub in (self.graph.hub_a, self.graph.hub_b):
            if hub is not None and hub >= self.n:
                raise ValueError(f"hub {hub} fuera de rango para n={self.n}")
        if self.graph.generator == "alternating_one_way" and self.n < 2:
            raise ValueError("alternating_one_way necesita n >= 2")
        if isinstance(self.tracked_nodes, int):
            if self.tracked_nodes < 1:
                raise ValueError("tracked_nodes debe ser >= 1")
        elif not self.tracked_nodes or any(i < 0 or i >= self.n for i in self.tracked_nodes):
            raise ValueError(f"tracked_nodes debe ser una lista no vacía de nodos en [0, {self.n})")
        return self


class ConnectivityResponse(BaseModel):
    """Salida de `gradpush verify-graph`."""
    ok: bool = Field(..., description="True si todas las ventanas son fuertemente conexas.")
    generator: str
    n: int
    B: int
    horizon: int
    windows_checked: int
    first_failing_window: int | None = Field(default=None, description="Índice k de la primera ventana [kB, (k+1)B) que falla.")
    delta: float | None = Field(default=None, description="δ, si la secuencia pasa.")
    lam: float | None = Field(default=None, description="λ, si la secuencia pasa.")
    method: str | None = Field(default=None, description="general_bound, regular_bound o empirical_sigma2.")


class BoundInputs(BaseModel):
    """Entradas con las que se evaluó el lado derecho."""
    D: float
    L: float = Field(..., description="ΣL_j.")
    L_j: list[float]
    c_j: list[float]
    mu_j: list[float]
    B_j: list[float] = Field(..., description="√d(L_j + c_j).")
    p: float
    delta: float
    lam: float
    q2: float = Field(..., description="Σ(L_j + c_j)².")
    x0_l1: float = Field(..., description="Σ‖x_j(0)‖₁, el mayor entre los runs.")
    n: int
    d: int
    measured_max_norm: float = Field(..., description="max ‖z_i(t)‖ medido en las trazas.")


class BoundRow(BaseModel):
    tau: int
    lhs_mean: float = Field(..., description="Media Monte Carlo del lado izquierdo (peor nodo seguido).")
    lhs_se: float = Field(..., description="Error estándar de lhs_mean.")
    lhs_conservative: float = Field(..., description="lhs_mean + 2·lhs_se.")
    rhs_initial: float = Field(..., description="Término de condiciones iniciales.")
    rhs_disagreement: float = Field(..., description="Término de desacuerdo (1 + ln(τ-1)).")
    rhs_noise: float = Field(..., description="(p/τ)·q².")
    rhs_total: float
    holds: bool = Field(..., description="lhs_conservative <= rhs_total.")


class BoundReport(BaseModel):
    """Salida de `gradpush bound`."""
    inputs: BoundInputs
    rows: list[BoundRow]
    runs: int
    holds: bool = Field(..., description="True si la cota se cumple en todos los τ.")


class RateFitResponse(BaseModel):
    """Salida de `gradpush fit`: ajuste ln(métrica) = intercept + slope·ln t."""
    metric: str
    from_t: int
    to_t: int
    points: int
    slope: float
    slope_stderr: float
    intercept: float
    intercept_stderr: float
    r_squared: float


class RunSummary(BaseModel):
    """Salida de `gradpush run`."""
    output: str
    runs: int
    horizon: int
    n: int
    tracked_nodes: list[int]
    diverged_runs: list[int] = Field(default_factory=list)
    p: float
    z_star: list[float]
    elapsed_seconds: float


class AssumptionViolation(BaseModel):
    kind: Literal["strong_convexity", "lipschitz", "finite_difference"]
    x: list[float]
    y: list[float]
    slack: float


class AssumptionReport(BaseModel):
    """Certificación empírica de convexidad fuerte, Lipschitz y gradiente analítico."""
    objective: str
    trials: int
    radius: float
    mu: float
    M: float | None = None
    strong_convexity_min_slack: float
    lipschitz_min_slack: float | None = None
    finite_difference_max_error: float
    violation_count: int
    violations: list[AssumptionViolation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

from gradpush.objectives.functions import (
    ObjectiveSpec,
    QuadraticForm,
    general_quadratic,
    gradient_norm_bound,
    quadratic_plus_l1,
)
from gradpush.objectives.network import (
    GradientBatch,
    NetworkObjective,
    estimation_objective,
    network_objective,
    quadratic_estimation_preset,
    random_quadratic_preset,
)
from gradpush.objectives.oracle import GradientSample, noisy_gradient, sample_noise

__all__ = [
    "GradientBatch",
    "GradientSample",
    "NetworkObjective",
    "ObjectiveSpec",
    "QuadraticForm",
    "estimation_objective",
    "general_quadratic",
    "gradient_norm_bound",
    "network_objective",
    "noisy_gradient",
    "quadratic_estimation_preset",
    "quadratic_plus_l1",
    "random_quadratic_preset",
    "sample_noise",
]

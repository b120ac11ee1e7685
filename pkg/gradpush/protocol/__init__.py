from gradpush.protocol.bounds import (
    DisagreementBound,
    corollary2_cumulative_bound,
    disagreement_bound,
    lemma1_bound,
)
from gradpush.protocol.optimizer import (
    OptimizerState,
    running_weight,
    sgp_step,
    update_weighted_average,
)
from gradpush.protocol.pushsum import (
    PushSumState,
    consensus_residual,
    l1_norm,
    mix,
    network_average,
    pushsum_step,
    ratio_bound,
)
from gradpush.protocol.schedule import (
    StepSchedule,
    conservative_p_from_min,
    min_consensus,
    theorem1_schedule,
)

__all__ = [
    "DisagreementBound",
    "OptimizerState",
    "PushSumState",
    "StepSchedule",
    "conservative_p_from_min",
    "consensus_residual",
    "corollary2_cumulative_bound",
    "disagreement_bound",
    "l1_norm",
    "lemma1_bound",
    "min_consensus",
    "mix",
    "network_average",
    "pushsum_step",
    "ratio_bound",
    "running_weight",
    "sgp_step",
    "theorem1_schedule",
    "update_weighted_average",
]

from gradpush.harness.experiment import ExperimentResult, run_experiment, run_single, select_tracked_nodes
from gradpush.harness.fitting import fit_power_law, rate_fit
from gradpush.harness.metrics import aggregate_metric, step_records
from gradpush.harness.monitors import BoundednessMonitor
from gradpush.harness.theorem1 import corollary2_D, theorem1_bound_report, theorem1_rhs
from gradpush.harness.traces import RunTrace, emit_csv, read_csv

__all__ = [
    "BoundednessMonitor",
    "ExperimentResult",
    "RunTrace",
    "aggregate_metric",
    "corollary2_D",
    "emit_csv",
    "fit_power_law",
    "rate_fit",
    "read_csv",
    "run_experiment",
    "run_single",
    "select_tracked_nodes",
    "step_records",
    "theorem1_bound_report",
    "theorem1_rhs",
]

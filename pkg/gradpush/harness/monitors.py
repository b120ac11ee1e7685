from dataclasses import dataclass, field

import numpy as np

from gradpush.protocol.optimizer import OptimizerState

PLATEAU_RTOL = 0.01


@dataclass
class BoundednessMonitor:
    """
    Máximo acumulado de max_i ‖z_i(t)‖ a lo largo de un run.

    `running_max[k]` es el máximo hasta el paso k+1. is_bounded() comprueba que, pasado el
    burn-in, el máximo crece menos que `rtol` en términos relativos.
    """

    running_max: list[float] = field(default_factory=list)

    def observe(self, state: OptimizerState) -> float:
        return self.observe_value(float(np.max(np.linalg.norm(state.z, axis=1))))

    def observe_value(self, value: float) -> float:
        current = max(value, self.running_max[-1]) if self.running_max else value
        self.running_max.append(current)
        return current

    @property
    def steps(self) -> int:
        return len(self.running_max)

    def growth_after(self, burn_in: int) -> float:
        """(máximo final - máximo en burn_in) / máximo en burn_in."""
        if not 1 <= burn_in <= self.steps:
            raise ValueError(f"burn_in debe estar en [1, {self.steps}] (recibido {burn_in})")
        base = self.running_max[burn_in - 1]
        if base == 0.0:
            return 0.0 if self.running_max[-1] == 0.0 else np.inf
        return (self.running_max[-1] - base) / base

    def is_bounded(self, burn_in: int | None = None, rtol: float = PLATEAU_RTOL) -> bool:
        """Por defecto el burn-in es la mitad del run."""
        if burn_in is None:
            burn_in = max(1, self.steps // 2)
        return self.growth_after(burn_in) < rtol

"""Per-phase wall-clock accounting for solver runs."""
from __future__ import annotations

import time
from contextlib import contextmanager, nullcontext

PHASES = ("reduction", "independent_set", "contraction", "cut", "four_coloring", "repair")


class PhaseTimer:
    def __init__(self) -> None:
        self.totals: dict[str, float] = dict.fromkeys(PHASES, 0.0)

    @contextmanager
    def phase(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.totals[name] = self.totals.get(name, 0.0) + time.perf_counter() - t0

    def add(self, name: str, seconds: float) -> None:
        self.totals[name] = self.totals.get(name, 0.0) + seconds

    def pipeline_seconds(self) -> float:
        return sum(v for k, v in self.totals.items() if k != "reduction")

    def as_dict(self) -> dict[str, float]:
        return {k: round(v, 6) for k, v in self.totals.items()}


def phase(timer: PhaseTimer | None, name: str):
    return timer.phase(name) if timer is not None else nullcontext()

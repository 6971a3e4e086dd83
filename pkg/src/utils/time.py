from __future__ import annotations

import time
from dataclasses import dataclass, field


@dataclass
class Stopwatch:
    """Collects named wall-clock laps for the diagnostics block of a RunResult."""

    laps: dict[str, float] = field(default_factory=dict)
    _start: float = field(default_factory=time.perf_counter)

    def lap(self, name: str) -> float:
        now = time.perf_counter()
        elapsed = now - self._start
        self.laps[name] = round(elapsed, 6)
        self._start = now
        return elapsed

import time
from dataclasses import dataclass, field

import numpy as np

from formal_path_integral import generalLogger
from formal_path_integral.amplitude import DeltaPoly


def _as_list(value):
    if isinstance(value, DeltaPoly):
        return value.to_list()
    if np.ndim(value):
        return [float(x) for x in np.ravel(value)]
    return [float(value)]


@dataclass
class CheckRow:
    """One compared quantity; residuals are recomputable from ``lhs`` and ``rhs``."""

    quantity: str
    order: int
    lhs: list
    rhs: list
    tolerance: float
    exact: bool = False
    absolute_floor: float = 1e-12

    @property
    def absolute(self):
        size = max(len(self.lhs), len(self.rhs))
        lhs = np.array(self.lhs + [0.0] * (size - len(self.lhs)))
        rhs = np.array(self.rhs + [0.0] * (size - len(self.rhs)))
        return float(np.max(np.abs(lhs - rhs)))

    @property
    def relative(self):
        scale = max(float(np.max(np.abs(self.lhs))), float(np.max(np.abs(self.rhs))))
        return self.absolute / scale if scale > 0 else self.absolute

    @property
    def passed(self):
        if self.exact:
            return self.absolute == 0.0
        return self.relative <= self.tolerance or self.absolute <= self.absolute_floor

    def to_dict(self):
        return {
            "quantity": self.quantity,
            "order": self.order,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "absolute": self.absolute,
            "relative": self.relative,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


@dataclass
class CheckReport:
    """Order-by-order comparison of two computations of the same quantity."""

    check: str
    rows: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)
    started: float = field(default_factory=time.monotonic)

    def add(self, quantity, order, lhs, rhs, tolerance, exact=False):
        row = CheckRow(quantity, order, _as_list(lhs), _as_list(rhs), tolerance, exact)
        self.rows.append(row)
        return row

    @property
    def passed(self):
        return all(row.passed for row in self.rows)

    def finish(self, **provenance):
        """Record provenance; the runtime is logged, not stored in the document."""
        self.provenance.update(provenance)
        self.runtime = time.monotonic() - self.started
        generalLogger.info(f"{self.check} check finished in {self.runtime:.2f} s, passed={self.passed}")
        return self

    def to_dict(self):
        return {
            "check": self.check,
            "passed": self.passed,
            "rows": [row.to_dict() for row in self.rows],
            "provenance": self.provenance,
        }

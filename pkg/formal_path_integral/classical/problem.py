from dataclasses import dataclass, replace

import numpy as np

from formal_path_integral.expr import ExpressionLagrangian, Lagrangian


@dataclass(frozen=True, eq=False)
class Problem:
    """Dirichlet data ``(t0, q0, t1, q1)`` for a Lagrangian on R^d.

    Attributes:
        lagrangian (Lagrangian): an Expression is wrapped automatically.
        t0, t1 (float): endpoint times, ``t0 < t1``.
        q0, q1 (numpy.ndarray): endpoint positions.
        v0_guess (numpy.ndarray): initial velocity for the shooting iteration; defaults to
            the straight-line velocity.
        grid (int): minimum number of solver points on [t0, t1] (``Config.GREEN_GRID``).
    """

    lagrangian: Lagrangian
    t0: float
    t1: float
    q0: np.ndarray
    q1: np.ndarray
    v0_guess: np.ndarray = None
    grid: int = None

    def __post_init__(self):
        lagrangian = self.lagrangian
        if not isinstance(lagrangian, Lagrangian):
            lagrangian = ExpressionLagrangian(lagrangian)
            object.__setattr__(self, "lagrangian", lagrangian)
        d = lagrangian.dimension

        if self.t0 is None or self.t1 is None:
            raise ValueError("Invalid value for `t0`/`t1`, must not be `None`")
        if not float(self.t0) < float(self.t1):
            raise ValueError(f"Invalid times, t0={self.t0} must be smaller than t1={self.t1}")
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "t1", float(self.t1))

        for name in ("q0", "q1", "v0_guess"):
            value = getattr(self, name)
            if value is None:
                if name == "v0_guess":
                    continue
                raise ValueError(f"Invalid value for `{name}`, must not be `None`")
            value = np.atleast_1d(np.asarray(value, dtype=float))
            if value.shape != (d,):
                raise ValueError(f"Invalid value for `{name}`, expected {d} components, got {value.shape}")
            object.__setattr__(self, name, value)
        if self.v0_guess is None:
            object.__setattr__(self, "v0_guess", (self.q1 - self.q0) / self.duration)

    @property
    def dimension(self):
        return self.lagrangian.dimension

    @property
    def duration(self):
        return self.t1 - self.t0

    def with_endpoints(self, q0=None, q1=None, t0=None, t1=None, v0_guess=None):
        return replace(
            self,
            q0=self.q0 if q0 is None else q0,
            q1=self.q1 if q1 is None else q1,
            t0=self.t0 if t0 is None else t0,
            t1=self.t1 if t1 is None else t1,
            v0_guess=self.v0_guess if v0_guess is None else v0_guess,
        )

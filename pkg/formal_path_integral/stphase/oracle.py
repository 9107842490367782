import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from formal_path_integral import generalLogger
from formal_path_integral.errors import ConvergenceError, PreconditionError

# fraction of each half-width on which the cutoff is identically one
FLAT_FRACTION = 0.6
QUAD_LIMIT = 2000


def smooth_step(t):
    """C-infinity step: 0 for t <= 0, 1 for t >= 1."""
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        left = np.where(t > 0, np.exp(-1.0 / np.where(t > 0, t, 1.0)), 0.0)
        right = np.where(t < 1, np.exp(-1.0 / np.where(t < 1, 1.0 - t, 1.0)), 0.0)
    return left / (left + right)


def cutoff(x, region):
    """Product bump equal to one on the inner part of ``region`` and zero at its boundary."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    weight = 1.0
    for k, (low, high) in enumerate(region):
        middle, half = (low + high) / 2, (high - low) / 2
        s = np.abs(x[..., k] - middle) / half
        weight = weight * (1.0 - smooth_step((s - FLAT_FRACTION) / (1.0 - FLAT_FRACTION)))
    return weight


def numeric_oracle(potential, hbar, region, insertion=None):
    """Direct quadrature of the cut-off oscillatory integral.

    Computes ``int chi(x) exp(-(i hbar)^-1 A(x)) dx`` or, with ``insertion`` B,
    ``int chi(x) (i hbar)^-1 B(x) exp(-(i hbar)^-1 A(x)) dx`` over ``region``.

    Args:
        potential (callable): A, taking points with the coordinate axis last.
        hbar (float): positive.
        region (list): ``[(low, high), ...]`` per coordinate; one or two coordinates.
        insertion (callable): optional B.

    :rtype: complex
    """
    if hbar <= 0:
        raise ValueError("Invalid value for `hbar`, must be positive")
    region = [tuple(map(float, bounds)) for bounds in region]
    if len(region) not in (1, 2):
        raise PreconditionError("the numeric oracle integrates in one or two dimensions", module="stphase")

    def integrand(*args):
        *x, part = args
        point = np.array(x, dtype=float)
        value = float(cutoff(point, region)) * np.exp(1j * float(potential(point)) / hbar)
        if insertion is not None:
            value *= float(insertion(point)) / (1j * hbar)
        return value.real if part == "real" else value.imag

    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            if len(region) == 1:
                real, _ = integrate.quad(integrand, *region[0], args=("real",), limit=QUAD_LIMIT,
                                         epsabs=1e-12, epsrel=1e-10)
                imag, _ = integrate.quad(integrand, *region[0], args=("imag",), limit=QUAD_LIMIT,
                                         epsabs=1e-12, epsrel=1e-10)
            else:
                options = {"limit": QUAD_LIMIT // 10, "epsabs": 1e-11, "epsrel": 1e-9}
                real, _ = integrate.nquad(integrand, region, args=("real",), opts=options)
                imag, _ = integrate.nquad(integrand, region, args=("imag",), opts=options)
        except integrate.IntegrationWarning as e:
            raise ConvergenceError(f"oscillatory quadrature did not converge at hbar={hbar}: {e}",
                                   module="stphase")
    return complex(real, imag)


@dataclass
class SweepRow:
    hbar: float
    exact: complex
    formal: complex
    relative_error: float
    observed_order: float = None

    def to_dict(self):
        return {
            "hbar": self.hbar,
            "exact_re": self.exact.real,
            "exact_im": self.exact.imag,
            "formal_re": self.formal.real,
            "formal_im": self.formal.imag,
            "relative_error": self.relative_error,
            "observed_order": self.observed_order,
        }


def hbar_sweep(potential, expansion, hbars, region, insertion=None, max_order=None):
    """Compare a truncated expansion with the oracle over decreasing ``hbars``.

    ``observed_order`` is the log-log slope of ``|I_M / I - 1|`` between consecutive rows.

    :rtype: list of SweepRow
    """
    rows = []
    for hbar in sorted(hbars, reverse=True):
        exact = numeric_oracle(potential, hbar, region, insertion)
        formal = expansion.evaluate(hbar, max_order)
        error = abs(formal / exact - 1.0)
        row = SweepRow(hbar, exact, formal, error)
        if rows and rows[-1].relative_error > 0 and error > 0:
            previous = rows[-1]
            row.observed_order = float(np.log(error / previous.relative_error) / np.log(hbar / previous.hbar))
        generalLogger.debug(f"hbar={hbar}: |I_M/I - 1| = {error:.3e}")
        rows.append(row)
    return rows

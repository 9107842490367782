import numpy as np

from formal_path_integral import Config


def central_gradient(function, x, step):
    """Central-difference gradient of an array-valued ``function``; the new axis is last."""
    x = np.asarray(x, dtype=float)
    columns = []
    for k in range(x.size):
        shift = np.zeros_like(x)
        shift.flat[k] = step
        columns.append((np.asarray(function(x + shift)) - np.asarray(function(x - shift))) / (2 * step))
    return np.stack(columns, axis=-1)


def richardson_gradient(function, x, steps=None):
    """Central differences at ``h`` and ``h/2`` combined to cancel the ``h^2`` error.

    Args:
        steps (tuple): ``(h, h/2)``; defaults to ``Config.FD_STEPS``.

    Returns:
        tuple: ``(gradient, coarse)``, the extrapolated value and the plain estimate at the
        smaller step (their difference is an error indicator).
    """
    if steps is None:
        steps = Config.FD_STEPS
    large, small = steps
    ratio = (large / small) ** 2
    coarse = central_gradient(function, x, large)
    fine = central_gradient(function, x, small)
    return (ratio * fine - coarse) / (ratio - 1), fine

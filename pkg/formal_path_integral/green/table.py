import numpy as np

DERIVATIVE_COLUMNS = {
    (0, 0): "G",
    (1, 0): "dsG",
    (0, 1): "dtG",
    (1, 1): "dsdtG",
}


def green_rows(rep, points, derivatives=((0, 0),)):
    """Rows ``(sigma, tau, i, j, values...)`` of G and the requested derivatives on a square grid."""
    grid = np.linspace(rep.t0, rep.t1, points)
    sigma, tau = np.meshgrid(grid, grid, indexing="ij")
    values = [rep.smooth(sigma, tau, d_sigma, d_tau) for d_sigma, d_tau in derivatives]
    d = rep.dimension
    rows = []
    for a in range(points):
        for b in range(points):
            for i in range(d):
                for j in range(d):
                    rows.append([float(grid[a]), float(grid[b]), i + 1, j + 1]
                                + [float(value[a, b, i, j]) for value in values])
    return rows


def green_header(derivatives=((0, 0),)):
    """CSV header matching :func:`green_rows`; the mixed derivative column holds the finite part only."""
    return ["sigma", "tau", "i", "j"] + [DERIVATIVE_COLUMNS[tuple(k)] for k in derivatives]


def parse_columns(text):
    """``"G, dtG"`` to derivative orders ``((0, 0), (0, 1))``."""
    orders = {name: key for key, name in DERIVATIVE_COLUMNS.items()}
    names = [item.strip() for item in text.split(",") if item.strip()]
    unknown = [name for name in names if name not in orders]
    if unknown or not names:
        raise ValueError(f"unknown Green derivative columns {unknown}, expected some of {sorted(orders)}")
    return tuple(orders[name] for name in names)

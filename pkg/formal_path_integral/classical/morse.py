import numpy as np
from scipy import linalg

from formal_path_integral import Config, generalLogger
from formal_path_integral.classical.action import gauss_legendre, jacobi_coefficients
from formal_path_integral.errors import ConvergenceError, DegeneratePathError

ELEMENT_QUADRATURE = 4
NEGATIVE_THRESHOLD = 1e-10
STABLE_COUNTS = 3


def second_variation_matrices(trajectory, elements):
    """Galerkin matrices of the second variation on hat functions vanishing at both ends.

    Returns:
        tuple: ``(stiffness, mass)`` over the ``(elements - 1) * d`` interior coefficients.
    """
    d = trajectory.dimension
    t0, t1 = trajectory.t0, trajectory.t1
    nodes, weights = gauss_legendre(ELEMENT_QUADRATURE)
    edges = np.linspace(t0, t1, elements + 1)
    h = (t1 - t0) / elements
    u = (nodes + 1) / 2
    times = edges[:-1, None] + h * u[None, :]
    w = h * weights / 2

    a, l_qv, l_qq, _, _ = jacobi_coefficients(trajectory, times.ravel())
    shape = (elements, ELEMENT_QUADRATURE, d, d)
    a, l_qv, l_qq = a.reshape(shape), l_qv.reshape(shape), l_qq.reshape(shape)

    values = [1.0 - u, u]
    slopes = [-1.0 / h, 1.0 / h]
    size = (elements + 1) * d
    stiffness = np.zeros((size, size))
    mass = np.zeros((size, size))
    for left in (0, 1):
        for right in (0, 1):
            # xi = N_left e_i, zeta = N_right e_j
            integrand = (slopes[left] * slopes[right] * a
                         + (values[left] * slopes[right])[None, :, None, None] * l_qv
                         + (slopes[left] * values[right])[None, :, None, None] * np.swapaxes(l_qv, -1, -2)
                         + (values[left] * values[right])[None, :, None, None] * l_qq)
            blocks = np.einsum("g,egij->eij", w, integrand)
            overlap = float(np.dot(w, values[left] * values[right]))
            for element in range(elements):
                rows = slice((element + left) * d, (element + left + 1) * d)
                cols = slice((element + right) * d, (element + right + 1) * d)
                stiffness[rows, cols] += blocks[element]
                mass[rows, cols] += overlap * np.eye(d)
    interior = slice(d, elements * d)
    stiffness = stiffness[interior, interior]
    return (stiffness + stiffness.T) / 2, mass[interior, interior]


def morse_spectrum(trajectory, elements):
    stiffness, mass = second_variation_matrices(trajectory, elements)
    return linalg.eigh(stiffness, mass, eigvals_only=True)


def morse_index(trajectory, initial_mesh=None, max_mesh=None):
    """Number of negative directions of the second variation of S on based loops.

    The mesh is doubled from ``initial_mesh`` until the count agrees on three successive
    meshes.
    """
    if initial_mesh is None:
        initial_mesh = Config.MORSE_INITIAL_MESH
    if max_mesh is None:
        max_mesh = Config.MORSE_MAX_MESH

    duration = trajectory.problem.duration
    counts = []
    elements = initial_mesh
    while elements <= max_mesh:
        eigenvalues = morse_spectrum(trajectory, elements)
        threshold = NEGATIVE_THRESHOLD * np.max(np.abs(eigenvalues))
        counts.append(int(np.sum(eigenvalues < -threshold)))
        generalLogger.debug(f"Morse index on {elements} elements: {counts[-1]}")
        if len(counts) >= STABLE_COUNTS and len(set(counts[-STABLE_COUNTS:])) == 1:
            a = jacobi_coefficients(trajectory, np.linspace(trajectory.t0, trajectory.t1, 9))[0]
            scale = (np.pi / duration) ** 2 * float(np.min(np.linalg.eigvalsh(a)))
            smallest = float(np.min(np.abs(eigenvalues)))
            if smallest < Config.MORSE_ZERO_TOL * scale:
                raise DegeneratePathError(
                    f"second variation has a near-zero eigenvalue ({smallest:.3e}); check nonfocal_check",
                    module="classical")
            return counts[-1]
        elements *= 2
    raise ConvergenceError(f"Morse index did not stabilise up to {max_mesh} elements (counts {counts})",
                           module="classical")

from formal_path_integral.classical.problem import Problem
from formal_path_integral.classical.dynamics import LagrangianPartials
from formal_path_integral.classical.trajectory import Trajectory, solve_bvp, resolve
from formal_path_integral.classical.action import (
    action,
    momenta,
    s_gradients,
    s_hessian,
    van_vleck,
    nonfocal_check,
    jacobi_coefficients,
    panel_nodes,
    gauss_legendre,
)
from formal_path_integral.classical.morse import morse_index, morse_spectrum

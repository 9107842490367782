import os
import logging


def _float_list(raw):
    return tuple(float(item) for item in raw.split(",") if item.strip())


class Config:

    ### LOGS ###

    LOG_LEVEL = logging.getLevelName(os.environ.get('LOG_LEVEL', 'INFO'))
    LOG_FORMAT = os.environ.get('LOG_FORMAT', 'text')

    ### QUADRATURE ###

    # Gauss-Legendre points per dimension inside each order chamber
    QUAD_ORDER = int(os.environ.get('SPI_QUAD_ORDER', '32'))
    # Used instead of QUAD_ORDER once a chamber has 3 or more time variables
    QUAD_ORDER_HIGH_DIM = int(os.environ.get('SPI_QUAD_ORDER_HIGH_DIM', '12'))
    # Panels x points for action integrals along the dense output
    ACTION_PANELS = int(os.environ.get('SPI_ACTION_PANELS', '16'))
    ACTION_PANEL_ORDER = int(os.environ.get('SPI_ACTION_PANEL_ORDER', '16'))

    ### GREEN'S FUNCTION ###

    GREEN_GRID = int(os.environ.get('SPI_GREEN_GRID', '201'))
    GREEN_CHECK_GRID = int(os.environ.get('SPI_GREEN_CHECK_GRID', '50'))
    GREEN_AGREEMENT_TOL = float(os.environ.get('SPI_GREEN_AGREEMENT_TOL', '1e-8'))
    GREEN_FD_STEP = float(os.environ.get('SPI_GREEN_FD_STEP', '1e-4'))

    ### DIAGRAMS ###

    LOOP_ORDER = int(os.environ.get('SPI_LOOP_ORDER', '2'))
    MAX_MINUS_CHI_CEILING = int(os.environ.get('SPI_MAX_MINUS_CHI_CEILING', '4'))
    DIVERGENCE_TOL = float(os.environ.get('SPI_DIVERGENCE_TOL', '1e-6'))

    ### CLASSICAL SOLVER ###

    BVP_RTOL = float(os.environ.get('SPI_BVP_RTOL', '1e-11'))
    BVP_ATOL = float(os.environ.get('SPI_BVP_ATOL', '1e-12'))
    NEWTON_TOL = float(os.environ.get('SPI_NEWTON_TOL', '1e-10'))
    NEWTON_MAX_ITER = int(os.environ.get('SPI_NEWTON_MAX_ITER', '50'))
    FOCAL_TOL = float(os.environ.get('SPI_FOCAL_TOL', '1e-8'))
    EL_RESIDUAL_TOL = float(os.environ.get('SPI_EL_RESIDUAL_TOL', '1e-9'))
    SINGULAR_TOL = float(os.environ.get('SPI_SINGULAR_TOL', '1e-12'))

    # MORSE INDEX
    MORSE_INITIAL_MESH = int(os.environ.get('SPI_MORSE_INITIAL_MESH', '32'))
    MORSE_MAX_MESH = int(os.environ.get('SPI_MORSE_MAX_MESH', '1024'))
    MORSE_ZERO_TOL = float(os.environ.get('SPI_MORSE_ZERO_TOL', '1e-6'))

    ### STATIONARY PHASE ###

    GRADIENT_TOL = float(os.environ.get('SPI_GRADIENT_TOL', '1e-9'))
    # "minus_i" -> (-i)^eta, "minus_one" -> (-1)^eta
    SIGN_CONVENTION = os.environ.get('SPI_SIGN_CONVENTION', 'minus_i')

    ### HARNESS ###

    FD_STEPS = _float_list(os.environ.get('SPI_FD_STEPS', '1e-2,5e-3'))
    BATCH_WORKERS = int(os.environ.get('SPI_BATCH_WORKERS', '4'))

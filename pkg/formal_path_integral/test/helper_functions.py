# coding: utf-8

import os
import tempfile
import textwrap

import numpy as np

from formal_path_integral.classical import Problem
from formal_path_integral.expr import parse

# ---------------------- Lagrangians ---------------------- #

FREE = "v^2/2"
HARMONIC = "v^2/2 - w^2*q^2/2"
EXPONENTIAL = "v^2/(2*q^2)"
FLAT_QUARTIC = "v^2/2 - 0.1*q^4"
DET1_METRIC = "0.5*(exp(0.3*q1)*v1^2 + exp(-0.3*q1)*v2^2)"
SHEAR_MAP = "q1 + 0.2*sin(q2); q2"


def free_particle(t1=1.0, q0=0.0, q1=1.0):
    return Problem(parse(FREE, 1), 0.0, t1, [q0], [q1])


def harmonic_oscillator(t1=1.0, q0=0.3, q1=0.7, omega=1.0):
    return Problem(parse(HARMONIC, 1, {"w": omega}), 0.0, t1, [q0], [q1])


def exponential_coordinates(q0=1.0, q1=np.e, t1=1.0):
    """``L = v^2 / (2 q^2)``: free motion in ``q = e^x``, with ``gamma(tau) = q0^(1-tau/T) q1^(tau/T)``."""
    return Problem(parse(EXPONENTIAL, 1), 0.0, t1, [q0], [q1])


def flat_quartic(q0=0.5, q1=0.8, t1=1.0):
    return Problem(parse(FLAT_QUARTIC, 1), 0.0, t1, [q0], [q1])


def det1_metric(q0=(0.0, 0.0), q1=(0.5, 0.4), t1=1.0):
    return Problem(parse(DET1_METRIC, 2), 0.0, t1, list(q0), list(q1))


def shear_map(dimension=2):
    return [parse(component.strip(), dimension) for component in SHEAR_MAP.split(";")]


# ---------------------- closed forms ---------------------- #

def harmonic_action(t1, q0, q1, omega=1.0):
    return omega / (2 * np.sin(omega * t1)) * ((q0 ** 2 + q1 ** 2) * np.cos(omega * t1) - 2 * q0 * q1)


def harmonic_path(tau, t1, q0, q1, omega=1.0):
    return (q0 * np.sin(omega * (t1 - tau)) + q1 * np.sin(omega * tau)) / np.sin(omega * t1)


def exponential_green(sigma, tau, t1, q0, q1):
    """``gamma(s) gamma(t) (min(s, t) - s t / T)`` on ``[0, T]``."""
    gamma = lambda t: q0 ** (1 - t / t1) * q1 ** (t / t1)
    return gamma(sigma) * gamma(tau) * ((sigma + tau) / 2 - sigma * tau / t1 - np.abs(tau - sigma) / 2)


def free_green(sigma, tau, t1):
    return np.minimum(sigma, tau) * (t1 - np.maximum(sigma, tau)) / t1


# ---------------------- configuration files ---------------------- #

def write_config(directory, name, text):
    """Write a dedented INI file under ``directory`` and return its path."""
    path = os.path.join(directory, name)
    with open(path, "w") as stream:
        stream.write(textwrap.dedent(text).lstrip())
    return path


def temporary_directory():
    return tempfile.TemporaryDirectory(prefix="spi-test-")


HARMONIC_CONFIG = """
    [problem]
    dimension = 1
    lagrangian = v^2/2 - w^2*q^2/2
    t0 = 0.0
    t1 = 1.0
    q0 = 0.3
    q1 = 0.7

    [parameters]
    w = 1.0

    [compute]
    loop_order = 1
    quad_order = 16
"""

EXPONENTIAL_CONFIG = """
    [problem]
    dimension = 1
    lagrangian = v^2/(2*q^2)
    t0 = 0.0
    t1 = 1.0
    q0 = 1.0
    q1 = 2.718281828459045

    [compute]
    loop_order = 1

    [green]
    points = 5
    derivatives = G, dtG
"""

STPHASE_CONFIG = """
    [stphase]
    potential = q^2/2 + q^4/24
    dimension = 1
    center = 0.0
    region = -5.0, 5.0
    hbar = 0.2, 0.1, 0.05
    loop_order = 1
"""

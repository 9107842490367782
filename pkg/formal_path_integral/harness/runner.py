"""Subcommand dispatch: one configuration in, one result document (and optional table) out."""
from dataclasses import dataclass

import numpy as np

from formal_path_integral import Config, generalLogger
from formal_path_integral.amplitude import assemble, divergence_report
from formal_path_integral.classical import solve_bvp
from formal_path_integral.errors import ConfigValidationError
from formal_path_integral.graphs import dump, enumerate_diagrams
from formal_path_integral.green import build as build_green, green_header, green_rows, parse_columns
from formal_path_integral.harness.batch import batch
from formal_path_integral.harness.coordinates import coordinate_check
from formal_path_integral.harness.fubini import fubini_check
from formal_path_integral.models import PropagatorDocument
from formal_path_integral.stphase import Potential, formal_integral, hbar_sweep, required_rank

SUBCOMMANDS = ("diagrams", "propagate", "green", "fubini", "coords", "divergences", "stphase-oracle")


@dataclass
class RunOutcome:
    """What a subcommand produced.

    Attributes:
        document (dict): the result document, validated against ``schema`` before writing.
        schema (str): name of the JSON Schema under ``schemas/``.
        passed (bool): False only when a check ran and failed.
        table (tuple): optional ``(header, rows)`` for CSV output.
    """

    document: dict
    schema: str
    passed: bool = True
    table: tuple = None


# ---------------------- subcommands ---------------------- #

def diagram_table(max_order, marked_vertices=0):
    diagrams = [diagram for diagram in enumerate_diagrams(max_order, marked_vertices)
                if marked_vertices or diagram.loop_order >= 1]
    rows = [{
        "canonical": diagram.canonical_label,
        "dump": dump(diagram),
        "vertices": diagram.vertex_count,
        "edges": diagram.edge_count,
        "chi": diagram.euler_characteristic,
        "aut": diagram.automorphism_order,
    } for diagram in diagrams]
    document = {"max_order": max_order, "marked_vertices": marked_vertices, "diagrams": rows}
    table = (["chi", "vertices", "edges", "aut", "canonical"],
             [[row["chi"], row["vertices"], row["edges"], row["aut"], row["canonical"]] for row in rows])
    return RunOutcome(document, "diagrams", table=table)


def propagate(config):
    trajectory = solve_bvp(config.build_problem())
    result = assemble(trajectory, build_green(trajectory), config.loop_order, config.quadrature(),
                      sign_convention=config.sign_convention)
    document = PropagatorDocument.from_result(result).to_dict()
    document["divergences"] = [entry.to_dict() for entry in divergence_report(result).values()]
    document["config"] = config.snapshot()
    return RunOutcome(document, "propagator")


def green_grid(config):
    try:
        derivatives = parse_columns(config.green.get("derivatives", "G"))
    except ValueError as e:
        raise ConfigValidationError({"green.derivatives": [str(e)]}, config.lines)
    trajectory = solve_bvp(config.build_problem())
    rep = build_green(trajectory)
    rows = green_rows(rep, config.green.get("points", Config.GREEN_CHECK_GRID), derivatives)
    return RunOutcome(None, None, table=(green_header(derivatives), rows))


def stphase_oracle(config):
    stphase = config.require("stphase", "stphase-oracle")
    max_order = config.max_order if config.max_order is not None else stphase["loop_order"]
    potential = Potential(config.potential)
    center = np.array(stphase["center"])
    derivatives = potential.derivatives(center, max(required_rank(max_order), 2))
    expansion = formal_integral(derivatives, max_order=max_order, sign_convention=config.sign_convention)
    region = np.reshape(stphase["region"], (stphase["dimension"], 2))
    rows = hbar_sweep(potential, expansion, stphase["hbar"], region, max_order=max_order)
    document = {
        "potential": config.potential.to_source(),
        "max_order": max_order,
        "expansion": expansion.to_dict(),
        "rows": [row.to_dict() for row in rows],
    }
    header = ["hbar", "exact_re", "exact_im", "formal_re", "formal_im", "relative_error", "observed_order"]
    table = (header, [[row.to_dict()[key] for key in header] for row in rows])
    return RunOutcome(document, "stphase", table=table)


def check(report):
    return RunOutcome(report.to_dict(), "check_report", passed=report.passed)


# ---------------------- dispatch ---------------------- #

def run(config, subcommand, max_order=None):
    """Run one subcommand.

    Args:
        config (RunConfig or list of RunConfig): a list only for ``divergences``; may be None
            for ``diagrams``.
        subcommand (str): one of SUBCOMMANDS.
        max_order (int): overrides the configured loop order.

    Returns:
        RunOutcome
    """
    if subcommand not in SUBCOMMANDS:
        raise ValueError(f"Invalid value for `subcommand` ({subcommand}), must be one of {SUBCOMMANDS}")
    configs = config if isinstance(config, (list, tuple)) else [config]
    if max_order is not None:
        for item in configs:
            if item is not None:
                item.max_order = max_order
    generalLogger.info(f"Running `{subcommand}` on {[getattr(c, 'path', None) for c in configs]}")

    if subcommand == "diagrams":
        if max_order is None:
            max_order = config.loop_order if config is not None else Config.LOOP_ORDER
        return diagram_table(max_order)
    if subcommand == "divergences":
        entries = batch(configs)
        return RunOutcome({"entries": entries}, "divergences", passed=not any("error" in e for e in entries))
    if subcommand == "propagate":
        return propagate(config)
    if subcommand == "green":
        return green_grid(config)
    if subcommand == "fubini":
        return check(fubini_check(config))
    if subcommand == "coords":
        return check(coordinate_check(config))
    return stphase_oracle(config)

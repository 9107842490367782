from formal_path_integral.harness.run_config import RunConfig, load_config
from formal_path_integral.harness.report import CheckReport, CheckRow
from formal_path_integral.harness.fubini import GluedPath, compare_composition, fubini_check, split_trajectory
from formal_path_integral.harness.coordinates import (
    check_volume,
    compare_coordinates,
    coordinate_check,
    invert_map,
    transformed_problem,
)
from formal_path_integral.harness.batch import batch, divergence_job
from formal_path_integral.harness.runner import RunOutcome, SUBCOMMANDS, run

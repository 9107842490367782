from formal_path_integral import logger
from formal_path_integral.errors import ConfigValidationError, PathIntegralError
from formal_path_integral.harness import load_config, run
from formal_path_integral.models import Error
from formal_path_integral.utils.files.file_interactions import write_document, write_table
from formal_path_integral.utils.logs import logErrorResponse, logResponse
from formal_path_integral.utils.run_id import new_run_id

EXIT_PASSED = 0
EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2


def execute(subcommand, config_paths=(), out=None, table=None, max_order=None, run_id=None):
    """Load the configurations, run ``subcommand`` and write its outputs.

    Returns:
        tuple: ``(document or Error, exit code)``.
    """
    run_id = run_id or new_run_id(subcommand)

    end_text = f"Processed `{subcommand}`"
    logger.info(f"Starting `{subcommand}`...\n", extra=run_id)
    logger.debug(f"Configurations: {list(config_paths)}", extra=run_id)

    # ---------------------- Load and validate ---------------------- #

    try:
        configs = [load_config(path) for path in config_paths]
    except ConfigValidationError as e:
        response = Error(str(e), e.module, subcommand)
        logErrorResponse(repr(e), end_text, response, run_id)
        return response, EXIT_ERROR

    if subcommand == "divergences":
        config = configs
    elif len(configs) > 1:
        msg = f"`{subcommand}` takes a single configuration, got {len(configs)}"
        response = Error(msg, "harness", subcommand)
        logErrorResponse(msg, end_text, response, run_id)
        return response, EXIT_ERROR
    elif not configs and subcommand != "diagrams":
        msg = f"`{subcommand}` needs --config"
        response = Error(msg, "harness", subcommand)
        logErrorResponse(msg, end_text, response, run_id)
        return response, EXIT_ERROR
    else:
        config = configs[0] if configs else None

    # ---------------------- Compute ---------------------- #

    try:
        outcome = run(config, subcommand, max_order)
    except ConfigValidationError as e:
        response = Error(str(e), e.module, subcommand)
        logErrorResponse(repr(e), end_text, response, run_id)
        return response, EXIT_ERROR
    except PathIntegralError as e:
        logger.error(f"Computation failed in module `{e.module}`", extra=run_id)
        response = Error(str(e), e.module, subcommand)
        logErrorResponse(repr(e), end_text, response, run_id)
        return response, EXIT_ERROR

    # ---------------------- Emit ---------------------- #

    code = EXIT_PASSED if outcome.passed else EXIT_CHECK_FAILED
    if outcome.document is not None:
        if write_document(out, outcome.document, outcome.schema, run_id) != 0:
            logErrorResponse("Failed to emit the result document", end_text, None, run_id)
            return Error("Failed to emit the result document", "harness", subcommand), EXIT_ERROR
    if outcome.table is not None:
        # Without a document the table is the main output
        path = out if outcome.document is None else table
        if path is not None or outcome.document is None:
            header, rows = outcome.table
            if write_table(path, header, rows, run_id) != 0:
                logErrorResponse("Failed to emit the table", end_text, None, run_id)
                return Error("Failed to emit the table", "harness", subcommand), EXIT_ERROR

    if code == EXIT_CHECK_FAILED:
        logger.warning(f"`{subcommand}` check failed", extra=run_id)
    logResponse(end_text, outcome.document, run_id)
    return outcome.document, code


# ---------------------- Subcommands ---------------------- #

def diagrams(config_paths=(), out=None, table=None, max_order=None):
    return execute("diagrams", config_paths, out, table, max_order)


def propagate(config_paths, out=None, table=None, max_order=None):
    return execute("propagate", config_paths, out, table, max_order)


def green(config_paths, out=None, table=None, max_order=None):
    return execute("green", config_paths, out, table, max_order)


def fubini(config_paths, out=None, table=None, max_order=None):
    return execute("fubini", config_paths, out, table, max_order)


def coords(config_paths, out=None, table=None, max_order=None):
    return execute("coords", config_paths, out, table, max_order)


def divergences(config_paths, out=None, table=None, max_order=None):
    return execute("divergences", config_paths, out, table, max_order)


def stphase_oracle(config_paths, out=None, table=None, max_order=None):
    return execute("stphase-oracle", config_paths, out, table, max_order)


HANDLERS = {
    "diagrams": diagrams,
    "propagate": propagate,
    "green": green,
    "fubini": fubini,
    "coords": coords,
    "divergences": divergences,
    "stphase-oracle": stphase_oracle,
}

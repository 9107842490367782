from formal_path_integral import generalLogger
from formal_path_integral.amplitude import assemble, divergence_report
from formal_path_integral.classical import solve_bvp
from formal_path_integral.errors import PathIntegralError
from formal_path_integral.green import build as build_green
from formal_path_integral.utils.batch_jobs import BatchJobs


def divergence_job(config):
    """Assemble ``U`` for one configuration and report its D0 content per loop order."""
    trajectory = solve_bvp(config.build_problem())
    result = assemble(trajectory, build_green(trajectory), config.loop_order, config.quadrature(),
                      sign_convention=config.sign_convention)
    report = divergence_report(result)
    return {
        "config": config.path,
        "lagrangian": config.lagrangian.to_source(),
        "orders": [report[order].to_dict() for order in sorted(report)],
        "divergence_free": all(entry.divergence_free for entry in report.values()),
    }


def batch(configs, job=divergence_job, workers=None):
    """Run ``job`` on every configuration, one worker thread per configuration.

    Results come back in sorted path order whatever the completion order; a failing job
    yields an entry with its error and provenance module instead.
    """
    configs = {config.path: config for config in configs}
    jobs = BatchJobs({path: (lambda config=config: job(config)) for path, config in configs.items()}, workers)
    jobs.start()
    try:
        jobs.join()
    finally:
        jobs.stop()

    entries = []
    for path, value, error in jobs.ordered_results():
        if error is None:
            entries.append(value)
            continue
        module = error.module if isinstance(error, PathIntegralError) else "harness"
        entries.append({"config": path, "error": str(error), "module": module})
    generalLogger.info(f"Batch of {len(entries)} jobs finished, "
                       f"{sum('error' in entry for entry in entries)} failed")
    return entries

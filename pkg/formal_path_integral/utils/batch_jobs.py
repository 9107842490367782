import threading

from formal_path_integral import Config, generalLogger


class BatchJobs:
    """One worker thread per job, at most ``workers`` of them computing at a time.

    Args:
        jobs (dict): job name to a callable without arguments.
        workers (int): concurrent jobs; defaults to ``Config.BATCH_WORKERS``.

    Results are kept per job name as ``(value, error)``; a job that raises stores the
    exception instead of stopping the batch.
    """

    def __init__(self, jobs, workers=None):
        self.exitEvent = threading.Event()
        self.results = {}

        self._slots = threading.BoundedSemaphore(workers or Config.BATCH_WORKERS)
        self._lock = threading.Lock()

        self.threads = {}
        for name, target in jobs.items():
            self.threads[name] = threading.Thread(name=f"BatchJob-{name}", target=self._job_main,
                                                  args=(name, target))

    def _job_main(self, name, target):
        with self._slots:
            # Jobs still waiting for a slot are skipped once the batch is stopped
            if self.exitEvent.is_set():
                generalLogger.warning(f"Batch stopped before job {name} started")
                return
            generalLogger.info(f"Starting batch job {name}...")
            try:
                outcome = (target(), None)
            except Exception as e:
                generalLogger.error(repr(e))
                outcome = (None, e)
        with self._lock:
            self.results[name] = outcome

    # Start threads
    def start(self):
        for thread in self.threads.values():
            thread.start()

    # Wait for every job to finish
    def join(self):
        for thread in self.threads.values():
            thread.join()

    # Stop threads and wait for them to exit
    def stop(self):
        self.exitEvent.set()
        self.join()

    def ordered_results(self):
        """``[(name, value, error)]`` sorted by job name."""
        return [(name, *self.results.get(name, (None, None))) for name in sorted(self.threads)]

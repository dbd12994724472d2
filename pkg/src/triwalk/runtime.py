"""Process-level knobs: worker-thread count from the environment."""
import os
from concurrent.futures import ThreadPoolExecutor

from .errors import ConfigError

THREADS_ENV_VAR = "TRIWALK_THREADS"


def thread_count() -> int:
    """Worker count from TRIWALK_THREADS; defaults to 1, must be an integer >= 1."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None or raw.strip() == "":
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV_VAR} must be an integer >= 1, got {raw!r}") from None
    if value < 1:
        raise ConfigError(f"{THREADS_ENV_VAR} must be an integer >= 1, got {value}")
    return value


def run_parallel(tasks):
    """Run zero-argument callables, in a pool when more than one worker is configured."""
    workers = thread_count()
    if workers == 1 or len(tasks) <= 1:
        return [task() for task in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(task) for task in tasks]
        return [f.result() for f in futures]

"""Parallelisation via multiprocessing. Limit num. of CPUs used by `numpy` to 1."""

# Imported here (rather than at the call sites) so that it is easy to be sure
# that no multiprocessing is "in the mix" when NPROC <= 1.
import multiprocessing_on_dill as mpd
# The tasks are many small flow computations; BLAS threads only get in the way.
import threadpoolctl

threadpoolctl.threadpool_limits(1)


def Pool(NPROC=None):
    """Initialize a multiprocessing `Pool`.

    - Uses `dill` for serialisation, so closures can be mapped.
    - Provides a unified interface for multiprocessing on/off
      (as a function of NPROC).

    Parameters
    ----------
    NPROC: int or bool or None
        Number of worker processes. `False`, `0` and `1` yield plain `map`
        (no subprocesses). `True` or `None` use all CPUs but one.

    .. note::
        Workers do not share memory with the parent. Accumulators
        (such as `vconn.maxflow.FlowStats`) must be returned by the task
        and merged by the caller.
    """
    if NPROC in [False, 0, 1]:
        # Yield plain old map
        class NoPool:
            def __enter__(self): return builtins
            def __exit__(self, *args): pass
        import builtins
        return NoPool()

    if NPROC in [True, None]:
        NPROC = max(1, mpd.cpu_count() - 1)  # be nice

    return mpd.Pool(NPROC)

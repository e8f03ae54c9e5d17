"""Statistics gathered during a run: flow accounting, timings, kernels, transcript."""

import time
import warnings
from collections import Counter
from contextlib import contextmanager

from patlib.std import do_once
from struct_tools import AlignedDict, NicePrint

from vconn.maxflow import FlowStats, flow_counting
from vconn.tools.colors import diagnose


@do_once
def warn_soft_bound(name, value, bound):
    warnings.warn(f"Soft bound '{name}' exceeded: {value} > {bound:.0f}."
                  " Further violations are only counted (see RunStats).",
                  stacklevel=3)


class RunStats(NicePrint):
    """Accumulates what a run did.

    Attributes
    ----------
    flows: FlowStats
        Every maxflow solved within `stats.counting()`.
    timings: dict
        Seconds per phase (e.g. "certificate", "scratch", "nonscratch").
    kernels: Counter
        Outcomes of sketchy searches ("built", "bot").
    levels: Counter
        Kernels built per level ℓ̃.
    transcript: list
        The binary-search probes, as `(k, separator size or None)`.
    soft_bounds: Counter
        Number of violations per soft bound.
    """

    printopts = dict(
        excluded=NicePrint.printopts["excluded"] + ["transcript"],
        indent=2,
    )

    def __init__(self, keep_log=False, verbose=False):
        self.flows = FlowStats(keep_log=keep_log)
        self.timings = {}
        self.kernels = Counter()
        self.levels = Counter()
        self.transcript = []
        self.soft_bounds = Counter()
        self.verbose = verbose

    @contextmanager
    def counting(self, detach=False):
        """Count the flows solved in the block."""
        with flow_counting(self.flows, detach):
            yield self

    @contextmanager
    def phase(self, name):
        """Time the block (accumulating over repeated phases)."""
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = self.timings.get(name, 0.0) + time.perf_counter() - t0

    def probe(self, k, cut):
        size = None if cut is None else cut.size
        self.transcript.append((k, size))
        if self.verbose:
            diagnose(f"probe k={k}: separator size {size}", color="cyan")

    def soft_bound(self, name, value, bound):
        """Check `value <= bound`; warn on the first violation, count all."""
        if value > bound:
            self.soft_bounds[name] += 1
            warn_soft_bound(name, value, bound)
            return False
        return True

    def merge(self, other):
        self.flows.merge(other.flows)
        for name, dt in other.timings.items():
            self.timings[name] = self.timings.get(name, 0.0) + dt
        self.kernels.update(other.kernels)
        self.levels.update(other.levels)
        self.soft_bounds.update(other.soft_bounds)
        return self

    def as_dict(self, timings=True):
        dct = dict(
            maxflow=self.flows.as_dict(),
            kernels=dict(sorted(self.kernels.items())),
            levels={str(k): v for k, v in sorted(self.levels.items())},
            soft_bounds=dict(sorted(self.soft_bounds.items())),
            transcript=[list(p) for p in self.transcript],
        )
        if timings:
            dct["timings"] = {k: round(v, 6) for k, v in sorted(self.timings.items())}
        return dct

    def summary(self):
        flows = self.flows
        return str(AlignedDict([
            ("maxflow calls", flows.calls),
            ("flow vertices", flows.total_vertices),
            ("flow edges", flows.total_edges),
            ("kernels", dict(self.kernels)),
            ("probes", self.transcript),
            ("seconds", {k: round(v, 3) for k, v in self.timings.items()}),
        ]))

"""Load default and user configurations into the `rc` dict, and define `RunConfig`.

The `rc` dict can be updated (after startup) as any normal dict. See
`vconn/vc_config.yaml` for the default configuration.

`RunConfig` is what the algorithms actually read.
Its defaults are taken from `rc` *at the time of creation*,
so a `RunConfig` fully determines a run (including its randomness).
"""

import dataclasses
from pathlib import Path

import yaml
from struct_tools import DotDict

##################################
# Load configurations
##################################
vconn_dir = Path(__file__).absolute().parent
rc = DotDict()
rc.loaded_from = []
for d in [vconn_dir, "~", "~/.config", "."]:
    d = Path(d).expanduser().absolute()
    for prefix in [".", ""]:
        f = d / (prefix+"vc_config.yaml")
        if f.is_file():
            with open(f) as stream:
                dct = yaml.load(stream, Loader=yaml.SafeLoader)
            rc.loaded_from.append(str(f))
            if dct:
                if d == vconn_dir:
                    rc.update(dct)
                else:
                    for k in dct:
                        if k in rc and isinstance(rc[k], dict):
                            rc[k].update(dct[k] or {})
                        elif k in rc:
                            rc[k] = dct[k]
                        else:
                            print(f"Warning: invalid key '{k}' in '{f}'")

# Nested sections as DotDicts, so that `rc.sketch.extra_rows` works.
for k, v in list(rc.items()):
    if isinstance(v, dict):
        rc[k] = DotDict(**v)


# Maps RunConfig fields to their location in rc.
_RC_PATHS = {
    "seed": "seed",
    "flow": "flow",
    "threads": "threads",
    "verbose": "verbose",
    "extra_rows": "sketch.extra_rows",
    "l2_min_rows": "sketch.l2_min_rows",
    "l2_rows_per_log": "sketch.l2_rows_per_log",
    "l2_scale": "sketch.l2_scale",
    "oracle_factor": "scratch.oracle_factor",
    "level_factor": "scratch.level_factor",
    "sample_rate": "scratch.sample_rate",
    "candidates_factor": "scratch.candidates_factor",
    "count_cap": "scratch.count_cap",
    "scratch_reps": "scratch.reps",
    "scratch_floor": "scratch.floor",
    "nonscratch_reps": "nonscratch.reps",
    "nonscratch_floor": "nonscratch.floor",
    "low_degree_factor": "nonscratch.low_degree_factor",
    "early_exit": "nonscratch.early_exit",
    "pair_factor": "directed.pair_factor",
    "kernel_bound": "bounds.kernel",
    "directed_kernel_bound": "bounds.directed_kernel",
    "isolating_bound": "bounds.isolating",
    "accounting_bound": "bounds.accounting",
}


def _from_rc(name):
    def lookup():
        node = rc
        for part in _RC_PATHS[name].split("."):
            node = node[part]
        return node
    return dataclasses.field(default_factory=lookup)


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Seed, amplification constants and soft bounds of a run.

    Example:
    >>> conf = RunConfig(seed=7)
    >>> conf.seed, conf.replace(seed=8).seed
    (7, 8)
    >>> RunConfig.from_dict(conf.as_dict()) == conf
    True
    """

    seed              : int   = _from_rc("seed")
    flow              : str   = _from_rc("flow")
    threads           : int   = _from_rc("threads")
    verbose           : bool  = _from_rc("verbose")
    # Sketches
    extra_rows        : int   = _from_rc("extra_rows")
    l2_min_rows       : int   = _from_rc("l2_min_rows")
    l2_rows_per_log   : int   = _from_rc("l2_rows_per_log")
    l2_scale          : float = _from_rc("l2_scale")
    # Scratch detector
    oracle_factor     : float = _from_rc("oracle_factor")
    level_factor      : float = _from_rc("level_factor")
    sample_rate       : float = _from_rc("sample_rate")
    candidates_factor : float = _from_rc("candidates_factor")
    count_cap         : int   = _from_rc("count_cap")
    scratch_reps      : float = _from_rc("scratch_reps")
    scratch_floor     : int   = _from_rc("scratch_floor")
    # Non-scratch detector
    nonscratch_reps   : float = _from_rc("nonscratch_reps")
    nonscratch_floor  : int   = _from_rc("nonscratch_floor")
    low_degree_factor : float = _from_rc("low_degree_factor")
    early_exit        : bool  = _from_rc("early_exit")
    # Directed
    pair_factor       : float = _from_rc("pair_factor")
    # Soft bounds
    kernel_bound          : float = _from_rc("kernel_bound")
    directed_kernel_bound : float = _from_rc("directed_kernel_bound")
    isolating_bound       : float = _from_rc("isolating_bound")
    accounting_bound      : float = _from_rc("accounting_bound")

    def __post_init__(self):
        if int(self.seed) < 0:
            raise ValueError(f"The seed must be non-negative, got {self.seed}.")

    def replace(self, **kwargs):
        return dataclasses.replace(self, **kwargs)

    def as_dict(self):
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, dct):
        return cls(**dct)

    def to_yaml(self):
        return yaml.safe_dump(self.as_dict(), sort_keys=False)

"""Make `progbar` (wrapper around `tqdm`)."""

import sys

from tqdm.auto import tqdm

# Progress bars clutter the output of pytest (and of piped CLI runs).
disable_progbar = "pytest" in sys.modules


def progbar(iterable, desc=None, leave=1, **kwargs):
    """Prints a nice progress bar in the terminal (on stderr)."""
    if disable_progbar or not sys.stderr.isatty():
        return iterable
    return tqdm(iterable, desc=desc, leave=leave, file=sys.stderr,
                smoothing=0.3, dynamic_ncols=True, **kwargs)

"""Colouring of terminal diagnostics."""

import sys

import colorama

# Makes stdout/err color codes work on windows too.
colorama.init()


def color_text(text, *color_codes):
    """Color a string for the terminal.

    Multiple `color_codes` can be combined.
    Look them up in `colorama.Back` and `colorama.Fore`,
    or give foreground colors by name (e.g. `"red"`).
    Use the single code `None` for no coloring.

    Example:
    >>> color_text("plain", None)
    'plain'
    """
    c0 = colorama.Style.RESET_ALL

    if (not color_codes) or color_codes == ("default",):
        cc = [colorama.Style.BRIGHT, colorama.Fore.BLUE]
    else:
        cc = [getattr(colorama.Fore, c.upper(), c) for c in color_codes if c]

    if not cc:
        return text
    return "".join(cc) + text + c0


def diagnose(*args, color="default", file=None):
    """Print a diagnostic line to stderr, coloured only on a terminal."""
    file = file or sys.stderr
    text = " ".join(str(a) for a in args)
    if file.isatty():
        text = color_text(text, color)
    print(text, file=file, flush=True)

"""Tests for the vconn package.

To run tests run `pytest`. The doctests of the package are included
(see `pyproject.toml`). To skip the slowest tests, do:
```sh
pytest -m "not slow"
```

Assuming you have `pytest-xdist` installed, you can do
`pytest -n auto` for multiprocessing.

The randomized algorithms are run with fixed seeds,
so the outcomes below are reproducible.
"""

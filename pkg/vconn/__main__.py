"""Enable `python -m vconn`."""

from vconn.cli import main

main()

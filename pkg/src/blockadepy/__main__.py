"""Entry point for `python -m blockadepy`."""

import sys

from blockadepy import cli

sys.exit(cli.main())

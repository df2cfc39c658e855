"""Allow `python -m molq` as an alternative to the `molq` console script."""

import sys

from .cli import main

sys.exit(main())

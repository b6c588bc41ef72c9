"""Allow ``python -m qgame``."""
import sys

from .cli import main

sys.exit(main())

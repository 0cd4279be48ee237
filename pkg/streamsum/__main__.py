"""Run streamsum as ``python -m streamsum``."""

import sys

from streamsum.cli.app import main

sys.exit(main())

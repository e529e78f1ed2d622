import sys

from plotkit.cli import main

sys.exit(main())

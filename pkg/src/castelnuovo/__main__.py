import sys

from castelnuovo.cli import main

sys.exit(main())

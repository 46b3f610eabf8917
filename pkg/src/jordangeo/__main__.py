import sys

from jordangeo.cli import main

sys.exit(main())

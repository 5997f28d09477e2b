import sys

from covolcert.cli import main

sys.exit(main())

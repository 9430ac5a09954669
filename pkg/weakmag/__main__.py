import sys

from weakmag.cli import main

sys.exit(main())

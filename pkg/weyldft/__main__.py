import sys

from weyldft.cli import main

sys.exit(main())

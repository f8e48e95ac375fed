import sys

from leafsearch.cli import main

sys.exit(main())

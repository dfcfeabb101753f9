import sys

from asyseries.cli import main

sys.exit(main())

import sys

from hmat.cli import main

sys.exit(main())

import sys

from dyndepth.cli import main

sys.exit(main())

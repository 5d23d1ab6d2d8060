import sys

from navier_ide.cli import main

sys.exit(main())

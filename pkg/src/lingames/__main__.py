import sys

from lingames.cli import main

sys.exit(main())

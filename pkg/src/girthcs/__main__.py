import sys

from girthcs.cli import main

sys.exit(main())

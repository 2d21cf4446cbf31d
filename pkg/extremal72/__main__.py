""" `python -m extremal72` """

import sys

from .cli import main

sys.exit(main())

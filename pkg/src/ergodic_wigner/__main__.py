import sys

from ergodic_wigner.cli import main

sys.exit(main())

import sys

from congruence_lab.cli_reporter import main

sys.exit(main())

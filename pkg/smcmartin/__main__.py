import sys

from smcmartin.main import main

sys.exit(main())

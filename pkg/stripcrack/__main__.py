import sys

from stripcrack.main import main

sys.exit(main())

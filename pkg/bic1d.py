import sys

from bic1d.cli import main


if __name__ == "__main__":
    sys.exit(main())

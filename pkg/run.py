"""Entry point for the gammalab command line."""

import sys

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

from gammalab import cli


if __name__ == "__main__":
    sys.exit(cli(sys.argv[1:]))

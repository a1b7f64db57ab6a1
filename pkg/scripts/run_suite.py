#!/usr/bin/env python3
"""Run the full acceptance battery and exit with the CLI contract codes."""

import sys

from qtrin.cli import main

if __name__ == "__main__":
    sys.exit(main(["suite"]))

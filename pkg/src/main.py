#!/usr/bin/env python3
"""
Main entry point for the l2alex command line.

Computes L2-Alexander torsion functions of knots and 3-manifold groups for abelian
coefficient systems and prints JSON reports.
"""

import logging
import sys
import os
from dotenv import load_dotenv

# Add the src directory to the Python path
sys.path.insert(0, os.path.abspath(os.path.dirname(__file__)))

from l2alex.utils.logging_config import setup_logging
from l2alex.cli import run

# Load environment variables
load_dotenv()

# Set up logging
setup_logging()
logger = logging.getLogger(__name__)


def main(argv=None):
    """Run one l2alex command and return its exit code."""
    try:
        return run(argv)
    except KeyboardInterrupt:
        logger.info("Stopped by user")
        return 1


if __name__ == "__main__":
    sys.exit(main())

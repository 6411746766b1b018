import logging
import os
import sys
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

def setup_logging():
    """
    Configure logging for the application.

    Uses LOG_LEVEL from environment variables, defaults to WARNING. Log records go to
    stderr because stdout carries the JSON reports; LOG_FILE adds a file handler.
    """
    log_level_name = os.getenv("LOG_LEVEL", "WARNING").upper()
    log_level = getattr(logging, log_level_name, logging.WARNING)

    handlers = [logging.StreamHandler(sys.stderr)]
    log_file = os.getenv("LOG_FILE")
    if log_file:
        handlers.append(logging.FileHandler(log_file))

    # Configure root logger
    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
        force=True,
    )

    # Set level for specific loggers
    logging.getLogger("numexpr").setLevel(logging.WARNING)

    # Our package follows the configured level
    logging.getLogger("l2alex").setLevel(log_level)

    logger = logging.getLogger(__name__)
    logger.debug(f"Logging configured with level: {log_level_name}")

# -*- coding: utf-8 -*-

"""
Package logger. The library only emits records, whoever runs it (the CLI,
a notebook, a test) decides where they go.
"""

import sys
import logging

logger = logging.getLogger("greenlem")
logger.addHandler(logging.NullHandler())


def setup_logging(level: int = logging.INFO) -> logging.Handler:
    """
    Attach a stderr handler to the package logger. Standard output stays
    reserved for JSON records.
    """
    for handler in list(logger.handlers):
        if getattr(handler, "_greenlem_cli", False):
            logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(
        logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s")
    )
    handler._greenlem_cli = True
    logger.addHandler(handler)
    logger.setLevel(level)
    return handler
